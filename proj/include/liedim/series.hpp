#pragma once

// Lower central series and dimension subrings of a finitely presented Lie ring,
// computed in the class-c quotient F/(R + gamma_(c+1)(F)) with Lyndon coordinates.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liedim/idealengine.hpp"
#include "liedim/presentation.hpp"

namespace liedim {

struct NilpotentQuotient {
  ContextPtr ctx;  // D = class_bound
  std::size_t class_bound = 0;
  SubmoduleBasis relation_module;  // R + gamma_(c+1)(F), Lyndon coordinates of degree <= c
  ElementaryDivisors structure;    // additive structure of L / gamma_(c+1)(L)
};

NilpotentQuotient nilpotent_quotient(const Presentation& p, std::size_t class_bound);

// Preimage of gamma_n(L); n in 1..c+1.
SubmoduleBasis gamma_n(const NilpotentQuotient& q, std::size_t n);

// Preimage of delta_n(L) = L cap varpi^n(L). Membership is decided in U/(r + varpi^n),
// which only involves monomials of degree < n. Requires c >= n-1 (ClassTooSmall).
SubmoduleBasis delta_n(const Presentation& p, std::size_t n, std::size_t class_bound);
SubmoduleBasis delta_n(const Presentation& p, const NilpotentQuotient& q, std::size_t n);

struct CheckResult {
  bool holds = true;
  std::optional<IntVector> witness;  // first basis vector violating the check
};

struct SeriesEntry {
  std::size_t n = 0;
  SubmoduleBasis gamma;
  SubmoduleBasis delta;
  ElementaryDivisors quotient;  // delta_n / gamma_n
  bool two_delta_in_gamma = true;
  std::optional<bool> corollary;  // needs n <= c
  bool sjogren_holds = true;
  std::optional<bool> low_degree_equal;  // reported for n <= 3
};

struct SeriesReport {
  std::size_t class_bound = 0;
  std::vector<SeriesEntry> entries;
};

// threads == 0 picks the hardware concurrency; the result never depends on it.
SeriesReport quotient_report(const Presentation& p, std::size_t max_n, std::size_t class_bound,
                             std::size_t threads = 1);

nlohmann::ordered_json to_json(const SeriesReport& report);
std::string to_text(const SeriesReport& report);
nlohmann::ordered_json integer_json(const Integer& x);

// 2 v in gamma_n for every basis vector v of delta_n.
CheckResult check_theorem1(const Presentation& p, std::size_t n, std::size_t class_bound);
// [delta_n, L] = gamma_(n+1); needs n <= c.
bool check_corollary(const Presentation& p, std::size_t n, std::size_t class_bound);

struct Lemma2Result {
  bool part_i = false;
  bool part_iii = false;
};
// Works in degree <= class_bound; the presentation must be (or be recognizably) pre-abelian.
Lemma2Result check_lemma2(const Presentation& p, std::size_t n, std::size_t class_bound);

struct SjogrenConstant {
  std::size_t n = 0;
  std::vector<Integer> b;  // b[k-1] = lcm(1..k), k = 1..n-2
  Integer c_n;
};
SjogrenConstant sjogren(std::size_t n);
CheckResult check_sjogren(const Presentation& p, std::size_t n, std::size_t class_bound);

// Building blocks shared with the counterexample verifier.
CheckResult multiple_contained(const SubmoduleBasis& delta, const SubmoduleBasis& gamma, const Integer& k);
bool corollary_holds(const NilpotentQuotient& q, const SubmoduleBasis& delta, std::size_t n);

}  // namespace liedim
