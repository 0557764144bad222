#include <numeric>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "liedim/errors.hpp"
#include "liedim/series.hpp"

using namespace liedim;

namespace {

Presentation free_ring(std::size_t m) { return Presentation(corpus::names(m), {}); }

std::vector<Monomial> words_upto(std::size_t m, std::size_t d) {
  std::vector<Monomial> out{Monomial{}};
  MonomialIndex idx(m, d);
  for (std::size_t i = 0; i < idx.dimension(); ++i) out.push_back(idx.monomial(i));
  return out;
}

// delta_n straight from the definition: Lie elements of degree < n whose expansion is a
// Z-combination of u*rho*v (rho a relator, u, v words) modulo monomials of degree >= n.
SubmoduleBasis brute_delta(const Presentation& p, std::size_t n, std::size_t c) {
  const std::size_t m = p.generator_count();
  auto lctx = TruncatedContext::get(m, c);
  if (n == 1) return SubmoduleBasis::full(lctx->lie_dim());
  const std::size_t D = n - 1;
  MonomialIndex idx(m, D);
  std::vector<IntVector> rows;
  const std::size_t low = lctx->lie().size_upto(D);
  for (std::size_t i = 0; i < low; ++i)
    rows.push_back(to_dense(idx.coordinates(lctx->lie().bracketing(i).truncated(D)), idx.dimension()));
  auto words = words_upto(m, D);
  for (const auto& rho : relator_polys(p, D))
    for (const auto& u : words)
      for (const auto& v : words) {
        if (u.degree() + v.degree() + 1 > D) continue;
        Poly t = multiply(multiply(Poly::term(u, 1, D), rho, D), Poly::term(v, 1, D), D);
        rows.push_back(to_dense(idx.coordinates(t), idx.dimension()));
      }
  SubmoduleBasis k = left_kernel(IntMatrix::from_rows(rows, idx.dimension()));
  Echelon e(lctx->lie_dim());
  for (std::size_t i = 0; i < k.rank(); ++i) {
    IntVector v = k.row(i);
    v.resize(low);
    v.resize(lctx->lie_dim());
    e.insert(v);
  }
  for (std::size_t i = low; i < lctx->lie_dim(); ++i) e.insert(SparseVector{{static_cast<std::uint32_t>(i), Integer(1)}});
  auto q = nilpotent_quotient(p, c);
  for (std::size_t i = 0; i < q.relation_module.rank(); ++i) e.insert(q.relation_module.row(i));
  return e.hnf();
}

Integer sjogren_oracle(std::size_t n) {
  // Pascal row n-2 and lcm(1..k) by plain integer loops.
  std::vector<unsigned long long> row{1};
  for (std::size_t r = 1; r <= n - 2; ++r) {
    std::vector<unsigned long long> next(r + 1, 1);
    for (std::size_t k = 1; k < r; ++k) next[k] = row[k - 1] + row[k];
    row = next;
  }
  Integer c = 1;
  unsigned long long b = 1;
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    b = std::lcm(b, static_cast<unsigned long long>(k));
    for (unsigned long long t = 0; t < row[k]; ++t) c *= Integer(std::to_string(b));
  }
  return c;
}

Presentation permuted(const Presentation& p, const std::vector<std::size_t>& perm) {
  const std::size_t m = p.generator_count();
  std::vector<std::vector<Integer>> images(m, std::vector<Integer>(m, 0));
  std::vector<std::string> names(m);
  for (std::size_t j = 0; j < m; ++j) {
    images[j][perm[j]] = 1;
    names[perm[j]] = p.generators()[j];
  }
  std::vector<LieExpr> rels;
  for (const auto& r : p.relators()) rels.push_back(r.substituted(images));
  return Presentation(names, rels);
}

}  // namespace

TEST_CASE("free ring: delta_n = gamma_n") {
  for (std::size_t m : {1u, 2u, 3u}) {
    const std::size_t c = m == 3 ? 4 : 6;
    auto p = free_ring(m);
    auto q = nilpotent_quotient(p, c);
    CHECK(q.relation_module.is_zero());
    for (std::size_t n = 1; n <= c; ++n) {
      CHECK(gamma_n(q, n) == gamma_free(n, q.ctx).basis);
      CHECK(delta_n(p, q, n) == gamma_n(q, n));
    }
  }
}

TEST_CASE("gamma_n edge cases") {
  std::mt19937 rng(5);
  auto p = corpus::random_presentation(rng, 2);
  auto q = nilpotent_quotient(p, 3);
  CHECK(gamma_n(q, 1) == SubmoduleBasis::full(q.ctx->lie_dim()));
  CHECK(gamma_n(q, 4) == q.relation_module);
  CHECK_THROWS_AS(gamma_n(q, 0), OutOfRange);
  CHECK_THROWS_AS(gamma_n(q, 5), OutOfRange);
  CHECK_THROWS_AS(delta_n(p, 5, 3), ClassTooSmall);
  CHECK_NOTHROW(delta_n(p, 4, 3));
}

TEST_CASE("delta_n matches the definition on random presentations") {
  std::mt19937 rng(11);
  for (int t = 0; t < 12; ++t) {
    const std::size_t m = 1 + t % 3;
    auto p = t % 2 ? corpus::random_metabelian(rng, m, 4) : corpus::random_presentation(rng, m);
    auto q = nilpotent_quotient(p, 4);
    for (std::size_t n = 1; n <= (m == 3 ? 4u : 5u); ++n) CHECK(delta_n(p, q, n) == brute_delta(p, n, 4));
  }
}

TEST_CASE("low degree: delta_n = gamma_n for n <= 3") {
  std::mt19937 rng(21);
  for (int t = 0; t < 20; ++t) {
    auto p = corpus::random_presentation(rng, 1 + t % 3);
    auto q = nilpotent_quotient(p, 4);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(delta_n(p, q, n) == gamma_n(q, n));
  }
}

TEST_CASE("chain properties and torsion quotients") {
  std::mt19937 rng(31);
  for (int t = 0; t < 8; ++t) {
    auto p = corpus::random_presentation(rng, 2 + t % 2);
    const std::size_t c = 4;
    auto q = nilpotent_quotient(p, c);
    for (std::size_t n = 1; n <= c; ++n) {
      auto g = gamma_n(q, n), d = delta_n(p, q, n);
      CHECK(contains(d, g));
      CHECK(contains(gamma_n(q, n), gamma_n(q, n + 1)));
      if (n < c + 1) CHECK(contains(d, delta_n(p, q, n + 1)));
      CHECK(quotient_structure(d, g).free_rank == 0);
    }
  }
}

TEST_CASE("metabelian: divisors are 2-power at most 2, theorem and corollary hold") {
  std::mt19937 rng(41);
  for (int t = 0; t < 8; ++t) {
    auto p = corpus::random_metabelian(rng, 2 + t % 2, 5);
    auto report = quotient_report(p, 5, 5);
    for (const auto& e : report.entries) {
      for (const auto& d : e.quotient.divisors) CHECK(d == 2);
      CHECK(e.two_delta_in_gamma);
      CHECK(e.sjogren_holds);
      REQUIRE(e.corollary.has_value());
      CHECK(*e.corollary);
    }
  }
}

TEST_CASE("theorem1 and corollary examples") {
  auto free_meta = instantiate_metabelian(free_ring(2), 5);
  CHECK(check_theorem1(free_meta, 4, 4).holds);
  CHECK(check_corollary(free_meta, 3, 4));
  CHECK(check_corollary(free_meta, 1, 4));
  CHECK_THROWS_AS(check_corollary(free_meta, 5, 4), ClassTooSmall);
}

TEST_CASE("a failing containment reports the first offending basis vector") {
  auto ctx = TruncatedContext::get(1, 1);
  auto full = SubmoduleBasis::full(1);
  auto even = scale(full, 4);
  auto r = multiple_contained(full, even, 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == IntVector{Integer(1)});
  CHECK(multiple_contained(full, even, 4).holds);
}

TEST_CASE("sjogren constants") {
  CHECK(sjogren(2).c_n == 1);
  CHECK(sjogren(3).c_n == 1);
  CHECK(sjogren(4).c_n == 2);
  CHECK(sjogren(5).c_n == 48);
  CHECK(sjogren(6).c_n == 995328);
  for (std::size_t n = 2; n <= 14; ++n) CHECK(sjogren(n).c_n == sjogren_oracle(n));
  CHECK(sjogren(6).b == std::vector<Integer>{1, 2, 6, 12});
  CHECK_THROWS_AS(sjogren(1), OutOfRange);
}

TEST_CASE("sjogren bound holds on random presentations") {
  std::mt19937 rng(51);
  for (int t = 0; t < 8; ++t) {
    auto p = corpus::random_presentation(rng, 2 + t % 2);
    for (std::size_t n = 2; n <= 5; ++n) CHECK(check_sjogren(p, n, 4).holds);
  }
}

TEST_CASE("lemma 2 examples") {
  Presentation one({"a"}, {LieExpr::scaled(2, LieExpr::generator(0))});
  for (std::size_t n = 1; n <= 4; ++n) {
    auto r = check_lemma2(one, n, 4);
    CHECK(r.part_i);
    CHECK(r.part_iii);
  }
  Presentation two({"a", "b"}, {LieExpr::scaled(2, LieExpr::generator(0)), LieExpr::scaled(4, LieExpr::generator(1))});
  auto r = check_lemma2(two, 4, 5);
  CHECK(r.part_i);
  CHECK(r.part_iii);

  std::mt19937 rng(61);
  for (const auto& chain : std::vector<std::vector<long>>{{1, 2, 6}, {2, 4}, {0, 0}, {1, 2}}) {
    auto p = corpus::random_preabelian(rng, chain, 4);
    for (std::size_t n = 2; n <= 4; ++n) {
      auto res = check_lemma2(p, n, 4);
      CHECK(res.part_i);
      CHECK(res.part_iii);
    }
  }
  Presentation not_pre({"a", "b"}, {LieExpr::sum({2, 3}, {LieExpr::generator(0), LieExpr::generator(1)})});
  CHECK_THROWS_AS(check_lemma2(not_pre, 2, 3), NotPreabelian);
}

TEST_CASE("reports are deterministic and independent of thread count") {
  std::mt19937 rng(71);
  auto p = corpus::random_metabelian(rng, 3, 4);
  const auto one = to_json(quotient_report(p, 5, 4, 1)).dump();
  CHECK(to_json(quotient_report(p, 5, 4, 1)).dump() == one);
  CHECK(to_json(quotient_report(p, 5, 4, 3)).dump() == one);
  CHECK(to_json(quotient_report(p, 5, 4, 0)).dump() == one);
  CHECK(to_text(quotient_report(p, 5, 4, 2)) == to_text(quotient_report(p, 5, 4, 1)));
}

TEST_CASE("permuting generators leaves every divisor unchanged") {
  std::mt19937 rng(81);
  for (int t = 0; t < 4; ++t) {
    auto p = corpus::random_metabelian(rng, 3, 4);
    auto base = quotient_report(p, 5, 4);
    auto perm = permuted(p, {2, 0, 1});
    auto other = quotient_report(perm, 5, 4);
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
      CHECK(base.entries[i].quotient.divisors == other.entries[i].quotient.divisors);
      CHECK(base.entries[i].gamma.rank() == other.entries[i].gamma.rank());
    }
    CHECK(nilpotent_quotient(p, 4).structure.divisors == nilpotent_quotient(perm, 4).structure.divisors);
  }
}

TEST_CASE("report JSON shape") {
  auto j = to_json(quotient_report(free_ring(2), 3, 2));
  CHECK(j["class_bound"] == 2);
  REQUIRE(j["series"].size() == 3);
  const auto& e = j["series"][2];
  std::vector<std::string> keys;
  for (const auto& [k, v] : e.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"n", "gamma_rank", "delta_rank", "quotient", "checks"});
  CHECK(e["checks"]["corollary"].is_null());
  CHECK(j["series"][1]["checks"]["corollary"] == true);
  CHECK(e["quotient"]["divisors"].empty());
}
