#pragma once

// Finitely presented Lie rings: generator names plus relator expressions, the
// ".lp" text format, and the pre-abelian normal form e_i X_i + xi_i.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liedim/exactlinalg.hpp"
#include "liedim/freealgebra.hpp"

namespace liedim {

// Relators e_1 X_1 + xi_1, ..., e_m X_m + xi_m, xi_{m+1}, ... with e_i | e_{i+1}
// (zeros last) and every xi in the derived subring.
struct PreabelianForm {
  std::vector<Integer> e;   // one per generator
  std::vector<LieExpr> xi;  // at least one per generator; trailing ones are pure xi relators
};

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<LieExpr> relators);

  std::size_t generator_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& generators() const noexcept { return names_; }
  const std::vector<LieExpr>& relators() const noexcept { return relators_; }
  const std::optional<PreabelianForm>& preabelian() const noexcept { return preabelian_; }

  std::optional<std::size_t> generator_index(std::string_view name) const;
  void add_relator(LieExpr r);
  // Checks the shape of the form (e-chain, xi in F') but not that it matches the relators.
  void set_preabelian(PreabelianForm form);

  friend bool operator==(const Presentation& a, const Presentation& b);

 private:
  std::vector<std::string> names_;
  std::vector<LieExpr> relators_;
  std::optional<PreabelianForm> preabelian_;
};

// Grammar (one statement per line, '#' starts a comment):
//   generators: name+          (first statement)
//   relator: expr
//   expr := ["-"] term (("+"|"-") term)*     term := [int ["*"]] atom
//   atom := name | "[" expr ("," expr)+ "]" | "(" expr ")"     int := digits ["^" digits]
Presentation parse(std::string_view text);
Presentation parse_file(const std::string& path);

// Canonical text: relators in order, decimal coefficients, brackets as "[x, y]".
std::string serialize(const Presentation& p);
std::string expr_to_string(const LieExpr& e, const std::vector<std::string>& names);

// Integer coefficient of X_j in the degree-one part of each relator (relators x generators).
IntMatrix abelianized_relations(const Presentation& p);
// Degree-one part of e, and e with its degree-one terms removed.
IntVector linear_part(const LieExpr& e, std::size_t generators);
LieExpr derived_part(const LieExpr& e);

// Recognizes relators already in pre-abelian shape.
std::optional<PreabelianForm> detect_preabelian(const Presentation& p);
// Equivalent presentation in pre-abelian form (Smith form of the abelianized
// relation matrix plus the induced linear change of generators). Presentations
// already in that shape come back unchanged, with the form filled in.
Presentation preabelianize(const Presentation& p);

// Appends [b(u), b(v)] for Lyndon words u < v of degree >= 2 with deg u + deg v <= degree.
Presentation instantiate_metabelian(const Presentation& p, std::size_t degree);

// Relators as associative polynomials truncated at the given degree.
std::vector<Poly> relator_polys(const Presentation& p, std::size_t degree);

}  // namespace liedim
