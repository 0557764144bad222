#pragma once

// The free associative algebra on m generators, truncated in degree, and the
// free Lie ring inside it with its Lyndon-bracket basis.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liedim/exactlinalg.hpp"

namespace liedim {

using Letter = std::uint16_t;

// A word in the generators; the empty word is the unit.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Monomial(std::initializer_list<Letter> letters) : letters_(letters) {}

  std::size_t degree() const noexcept { return letters_.size(); }
  bool is_unit() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Monomial operator*(const Monomial& other) const;
  Monomial suffix(std::size_t from) const;
  Monomial prefix(std::size_t length) const;

  // Degree first, then lexicographic on generator indices.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::vector<Letter> letters_;
};

std::string generator_name(std::size_t index, const std::vector<std::string>& names);

// Integer polynomial in noncommuting variables with all terms of degree above
// trunc_degree dropped.
class Poly {
 public:
  explicit Poly(std::size_t trunc_degree = 0) : trunc_(trunc_degree) {}

  static Poly generator(Letter g, std::size_t trunc_degree);
  static Poly term(const Monomial& m, const Integer& coeff, std::size_t trunc_degree);

  std::size_t trunc_degree() const noexcept { return trunc_; }
  const std::map<Monomial, Integer>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Integer coefficient(const Monomial& m) const;
  // Smallest degree carrying a term (0 when zero).
  std::size_t min_degree() const;
  std::size_t max_degree() const;
  std::size_t max_letter() const;  // 0 when zero

  void add_term(const Monomial& m, const Integer& coeff);
  Poly truncated(std::size_t degree) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Integer& k);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Integer(-1); }
  friend Poly operator*(const Integer& k, Poly a) { return a *= k; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t trunc_;
  std::map<Monomial, Integer> terms_;
};

// Concatenation product, terms of degree > degree discarded.
Poly multiply(const Poly& p, const Poly& q, std::size_t degree);
// p*q - q*p
Poly commutator(const Poly& p, const Poly& q, std::size_t degree);

struct LyndonWord {
  Monomial word;
  // Standard factorization word = left * right, right the longest proper Lyndon
  // suffix. Both empty for single letters.
  Monomial left;
  Monomial right;
};

bool is_lyndon(const Monomial& w);
std::pair<Monomial, Monomial> standard_factorization(const Monomial& w);
// All Lyndon words of the given degree over m letters, in lexicographic order.
std::vector<LyndonWord> lyndon_words(std::size_t generators, std::size_t degree);
// (1/d) sum_{e | d} mu(e) m^(d/e)
Integer witt_dimension(std::size_t generators, std::size_t degree);

// Associative expansion of the standard bracketing of a Lyndon word.
Poly bracketing(const LyndonWord& w);
Poly bracketing(const Monomial& lyndon_word);

// Lie-ring expression: integer combinations of generators and left-normed
// brackets [e1, e2, ..., ek] = [[...[e1, e2], ...], ek].
class LieExpr {
 public:
  enum class Kind { Generator, Sum, Bracket };

  LieExpr() : kind_(Kind::Sum) {}  // zero
  static LieExpr generator(std::size_t index);
  static LieExpr sum(std::vector<Integer> coefficients, std::vector<LieExpr> terms);
  static LieExpr bracket(std::vector<LieExpr> entries);
  static LieExpr scaled(const Integer& k, LieExpr e);
  static LieExpr zero() { return LieExpr(); }

  Kind kind() const noexcept { return kind_; }
  std::size_t generator_index() const noexcept { return gen_; }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
  const std::vector<LieExpr>& children() const noexcept { return children_; }
  bool is_empty_sum() const noexcept { return kind_ == Kind::Sum && children_.empty(); }
  // Largest generator index mentioned, or nullopt if none.
  std::optional<std::size_t> max_generator() const;

  // Generator substitution X_k -> sum_l images[k][l] * X_l.
  LieExpr substituted(const std::vector<std::vector<Integer>>& images) const;

  friend LieExpr operator+(const LieExpr& a, const LieExpr& b);
  friend LieExpr operator-(const LieExpr& a, const LieExpr& b);
  friend LieExpr operator*(const Integer& k, const LieExpr& a);
  friend LieExpr operator*(long k, const LieExpr& a) { return Integer(k) * a; }
  friend bool operator==(const LieExpr& a, const LieExpr& b);

 private:
  Kind kind_;
  std::size_t gen_ = 0;
  std::vector<Integer> coeffs_;
  std::vector<LieExpr> children_;
};

// Left-normed bracket convenience: lie_bracket({x, a, b}) = [[x, a], b].
LieExpr lie_bracket(std::vector<LieExpr> entries);
// Standard bracketing of a Lyndon word as an expression tree.
LieExpr bracketing_expr(const Monomial& lyndon_word);

Poly eval_lie(const LieExpr& e, std::size_t generators, std::size_t degree);

// Coordinates index the Lyndon-bracket basis of degrees 1..degree in (degree, lex) order.
struct LieVector {
  std::size_t generators = 0;
  std::size_t degree = 0;
  IntVector coords;
  friend bool operator==(const LieVector&, const LieVector&) = default;
};

// Index of all monomials of degree 1..D over m letters, ordered by degree then lex.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t generators, std::size_t degree);

  std::size_t generators() const noexcept { return m_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t dimension() const noexcept { return offsets_.back(); }
  // First index of degree d (d in 1..D+1).
  std::size_t offset(std::size_t d) const { return offsets_[d - 1]; }
  std::uint64_t power(std::size_t d) const { return powers_[d]; }

  std::size_t index(const Monomial& w) const;
  Monomial monomial(std::size_t index) const;
  std::size_t degree_of(std::size_t index) const;

  SparseVector coordinates(const Poly& p) const;
  Poly poly(const SparseVector& v) const;

 private:
  std::size_t m_;
  std::size_t d_;
  std::vector<std::uint64_t> powers_;
  std::vector<std::size_t> offsets_;
};

// Lyndon-bracket basis of F / gamma_{D+1}(F).
class LieBasis {
 public:
  LieBasis(std::size_t generators, std::size_t degree);

  std::size_t generators() const noexcept { return m_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t size() const noexcept { return words_.size(); }
  // First index of degree d (d in 1..D+1).
  std::size_t offset(std::size_t d) const { return offsets_[d - 1]; }
  std::size_t size_upto(std::size_t d) const { return offsets_[std::min(d, d_)]; }

  const LyndonWord& word(std::size_t i) const { return words_[i]; }
  std::size_t degree_of(std::size_t i) const { return words_[i].word.degree(); }
  std::optional<std::size_t> index(const Monomial& w) const;
  // Indices of the standard factorization (degree >= 2 only).
  std::pair<std::size_t, std::size_t> factors(std::size_t i) const { return factors_[i]; }
  const Poly& bracketing(std::size_t i) const { return polys_[i]; }

  std::optional<LieVector> try_coordinates(const Poly& p) const;
  LieVector coordinates(const Poly& p) const;  // throws NotLieElement
  Poly evaluate(const LieVector& v) const;

 private:
  std::size_t m_;
  std::size_t d_;
  std::vector<LyndonWord> words_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::int32_t>> lookup_;  // per degree: word code -> index or -1
  std::vector<std::pair<std::size_t, std::size_t>> factors_;
  std::vector<Poly> polys_;
};

std::optional<LieVector> lie_coordinates(const Poly& p, const LieBasis& basis);
LieVector lie_coordinates(const Poly& p, std::size_t generators, std::size_t degree);

// Iterated left-normed bracket [x, w_1, ..., w_k]; throws NotLieElement when x is
// not in the span of the Lyndon bracketings.
Poly adjoint_action(const Poly& x, const Monomial& w, std::size_t generators, std::size_t degree);

// Image of a Lie-coordinate submodule in monomial coordinates (degrees 1..D).
SubmoduleBasis lie_submodule_to_poly_coords(const SubmoduleBasis& b, const LieBasis& basis);

}  // namespace liedim
