#pragma once

// Ideals in the truncated free associative algebra U/varpi^(D+1) and in the
// truncated free Lie ring F/gamma_(D+1), as integer submodules of the
// monomial and Lyndon coordinate spaces.

#include <cstddef>
#include <memory>
#include <vector>

#include "liedim/exactlinalg.hpp"
#include "liedim/freealgebra.hpp"

namespace liedim {

// Coordinate systems for one (m, D): monomials of degree 1..D and Lyndon
// brackets of degree 1..D, with the bracketing embedding and the action of
// ad(X_j) precomputed. Immutable, so freely shared between threads.
class TruncatedContext {
 public:
  TruncatedContext(std::size_t generators, std::size_t degree);
  // Process-wide cache; contexts are expensive for large (m, D).
  static std::shared_ptr<const TruncatedContext> get(std::size_t generators, std::size_t degree);

  std::size_t generators() const noexcept { return m_; }
  std::size_t degree() const noexcept { return d_; }
  std::size_t assoc_dim() const noexcept { return monomials_.dimension(); }
  std::size_t lie_dim() const noexcept { return lie_.size(); }
  const MonomialIndex& monomials() const noexcept { return monomials_; }
  const LieBasis& lie() const noexcept { return lie_; }

  // Monomial coordinates of the bracketing of Lyndon basis element i.
  const SparseVector& embedding(std::size_t i) const { return embed_[i]; }
  // Lyndon coordinates of [b_i, X_j], truncated.
  const SparseVector& ad(std::size_t i, std::size_t j) const { return ad_[i * m_ + j]; }

  SparseVector assoc_coords(const Poly& p) const { return monomials_.coordinates(p); }
  SparseVector lie_coords(const Poly& p) const;  // throws NotLieElement
  SparseVector embed(const SparseVector& lie_vector) const;
  // X_j * v, v * X_j in monomial coordinates; [v, X_j] in Lyndon coordinates.
  SparseVector left_multiply(std::size_t j, const SparseVector& v) const;
  SparseVector right_multiply(const SparseVector& v, std::size_t j) const;
  SparseVector multiply(const SparseVector& a, const SparseVector& b) const;
  SparseVector bracket_generator(const SparseVector& v, std::size_t j) const;

 private:
  std::size_t m_;
  std::size_t d_;
  MonomialIndex monomials_;
  LieBasis lie_;
  std::vector<std::uint32_t> degree_of_;  // monomial index -> degree
  std::vector<SparseVector> embed_;
  std::vector<SparseVector> ad_;
};

using ContextPtr = std::shared_ptr<const TruncatedContext>;

enum class IdealKind { Associative, Lie, Plain };

struct IdealBasis {
  ContextPtr ctx;
  IdealKind kind = IdealKind::Plain;
  // Lyndon coordinates for Lie, monomial coordinates otherwise.
  SubmoduleBasis basis;
};

// Saturation by breadth-first closure: every vector that enlarges the span has its
// products (resp. brackets) with each generator queued.
Echelon assoc_closure(const TruncatedContext& ctx, const std::vector<SparseVector>& seeds);
Echelon lie_closure(const TruncatedContext& ctx, const std::vector<SparseVector>& seeds);

// Two-sided ideal of U/varpi^(D+1) generated by the relators.
IdealBasis assoc_ideal(const std::vector<Poly>& relators, const ContextPtr& ctx);
// Lie ideal of F/gamma_(D+1) generated by the relators.
IdealBasis lie_ideal(const std::vector<LieExpr>& relators, const ContextPtr& ctx);
// Monomials of degree >= n; n in 1..D+1.
IdealBasis aug_power(std::size_t n, const ContextPtr& ctx);
// Lyndon brackets of degree >= n; n in 1..D+1.
IdealBasis gamma_free(std::size_t n, const ContextPtr& ctx);
// Span of all products a*b, a in A, b in B (both in monomial coordinates).
SubmoduleBasis product_submodule(const IdealBasis& a, const IdealBasis& b);
// Lie-coordinate submodule mapped into monomial coordinates.
SubmoduleBasis embed(const SubmoduleBasis& lie_module, const TruncatedContext& ctx);

}  // namespace liedim
