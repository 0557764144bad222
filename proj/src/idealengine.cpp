#include "liedim/idealengine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

#include "liedim/errors.hpp"

namespace liedim {

namespace {

SparseVector sorted(SparseVector v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

}  // namespace

TruncatedContext::TruncatedContext(std::size_t generators, std::size_t degree)
    : m_(generators), d_(degree), monomials_(generators, degree), lie_(generators, degree) {
  degree_of_.resize(monomials_.dimension());
  for (std::size_t d = 1; d <= d_; ++d)
    for (std::size_t i = monomials_.offset(d); i < monomials_.offset(d + 1); ++i)
      degree_of_[i] = static_cast<std::uint32_t>(d);

  embed_.reserve(lie_.size());
  for (std::size_t i = 0; i < lie_.size(); ++i) embed_.push_back(monomials_.coordinates(lie_.bracketing(i)));

  ad_.resize(lie_.size() * m_);
  for (std::size_t i = 0; i < lie_.size(); ++i) {
    if (lie_.degree_of(i) >= d_) continue;  // bracket leaves the truncation
    for (std::size_t j = 0; j < m_; ++j) {
      Poly p = commutator(lie_.bracketing(i), Poly::generator(static_cast<Letter>(j), d_), d_);
      ad_[i * m_ + j] = to_sparse(lie_.coordinates(p).coords);
    }
  }
}

std::shared_ptr<const TruncatedContext> TruncatedContext::get(std::size_t generators, std::size_t degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const TruncatedContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{generators, degree}];
  if (!slot) slot = std::make_shared<const TruncatedContext>(generators, degree);
  return slot;
}

SparseVector TruncatedContext::lie_coords(const Poly& p) const { return to_sparse(lie_.coordinates(p).coords); }

SparseVector TruncatedContext::embed(const SparseVector& lie_vector) const {
  SparseVector out;
  for (const auto& [i, c] : lie_vector) axpy(out, c, embed_.at(i));
  return out;
}

SparseVector TruncatedContext::left_multiply(std::size_t j, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [i, c] : v) {
    const std::size_t d = degree_of_[i];
    if (d >= d_) break;  // sorted by index, hence by degree
    const std::uint64_t code = i - monomials_.offset(d);
    out.emplace_back(static_cast<std::uint32_t>(monomials_.offset(d + 1) + j * monomials_.power(d) + code), c);
  }
  return sorted(std::move(out));
}

SparseVector TruncatedContext::right_multiply(const SparseVector& v, std::size_t j) const {
  SparseVector out;
  for (const auto& [i, c] : v) {
    const std::size_t d = degree_of_[i];
    if (d >= d_) break;
    const std::uint64_t code = i - monomials_.offset(d);
    out.emplace_back(static_cast<std::uint32_t>(monomials_.offset(d + 1) + code * m_ + j), c);
  }
  return out;  // order-preserving within each degree block
}

SparseVector TruncatedContext::multiply(const SparseVector& a, const SparseVector& b) const {
  std::map<std::uint32_t, Integer> acc;
  for (const auto& [i, ci] : a) {
    const std::size_t di = degree_of_[i];
    const std::uint64_t codei = i - monomials_.offset(di);
    for (const auto& [k, ck] : b) {
      const std::size_t dk = degree_of_[k];
      if (di + dk > d_) break;
      const std::uint64_t codek = k - monomials_.offset(dk);
      auto idx = static_cast<std::uint32_t>(monomials_.offset(di + dk) + codei * monomials_.power(dk) + codek);
      acc[idx] += ci * ck;
    }
  }
  SparseVector out;
  for (auto& [i, c] : acc)
    if (sgn(c) != 0) out.emplace_back(i, std::move(c));
  return out;
}

SparseVector TruncatedContext::bracket_generator(const SparseVector& v, std::size_t j) const {
  SparseVector out;
  for (const auto& [i, c] : v) axpy(out, c, ad_[i * m_ + j]);
  return out;
}

// ---------------------------------------------------------------------------

Echelon assoc_closure(const TruncatedContext& ctx, const std::vector<SparseVector>& seeds) {
  Echelon e(ctx.assoc_dim());
  std::deque<SparseVector> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    SparseVector v = std::move(queue.front());
    queue.pop_front();
    if (v.empty() || !e.insert(v)) continue;
    for (std::size_t j = 0; j < ctx.generators(); ++j) {
      if (auto l = ctx.left_multiply(j, v); !l.empty()) queue.push_back(std::move(l));
      if (auto r = ctx.right_multiply(v, j); !r.empty()) queue.push_back(std::move(r));
    }
  }
  return e;
}

Echelon lie_closure(const TruncatedContext& ctx, const std::vector<SparseVector>& seeds) {
  Echelon e(ctx.lie_dim());
  std::deque<SparseVector> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    SparseVector v = std::move(queue.front());
    queue.pop_front();
    if (v.empty() || !e.insert(v)) continue;
    for (std::size_t j = 0; j < ctx.generators(); ++j)
      if (auto b = ctx.bracket_generator(v, j); !b.empty()) queue.push_back(std::move(b));
  }
  return e;
}

IdealBasis assoc_ideal(const std::vector<Poly>& relators, const ContextPtr& ctx) {
  std::vector<SparseVector> seeds;
  for (const auto& p : relators) {
    if (p.max_letter() >= ctx->generators() && !p.is_zero()) throw MalformedExpr("relator uses an unknown generator");
    seeds.push_back(ctx->assoc_coords(p.truncated(ctx->degree())));
  }
  return {ctx, IdealKind::Associative, assoc_closure(*ctx, seeds).hnf()};
}

IdealBasis lie_ideal(const std::vector<LieExpr>& relators, const ContextPtr& ctx) {
  std::vector<SparseVector> seeds;
  for (const auto& r : relators) seeds.push_back(ctx->lie_coords(eval_lie(r, ctx->generators(), ctx->degree())));
  return {ctx, IdealKind::Lie, lie_closure(*ctx, seeds).hnf()};
}

IdealBasis aug_power(std::size_t n, const ContextPtr& ctx) {
  if (n < 1 || n > ctx->degree() + 1) throw OutOfRange("aug_power: n must lie in 1..D+1");
  std::vector<std::size_t> idx;
  for (std::size_t i = ctx->monomials().offset(n); i < ctx->assoc_dim(); ++i) idx.push_back(i);
  return {ctx, IdealKind::Associative, SubmoduleBasis::coordinate(ctx->assoc_dim(), idx)};
}

IdealBasis gamma_free(std::size_t n, const ContextPtr& ctx) {
  if (n < 1 || n > ctx->degree() + 1) throw OutOfRange("gamma_free: n must lie in 1..D+1");
  std::vector<std::size_t> idx;
  for (std::size_t i = ctx->lie().offset(n); i < ctx->lie_dim(); ++i) idx.push_back(i);
  return {ctx, IdealKind::Lie, SubmoduleBasis::coordinate(ctx->lie_dim(), idx)};
}

SubmoduleBasis product_submodule(const IdealBasis& a, const IdealBasis& b) {
  if (a.ctx != b.ctx && (a.ctx->generators() != b.ctx->generators() || a.ctx->degree() != b.ctx->degree()))
    throw ContextMismatch("product_submodule: different truncated contexts");
  if (a.kind == IdealKind::Lie || b.kind == IdealKind::Lie)
    throw ContextMismatch("product_submodule: operands must be in monomial coordinates");
  const TruncatedContext& ctx = *a.ctx;
  Echelon e(ctx.assoc_dim());
  if (a.basis.rank() == ctx.assoc_dim() && b.kind == IdealKind::Associative) {
    // varpi * B for a two-sided ideal B is the sum of X_j * B.
    for (std::size_t i = 0; i < b.basis.rank(); ++i) {
      SparseVector row = to_sparse(b.basis.row(i));
      for (std::size_t j = 0; j < ctx.generators(); ++j) e.insert(ctx.left_multiply(j, row));
    }
    return e.hnf();
  }
  std::vector<SparseVector> brows;
  for (std::size_t i = 0; i < b.basis.rank(); ++i) brows.push_back(to_sparse(b.basis.row(i)));
  for (std::size_t i = 0; i < a.basis.rank(); ++i) {
    SparseVector arow = to_sparse(a.basis.row(i));
    for (const auto& brow : brows) e.insert(ctx.multiply(arow, brow));
  }
  return e.hnf();
}

SubmoduleBasis embed(const SubmoduleBasis& lie_module, const TruncatedContext& ctx) {
  if (lie_module.ambient_rank() != ctx.lie_dim()) throw DimensionMismatch("embed: not a Lie-coordinate module");
  Echelon e(ctx.assoc_dim());
  for (std::size_t i = 0; i < lie_module.rank(); ++i) e.insert(ctx.embed(to_sparse(lie_module.row(i))));
  return e.hnf();
}

}  // namespace liedim
