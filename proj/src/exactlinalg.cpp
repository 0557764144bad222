#include "liedim/exactlinalg.hpp"

#include <algorithm>
#include <sstream>

#include "liedim/errors.hpp"

namespace liedim {

SparseVector to_sparse(const IntVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

IntVector to_dense(const SparseVector& v, std::size_t width) {
  IntVector out(width);
  for (const auto& [i, a] : v) {
    if (i >= width) throw DimensionMismatch("sparse index exceeds width");
    out[i] = a;
  }
  return out;
}

void axpy(SparseVector& y, const Integer& a, const SparseVector& x) {
  if (sgn(a) == 0 || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(std::move(*iy++));
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else {
      Integer v = iy->second + a * ix->second;
      if (sgn(v) != 0) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  y = std::move(out);
}

SparseVector scaled(const SparseVector& x, const Integer& a) {
  SparseVector out;
  if (sgn(a) == 0) return out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, a * v);
  return out;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw DimensionMismatch("entry count != rows*cols");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("row length != cols");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_list(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  IntMatrix m(rows.size(), cols);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("ragged matrix literal");
    std::size_t j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return sgn(v) == 0; });
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i] != b.entries_[i]) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& v = a(i, k);
      if (sgn(v) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------
// SubmoduleBasis

SubmoduleBasis::SubmoduleBasis(std::size_t ambient_rank, IntMatrix basis)
    : ambient_rank_(ambient_rank), basis_(std::move(basis)) {
  if (basis_.cols() != ambient_rank_ && basis_.rows() != 0)
    throw DimensionMismatch("basis width != ambient rank");
  if (basis_.rows() == 0) basis_ = IntMatrix(0, ambient_rank_);
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t j = 0;
    while (j < ambient_rank_ && sgn(basis_(i, j)) == 0) ++j;
    pivots_.push_back(j);
  }
}

SubmoduleBasis SubmoduleBasis::zero(std::size_t ambient_rank) {
  return SubmoduleBasis(ambient_rank, IntMatrix(0, ambient_rank));
}

SubmoduleBasis SubmoduleBasis::full(std::size_t ambient_rank) {
  return SubmoduleBasis(ambient_rank, IntMatrix::identity(ambient_rank));
}

SubmoduleBasis SubmoduleBasis::coordinate(std::size_t ambient_rank,
                                          const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> idx(indices);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  IntMatrix m(idx.size(), ambient_rank);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= ambient_rank) throw DimensionMismatch("coordinate index out of range");
    m(i, idx[i]) = 1;
  }
  return SubmoduleBasis(ambient_rank, std::move(m));
}

bool operator==(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
}

// ---------------------------------------------------------------------------
// Hermite normal form (dense, minimal-pivot elimination)

namespace {

void row_submul(std::vector<IntVector>& a, std::size_t dst, std::size_t src, const Integer& q) {
  auto& d = a[dst];
  const auto& s = a[src];
  for (std::size_t j = 0; j < d.size(); ++j)
    if (sgn(s[j]) != 0) d[j] -= q * s[j];
}

void row_negate(std::vector<IntVector>& a, std::size_t i) {
  for (auto& v : a[i]) v = -v;
}

struct RawHermite {
  IntMatrix basis;
  IntMatrix transform;
};

RawHermite hermite_impl(const IntMatrix& m, bool track) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<IntVector> a = m.row_vectors();
  std::vector<IntVector> u;
  if (track) u = IntMatrix::identity(rows).row_vectors();

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Integer q;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    bool found = false;
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (sgn(a[i][col]) == 0) continue;
        if (best == rows || mpz_cmpabs(a[i][col].get_mpz_t(), a[best][col].get_mpz_t()) < 0) best = i;
      }
      if (best == rows) break;
      found = true;
      if (best != r) {
        std::swap(a[best], a[r]);
        if (track) std::swap(u[best], u[r]);
      }
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (sgn(a[i][col]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
        row_submul(a, i, r, q);
        if (track) row_submul(u, i, r, q);
        if (sgn(a[i][col]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (sgn(a[r][col]) < 0) {
      row_negate(a, r);
      if (track) row_negate(u, r);
    }
    pivots.push_back(col);
    ++r;
  }

  const std::size_t rank = r;
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t col = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(a[i][col]) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[k][col].get_mpz_t());
      if (sgn(q) == 0) continue;
      row_submul(a, i, k, q);
      if (track) row_submul(u, i, k, q);
    }
  }

  a.resize(rank);
  RawHermite out;
  out.basis = rank ? IntMatrix::from_rows(a, cols) : IntMatrix(0, cols);
  if (track) {
    u.resize(rank);
    out.transform = rank ? IntMatrix::from_rows(u, rows) : IntMatrix(0, rows);
  }
  return out;
}

}  // namespace

SubmoduleBasis hnf(const IntMatrix& m) {
  RawHermite raw = hermite_impl(m, false);
  return SubmoduleBasis(m.cols(), std::move(raw.basis));
}

HermiteDecomposition hermite(const IntMatrix& m) {
  RawHermite raw = hermite_impl(m, true);
  return HermiteDecomposition{SubmoduleBasis(m.cols(), std::move(raw.basis)), std::move(raw.transform)};
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SmithWork {
  std::vector<IntVector> a;
  std::vector<IntVector> left;
  std::vector<IntVector> right;  // stored as rows of the right transform
  bool track;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (track) std::swap(left[i], left[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& r : a) std::swap(r[i], r[j]);
    if (track)
      for (auto& r : right) std::swap(r[i], r[j]);
  }
  // row dst -= q * row src
  void row_op(std::size_t dst, std::size_t src, const Integer& q) {
    row_submul(a, dst, src, q);
    if (track) row_submul(left, dst, src, q);
  }
  // col dst -= q * col src
  void col_op(std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& r : a)
      if (sgn(r[src]) != 0) r[dst] -= q * r[src];
    if (track)
      for (auto& r : right)
        if (sgn(r[src]) != 0) r[dst] -= q * r[src];
  }
};

SmithForm smith_impl(const IntMatrix& m, bool track) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithWork w{m.row_vectors(), {}, {}, track};
  if (track) {
    w.left = IntMatrix::identity(rows).row_vectors();
    w.right = IntMatrix::identity(cols).row_vectors();
  }
  const std::size_t n = std::min(rows, cols);
  Integer q;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (sgn(w.a[i][j]) == 0) continue;
          if (bi == rows || mpz_cmpabs(w.a[i][j].get_mpz_t(), w.a[bi][bj].get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi == rows) break;  // remaining block is zero
      if (bi != t) w.swap_rows(bi, t);
      if (bj != t) w.swap_cols(bj, t);
      const Integer& p = w.a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(w.a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), p.get_mpz_t());
        w.row_op(i, t, q);
        if (sgn(w.a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(w.a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), p.get_mpz_t());
        w.col_op(j, t, q);
        if (sgn(w.a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(w.a[i][j].get_mpz_t(), p.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      w.row_op(t, bad, Integer(-1));
    }
    if (sgn(w.a[t][t]) < 0) {
      row_negate(w.a, t);
      if (track) row_negate(w.left, t);
    }
  }
  SmithForm out;
  for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(w.a[t][t]);
  if (track) {
    out.left = IntMatrix::from_rows(w.left, rows);
    out.right = IntMatrix::from_rows(w.right, cols);
  }
  return out;
}

}  // namespace

SmithForm snf(const IntMatrix& m) { return smith_impl(m, true); }

std::vector<Integer> smith_diagonal(const IntMatrix& m) { return smith_impl(m, false).diagonal; }

// ---------------------------------------------------------------------------
// Membership and module arithmetic

std::optional<IntVector> member(const IntVector& v, const SubmoduleBasis& b) {
  if (v.size() != b.ambient_rank()) throw DimensionMismatch("vector length != ambient rank");
  IntVector x(v);
  IntVector coords(b.rank());
  const auto& piv = b.pivots();
  const IntMatrix& m = b.basis();
  std::size_t k = 0;
  for (std::size_t col = 0; col < x.size(); ++col) {
    if (k < piv.size() && piv[k] == col) {
      const Integer& p = m(k, col);
      if (sgn(x[col]) != 0) {
        if (!mpz_divisible_p(x[col].get_mpz_t(), p.get_mpz_t())) return std::nullopt;
        Integer q = x[col] / p;
        for (std::size_t j = col; j < x.size(); ++j)
          if (sgn(m(k, j)) != 0) x[j] -= q * m(k, j);
        coords[k] = std::move(q);
      }
      ++k;
    } else if (sgn(x[col]) != 0) {
      return std::nullopt;
    }
  }
  return coords;
}

std::optional<IntVector> member(const SparseVector& v, const SubmoduleBasis& b) {
  return member(to_dense(v, b.ambient_rank()), b);
}

bool contains(const SubmoduleBasis& outer, const SubmoduleBasis& inner) {
  if (outer.ambient_rank() != inner.ambient_rank()) throw DimensionMismatch("ambient ranks differ");
  for (std::size_t i = 0; i < inner.rank(); ++i)
    if (!member(inner.row(i), outer)) return false;
  return true;
}

SubmoduleBasis module_sum(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("ambient ranks differ");
  Echelon e = Echelon::from_basis(a);
  for (std::size_t i = 0; i < b.rank(); ++i) e.insert(b.row(i));
  return e.hnf();
}

SubmoduleBasis module_intersect(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("ambient ranks differ");
  const std::size_t n = a.ambient_rank();
  // {(x + y, x) : x in A, y in B}; vectors with zero first half carry x = -y in A cap B.
  Echelon e(2 * n);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    SparseVector r = to_sparse(a.row(i));
    SparseVector doubled = r;
    for (const auto& [j, v] : r) doubled.emplace_back(static_cast<std::uint32_t>(j + n), v);
    e.insert(doubled);
  }
  for (std::size_t i = 0; i < b.rank(); ++i) e.insert(b.row(i));
  Echelon out(n);
  for (auto& r : e.rows_from(n)) {
    for (auto& [j, v] : r) j -= static_cast<std::uint32_t>(n);
    out.insert(r);
  }
  return out.hnf();
}

SubmoduleBasis scale(const SubmoduleBasis& a, const Integer& k) {
  if (sgn(k) == 0) return SubmoduleBasis::zero(a.ambient_rank());
  Echelon e(a.ambient_rank());
  Integer ak = abs(k);
  for (std::size_t i = 0; i < a.rank(); ++i) e.insert(scaled(to_sparse(a.row(i)), ak));
  return e.hnf();
}

ElementaryDivisors quotient_structure(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("ambient ranks differ");
  IntMatrix coords(b.rank(), a.rank());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    auto c = member(b.row(i), a);
    if (!c) throw NotContained("quotient_structure: submodule is not contained in the module");
    for (std::size_t j = 0; j < a.rank(); ++j) coords(i, j) = (*c)[j];
  }
  ElementaryDivisors out;
  out.free_rank = a.rank() - b.rank();
  for (auto& d : smith_diagonal(coords))
    if (d > 1) out.divisors.push_back(d);
  std::sort(out.divisors.begin(), out.divisors.end());
  return out;
}

SubmoduleBasis pullback(const std::vector<SparseVector>& images, const Echelon& target) {
  const std::size_t w = target.width();
  const std::size_t k = images.size();
  Echelon e = target.widened(k);
  for (std::size_t i = 0; i < k; ++i) {
    SparseVector v = images[i];
    v.emplace_back(static_cast<std::uint32_t>(w + i), Integer(1));
    e.insert(v);
  }
  Echelon out(k);
  for (auto& r : e.rows_from(w)) {
    for (auto& [j, v] : r) j -= static_cast<std::uint32_t>(w);
    out.insert(r);
  }
  return out.hnf();
}

SubmoduleBasis pullback(const std::vector<SparseVector>& images, const SubmoduleBasis& target) {
  return pullback(images, Echelon::from_basis(target));
}

SubmoduleBasis left_kernel(const IntMatrix& m) {
  std::vector<SparseVector> images;
  images.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) images.push_back(to_sparse(m.row(i)));
  return pullback(images, Echelon(m.cols()));
}

// ---------------------------------------------------------------------------
// Echelon

Echelon::Echelon(std::size_t width) : width_(width), pivot_row_(width, -1), work_(width), aux_(width) {}

Echelon Echelon::from_basis(const SubmoduleBasis& b, std::size_t extra_width) {
  Echelon e(b.ambient_rank() + extra_width);
  for (std::size_t i = 0; i < b.rank(); ++i) {
    e.pivot_row_[b.pivots()[i]] = static_cast<std::int64_t>(e.rows_.size());
    e.rows_.push_back(to_sparse(b.row(i)));
  }
  return e;
}

Echelon Echelon::widened(std::size_t extra_width) const {
  Echelon e(width_ + extra_width);
  e.rows_ = rows_;
  std::copy(pivot_row_.begin(), pivot_row_.end(), e.pivot_row_.begin());
  return e;
}

// Reduce the entries of row r at pivot columns >= from into [0, pivot).
void Echelon::reduce_row(std::size_t r, std::size_t from) {
  SparseVector& row = rows_[r];
  for (const auto& [j, x] : row) aux_[j] = x;
  const std::size_t start = row.front().first;
  Integer q;
  for (std::size_t j = from; j < width_; ++j) {
    if (sgn(aux_[j]) == 0) continue;
    const std::int64_t pr = pivot_row_[j];
    if (pr < 0 || static_cast<std::size_t>(pr) == r) continue;
    const SparseVector& prow = rows_[static_cast<std::size_t>(pr)];
    const Integer& p = prow.front().second;
    if (sgn(aux_[j]) > 0 && aux_[j] < p) continue;
    mpz_fdiv_q(q.get_mpz_t(), aux_[j].get_mpz_t(), p.get_mpz_t());
    for (const auto& [k, y] : prow) mpz_submul(aux_[k].get_mpz_t(), q.get_mpz_t(), y.get_mpz_t());
  }
  SparseVector out;
  for (std::size_t j = start; j < width_; ++j)
    if (sgn(aux_[j]) != 0) {
      out.emplace_back(static_cast<std::uint32_t>(j), std::move(aux_[j]));
      aux_[j] = 0;
    }
  row = std::move(out);
}

// The pivot at col appeared or changed: restore Hermite reduction of the rows above it.
void Echelon::reduce_above(std::size_t col) {
  for (std::size_t c = 0; c < col; ++c) {
    const std::int64_t r = pivot_row_[c];
    if (r < 0) continue;
    const SparseVector& row = rows_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != row.end() && it->first == col) reduce_row(static_cast<std::size_t>(r), col);
  }
}

void Echelon::clear_work(std::size_t from) {
  for (std::size_t j = from; j < width_; ++j)
    if (sgn(work_[j]) != 0) work_[j] = 0;
}

bool Echelon::insert(const SparseVector& v) {
  if (v.empty()) return false;
  for (const auto& [c, a] : v) {
    if (c >= width_) throw DimensionMismatch("vector exceeds echelon width");
    work_[c] = a;
  }
  const std::size_t start = v.front().first;
  bool grew = false;
  std::int64_t lead = -1;
  Integer q, g, s, t, pg, ag;
  for (std::size_t col = start; col < width_; ++col) {
    if (sgn(work_[col]) == 0) continue;
    const std::int64_t r = pivot_row_[col];
    if (r < 0) {
      if (lead < 0) {
        lead = static_cast<std::int64_t>(col);
        if (sgn(work_[col]) < 0)
          for (std::size_t j = col; j < width_; ++j)
            if (sgn(work_[j]) != 0) mpz_neg(work_[j].get_mpz_t(), work_[j].get_mpz_t());
      }
      continue;
    }
    SparseVector& row = rows_[static_cast<std::size_t>(r)];
    const Integer p = row.front().second;
    if (lead >= 0) {
      // keep the tail small: reduce into [0, p)
      if (sgn(work_[col]) < 0 || work_[col] >= p) {
        mpz_fdiv_q(q.get_mpz_t(), work_[col].get_mpz_t(), p.get_mpz_t());
        for (const auto& [j, x] : row) mpz_submul(work_[j].get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
      }
      continue;
    }
    if (mpz_divisible_p(work_[col].get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(q.get_mpz_t(), work_[col].get_mpz_t(), p.get_mpz_t());
      for (const auto& [j, x] : row) mpz_submul(work_[j].get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
      continue;
    }
    // g = s*p + t*a; the pair (row, work) is replaced by (s*row + t*work, (p/g)*work - (a/g)*row).
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), work_[col].get_mpz_t());
    mpz_divexact(pg.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), work_[col].get_mpz_t(), g.get_mpz_t());
    SparseVector old = std::move(row);
    SparseVector fresh;
    {
      auto it = old.begin();
      for (std::size_t j = col; j < width_; ++j) {
        Integer val;
        if (sgn(work_[j]) != 0) val = t * work_[j];
        if (it != old.end() && it->first == j) {
          val += s * it->second;
          ++it;
        }
        if (sgn(val) != 0) fresh.emplace_back(static_cast<std::uint32_t>(j), std::move(val));
      }
    }
    for (std::size_t j = col; j < width_; ++j)
      if (sgn(work_[j]) != 0) work_[j] *= pg;
    for (const auto& [j, x] : old) mpz_submul(work_[j].get_mpz_t(), ag.get_mpz_t(), x.get_mpz_t());
    row = std::move(fresh);
    reduce_row(static_cast<std::size_t>(r), col + 1);
    reduce_above(col);
    grew = true;
  }
  if (lead >= 0) {
    SparseVector fresh;
    for (std::size_t j = static_cast<std::size_t>(lead); j < width_; ++j)
      if (sgn(work_[j]) != 0) fresh.emplace_back(static_cast<std::uint32_t>(j), work_[j]);
    pivot_row_[static_cast<std::size_t>(lead)] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(fresh));
    reduce_above(static_cast<std::size_t>(lead));
    grew = true;
  }
  clear_work(start);
  return grew;
}

bool Echelon::contains(const SparseVector& v) const {
  if (v.empty()) return true;
  std::vector<Integer> w(width_);
  for (const auto& [c, a] : v) {
    if (c >= width_) throw DimensionMismatch("vector exceeds echelon width");
    w[c] = a;
  }
  Integer q;
  for (std::size_t col = v.front().first; col < width_; ++col) {
    if (sgn(w[col]) == 0) continue;
    const std::int64_t r = pivot_row_[col];
    if (r < 0) return false;
    const SparseVector& row = rows_[static_cast<std::size_t>(r)];
    const Integer& p = row.front().second;
    if (!mpz_divisible_p(w[col].get_mpz_t(), p.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), w[col].get_mpz_t(), p.get_mpz_t());
    for (const auto& [j, x] : row) mpz_submul(w[j].get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
  }
  return true;
}

std::vector<SparseVector> Echelon::rows() const { return rows_from(0); }

std::vector<SparseVector> Echelon::rows_from(std::size_t first_col) const {
  std::vector<SparseVector> out;
  for (std::size_t c = first_col; c < width_; ++c)
    if (pivot_row_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
  return out;
}

SubmoduleBasis Echelon::hnf() const {
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < width_; ++c)
    if (pivot_row_[c] >= 0) piv.push_back(c);
  const std::size_t rank = piv.size();
  std::vector<SparseVector> reduced(rank);
  std::vector<Integer> d(width_);
  Integer q;
  for (std::size_t i = rank; i-- > 0;) {
    const SparseVector& src = rows_[static_cast<std::size_t>(pivot_row_[piv[i]])];
    for (const auto& [j, x] : src) d[j] = x;
    for (std::size_t k = i + 1; k < rank; ++k) {
      Integer& e = d[piv[k]];
      if (sgn(e) == 0) continue;
      const Integer& p = reduced[k].front().second;
      if (sgn(e) > 0 && e < p) continue;
      mpz_fdiv_q(q.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
      for (const auto& [j, x] : reduced[k]) mpz_submul(d[j].get_mpz_t(), q.get_mpz_t(), x.get_mpz_t());
    }
    SparseVector r;
    for (std::size_t j = piv[i]; j < width_; ++j)
      if (sgn(d[j]) != 0) {
        r.emplace_back(static_cast<std::uint32_t>(j), d[j]);
        d[j] = 0;
      }
    reduced[i] = std::move(r);
  }
  IntMatrix m(rank, width_);
  for (std::size_t i = 0; i < rank; ++i)
    for (const auto& [j, x] : reduced[i]) m(i, j) = x;
  return SubmoduleBasis(width_, std::move(m));
}

}  // namespace liedim
