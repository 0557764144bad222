#pragma once

// Exact integer linear algebra: matrices over Z, Hermite and Smith normal
// forms, and arithmetic on submodules of Z^n given by canonical bases.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace liedim {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Sorted by column, no stored zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Integer>>;

SparseVector to_sparse(const IntVector& v);
IntVector to_dense(const SparseVector& v, std::size_t width);
// y += a * x
void axpy(SparseVector& y, const Integer& a, const SparseVector& x);
SparseVector scaled(const SparseVector& x, const Integer& a);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_list(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_vectors() const;
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  bool is_zero() const;
  IntMatrix transposed() const;
  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

class Echelon;
struct HermiteDecomposition;

// A submodule of Z^ambient_rank held by its row Hermite normal form:
// echelon rows, positive pivots, entries above each pivot reduced into [0, pivot).
// An empty basis is the zero submodule.
class SubmoduleBasis {
 public:
  SubmoduleBasis() = default;

  static SubmoduleBasis zero(std::size_t ambient_rank);
  static SubmoduleBasis full(std::size_t ambient_rank);
  // Submodule spanned by the unit vectors e_i for the given indices.
  static SubmoduleBasis coordinate(std::size_t ambient_rank, const std::vector<std::size_t>& indices);

  std::size_t ambient_rank() const noexcept { return ambient_rank_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return basis_.rows() == 0; }
  const IntMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  IntVector row(std::size_t i) const { return basis_.row(i); }

  friend bool operator==(const SubmoduleBasis& a, const SubmoduleBasis& b);

 private:
  friend SubmoduleBasis hnf(const IntMatrix& m);
  friend HermiteDecomposition hermite(const IntMatrix& m);
  friend class Echelon;

  SubmoduleBasis(std::size_t ambient_rank, IntMatrix basis);

  std::size_t ambient_rank_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

struct HermiteDecomposition {
  SubmoduleBasis form;
  // transform * input == form.basis()  (rows: form.rank(), cols: input rows)
  IntMatrix transform;
};

struct ElementaryDivisors {
  std::vector<Integer> divisors;  // each > 1, d_i | d_{i+1}
  std::size_t free_rank = 0;

  bool trivial() const noexcept { return divisors.empty() && free_rank == 0; }
  friend bool operator==(const ElementaryDivisors&, const ElementaryDivisors&) = default;
};

struct SmithForm {
  std::vector<Integer> diagonal;  // length min(rows, cols), nonnegative, d_i | d_{i+1}
  IntMatrix left;                 // unimodular, rows x rows
  IntMatrix right;                // unimodular, cols x cols
};

// Row Hermite normal form of the row span. Column-by-column elimination with the
// minimal-absolute-value pivot (ties broken by lowest row index).
SubmoduleBasis hnf(const IntMatrix& m);
HermiteDecomposition hermite(const IntMatrix& m);

SmithForm snf(const IntMatrix& m);
// Diagonal of the Smith form only, without transforms.
std::vector<Integer> smith_diagonal(const IntMatrix& m);

// Coordinates of v over B's basis rows, or nullopt when v is not in B.
std::optional<IntVector> member(const IntVector& v, const SubmoduleBasis& b);
std::optional<IntVector> member(const SparseVector& v, const SubmoduleBasis& b);
bool contains(const SubmoduleBasis& outer, const SubmoduleBasis& inner);

SubmoduleBasis module_sum(const SubmoduleBasis& a, const SubmoduleBasis& b);
SubmoduleBasis module_intersect(const SubmoduleBasis& a, const SubmoduleBasis& b);
SubmoduleBasis scale(const SubmoduleBasis& a, const Integer& k);
ElementaryDivisors quotient_structure(const SubmoduleBasis& a, const SubmoduleBasis& b);

// Basis of {x in Z^images.size() : sum x_i images_i in target}.
SubmoduleBasis pullback(const std::vector<SparseVector>& images, const Echelon& target);
SubmoduleBasis pullback(const std::vector<SparseVector>& images, const SubmoduleBasis& target);

// Left kernel {x : x * m == 0}.
SubmoduleBasis left_kernel(const IntMatrix& m);

// Incremental Hermite basis of a growing submodule of Z^width. Inserting a vector
// reduces it against existing rows; an incompatible pivot is resolved by an extended
// gcd step, so pivots only shrink. Rows are kept reduced above every pivot, which
// keeps intermediate entries near the size of the final normal form. Not
// thread-safe (owns scratch rows).
class Echelon {
 public:
  explicit Echelon(std::size_t width);
  // Echelon of b's rows, embedded in the first columns of Z^(ambient + extra_width).
  static Echelon from_basis(const SubmoduleBasis& b, std::size_t extra_width = 0);
  // Same rows, embedded in a wider ambient module.
  Echelon widened(std::size_t extra_width) const;

  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  // True when the span grew, i.e. v was not already a member.
  bool insert(const SparseVector& v);
  bool insert(const IntVector& v) { return insert(to_sparse(v)); }
  bool contains(const SparseVector& v) const;

  // Rows in pivot order (echelon, not reduced).
  std::vector<SparseVector> rows() const;
  // Rows whose pivot column is >= first_col.
  std::vector<SparseVector> rows_from(std::size_t first_col) const;

  SubmoduleBasis hnf() const;

 private:
  void clear_work(std::size_t from);
  void reduce_row(std::size_t r, std::size_t from);
  void reduce_above(std::size_t col);

  std::size_t width_;
  std::vector<SparseVector> rows_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<Integer> work_;
  std::vector<Integer> aux_;
};

}  // namespace liedim
