#include <random>

#include "doctest.h"
#include "lattice_oracle.hpp"
#include "liedim/errors.hpp"
#include "liedim/exactlinalg.hpp"

using namespace liedim;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) { return IntMatrix::from_list(rows); }

IntVector vec(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

SubmoduleBasis span(std::initializer_list<std::initializer_list<long>> rows) { return hnf(mat(rows)); }

bool is_hnf(const SubmoduleBasis& b) {
  const IntMatrix& m = b.basis();
  std::size_t prev = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t p = b.pivots()[i];
    if (i > 0 && p <= prev) return false;
    for (std::size_t j = 0; j < p; ++j)
      if (sgn(m(i, j)) != 0) return false;
    if (sgn(m(i, p)) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (sgn(m(k, p)) < 0 || m(k, p) >= m(i, p)) return false;
    prev = p;
  }
  return true;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

IntMatrix diag_matrix(const std::vector<Integer>& d, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

TEST_CASE("hnf examples") {
  CHECK(hnf(mat({{2, 0}, {0, 3}})).basis() == mat({{2, 0}, {0, 3}}));
  CHECK(hnf(mat({{1, 1}, {1, -1}})).basis() == mat({{1, 1}, {0, 2}}));
  auto z = hnf(IntMatrix(2, 2));
  CHECK(z.rank() == 0);
  CHECK(z.ambient_rank() == 2);
  CHECK(z == SubmoduleBasis::zero(2));
}

TEST_CASE("snf examples") {
  auto s = snf(mat({{2, 0}, {0, 3}}));
  CHECK(s.diagonal == std::vector<Integer>{1, 6});
  CHECK(s.left * mat({{2, 0}, {0, 3}}) * s.right == diag_matrix(s.diagonal, 2, 2));

  auto id = snf(IntMatrix::identity(3));
  CHECK(id.diagonal == std::vector<Integer>{1, 1, 1});
  CHECK(id.left == IntMatrix::identity(3));
  CHECK(id.right == IntMatrix::identity(3));

  auto row = snf(mat({{2, 4}}));
  CHECK(row.diagonal == std::vector<Integer>{2});
  CHECK(row.left * mat({{2, 4}}) * row.right == diag_matrix(row.diagonal, 1, 2));
}

TEST_CASE("member examples") {
  auto b = span({{2, 0}, {0, 2}});
  auto c = member(vec({2, 2}), b);
  REQUIRE(c);
  CHECK(*c == vec({1, 1}));
  CHECK_FALSE(member(vec({1, 1}), b));
  auto z = member(vec({0, 0}), b);
  REQUIRE(z);
  CHECK(*z == vec({0, 0}));
  CHECK_THROWS_AS(member(vec({1, 2, 3}), b), DimensionMismatch);
}

TEST_CASE("module_sum examples") {
  CHECK(module_sum(span({{2, 0}}), span({{0, 3}})) == span({{2, 0}, {0, 3}}));
  auto a = span({{4, 6}, {0, 5}});
  CHECK(module_sum(a, a) == a);
  CHECK(module_sum(span({{2, 0}}), span({{3, 0}})) == span({{1, 0}}));
  CHECK_THROWS_AS(module_sum(span({{1, 0}}), SubmoduleBasis::zero(3)), DimensionMismatch);
}

TEST_CASE("module_intersect examples") {
  // lcm(2,3) found by scanning multiples of (1,0) in both lines
  long first = 0;
  for (long k = 1; k < 100 && !first; ++k)
    if (k % 2 == 0 && k % 3 == 0) first = k;
  CHECK(module_intersect(span({{2, 0}}), span({{3, 0}})) == span({{first, 0}}));
  auto b = span({{3, 1}, {0, 7}});
  CHECK(module_intersect(SubmoduleBasis::full(2), b) == b);
  CHECK(module_intersect(span({{1, 0}}), span({{0, 1}})).rank() == 0);
}

TEST_CASE("quotient_structure examples") {
  auto q = quotient_structure(SubmoduleBasis::full(2), span({{2, 0}, {0, 3}}));
  CHECK(q.divisors == std::vector<Integer>{6});
  CHECK(q.free_rank == 0);
  auto a = span({{1, 2}, {0, 4}});
  CHECK(quotient_structure(a, a).trivial());
  auto h = quotient_structure(SubmoduleBasis::full(2), span({{2, 0}}));
  CHECK(h.divisors == std::vector<Integer>{2});
  CHECK(h.free_rank == 1);
  CHECK_THROWS_AS(quotient_structure(span({{2, 0}}), span({{1, 0}})), NotContained);
}

TEST_CASE("echelon insert reports growth and builds the same hnf") {
  Echelon e(3);
  CHECK(e.insert(vec({4, 6, 0})));
  CHECK(e.insert(vec({6, 9, 1})));
  CHECK_FALSE(e.insert(vec({2, 3, 1})));  // (6,9,1) - (4,6,0)
  CHECK_FALSE(e.insert(vec({8, 12, 0})));
  CHECK(e.hnf() == hnf(mat({{4, 6, 0}, {6, 9, 1}})));
  CHECK(e.contains(to_sparse(vec({10, 15, 1}))));
  CHECK_FALSE(e.contains(to_sparse(vec({1, 0, 0}))));
}

TEST_CASE("pullback and left kernel") {
  // x*(2,4) + y*(1,2) == 0
  auto k = left_kernel(mat({{2, 4}, {1, 2}}));
  CHECK(k == span({{1, -2}}));
  // {x : x*(1) in 6Z}
  std::vector<SparseVector> images{to_sparse(vec({1})), to_sparse(vec({2}))};
  auto pb = pullback(images, span({{6}}));
  CHECK(pb == span({{2, 2}, {0, 3}}));
}

// Agreement with the minor-based oracle on random small matrices.
TEST_CASE("normal forms agree with the brute-force lattice oracle") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::uniform_int_distribution<int> coef(-2, 2);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t cols = static_cast<std::size_t>(dim(rng));
    IntMatrix m = random_matrix(rng, static_cast<std::size_t>(dim(rng)), cols);
    IntMatrix n = random_matrix(rng, static_cast<std::size_t>(dim(rng)), cols);
    // sprinkle in degenerate shapes
    if (trial % 7 == 0)
      for (std::size_t j = 0; j < cols; ++j) m(0, j) = 0;
    if (trial % 11 == 0 && m.rows() > 1)
      for (std::size_t j = 0; j < cols; ++j) m(1, j) = 2 * m(0, j);
    const auto mrows = m.row_vectors();
    const auto nrows = n.row_vectors();

    auto h = hermite(m);
    const SubmoduleBasis& a = h.form;
    REQUIRE(is_hnf(a));
    CHECK(hnf(a.basis()) == a);
    CHECK(h.transform * m == a.basis());
    CHECK(oracle::same_lattice(mrows, a.basis().row_vectors()));
    CHECK(a.rank() == oracle::rank(mrows));
    Echelon e(cols);
    for (const auto& r : mrows) e.insert(r);
    CHECK(e.hnf() == a);

    auto s = snf(m);
    CHECK(s.left * m * s.right == diag_matrix(s.diagonal, m.rows(), m.cols()));
    CHECK(abs(oracle::det(s.left.row_vectors())) == 1);
    CHECK(abs(oracle::det(s.right.row_vectors())) == 1);
    auto inv = oracle::invariant_factors(mrows);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
      if (i < inv.size()) CHECK(s.diagonal[i] == inv[i]);
      else CHECK(s.diagonal[i] == 0);
      if (i + 1 < s.diagonal.size() && sgn(s.diagonal[i]) != 0)
        CHECK(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()));
    }

    for (int probe = 0; probe < 4; ++probe) {
      IntVector x(cols);
      for (auto& v : x) v = entry(rng);
      if (probe == 0) {
        x.assign(cols, 0);
        for (const auto& r : mrows) {
          Integer c = coef(rng);
          for (std::size_t j = 0; j < cols; ++j) x[j] += c * r[j];
        }
      }
      auto c = member(x, a);
      CHECK(c.has_value() == oracle::in_lattice(mrows, x));
      if (c) {
        IntVector back(cols);
        for (std::size_t i = 0; i < a.rank(); ++i)
          for (std::size_t j = 0; j < cols; ++j) back[j] += (*c)[i] * a.basis()(i, j);
        CHECK(back == x);
      }
    }

    auto b = hnf(n);
    auto sum = module_sum(a, b);
    auto stacked = mrows;
    stacked.insert(stacked.end(), nrows.begin(), nrows.end());
    CHECK(oracle::same_lattice(sum.basis().row_vectors(), stacked));
    CHECK(contains(sum, a));
    CHECK(contains(sum, b));

    auto meet = module_intersect(a, b);
    for (const auto& r : meet.basis().row_vectors()) {
      CHECK(oracle::in_lattice(mrows, r));
      CHECK(oracle::in_lattice(nrows, r));
    }
    CHECK(meet.rank() + oracle::rank(stacked) == oracle::rank(mrows) + oracle::rank(nrows));
    // every small combination of A's generators lying in B must lie in the intersection
    const auto arows = a.basis().row_vectors();
    std::vector<int> cs(arows.size(), -2);
    for (;;) {
      IntVector x(cols);
      for (std::size_t i = 0; i < arows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) x[j] += cs[i] * arows[i][j];
      CHECK(member(x, meet).has_value() == oracle::in_lattice(nrows, x));
      std::size_t k = 0;
      while (k < cs.size() && cs[k] == 2) cs[k++] = -2;
      if (k == cs.size()) break;
      ++cs[k];
    }

    auto q = quotient_structure(SubmoduleBasis::full(cols), b);
    std::vector<Integer> expect;
    for (auto& d : oracle::invariant_factors(nrows))
      if (d > 1) expect.push_back(d);
    CHECK(q.divisors == expect);
    CHECK(q.free_rank == cols - oracle::rank(nrows));
    if (meet.rank() == a.rank() && a.rank() > 0) {
      auto qa = quotient_structure(a, meet);
      Integer index = 1;
      for (auto& d : qa.divisors) index *= d;
      CHECK(index == oracle::determinantal_divisor(meet.basis().row_vectors(), meet.rank()) /
                         oracle::determinantal_divisor(arows, a.rank()));
    }
    ++checked;
  }
  CHECK(checked == 1000);
}
