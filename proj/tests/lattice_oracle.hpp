#pragma once

// Brute-force lattice facts from minors alone (no elimination), used to check
// the normal-form kernel. Only meant for tiny matrices.

#include <algorithm>
#include <vector>

#include "liedim/exactlinalg.hpp"

namespace oracle {

using liedim::Integer;
using liedim::IntVector;
using Rows = std::vector<IntVector>;

inline Integer det(const Rows& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(m[0][j]) == 0) continue;
    Rows minor;
    for (std::size_t i = 1; i < n; ++i) {
      IntVector r;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) r.push_back(m[i][k]);
      minor.push_back(r);
    }
    Integer term = m[0][j] * det(minor);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

// gcd of all k x k minors (0 when every minor vanishes); 1 for k == 0.
inline Integer determinantal_divisor(const Rows& m, std::size_t k) {
  if (k == 0) return 1;
  if (m.empty() || k > m.size() || k > m[0].size()) return 0;
  Integer g = 0;
  for (const auto& rs : subsets(m.size(), k))
    for (const auto& cs : subsets(m[0].size(), k)) {
      Rows sub;
      for (auto i : rs) {
        IntVector r;
        for (auto j : cs) r.push_back(m[i][j]);
        sub.push_back(r);
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(det(sub)).get_mpz_t());
    }
  return g;
}

inline std::size_t rank(const Rows& m) {
  if (m.empty()) return 0;
  std::size_t k = std::min(m.size(), m[0].size());
  while (k > 0 && determinantal_divisor(m, k) == 0) --k;
  return k;
}

// x lies in the row lattice of m iff adjoining it keeps the rank and the top
// determinantal divisor (the lattice index formula).
inline bool in_lattice(const Rows& m, const IntVector& x) {
  bool zero = std::all_of(x.begin(), x.end(), [](const Integer& v) { return sgn(v) == 0; });
  if (zero) return true;
  const std::size_t r = rank(m);
  Rows ext = m;
  ext.push_back(x);
  if (rank(ext) != r) return false;
  if (r == 0) return false;
  return determinantal_divisor(m, r) == determinantal_divisor(ext, r);
}

inline bool same_lattice(const Rows& a, const Rows& b) {
  for (const auto& r : a)
    if (!in_lattice(b, r)) return false;
  for (const auto& r : b)
    if (!in_lattice(a, r)) return false;
  return true;
}

// Invariant factors of the row lattice (all of them, including 1s), d_i = D_i / D_{i-1}.
inline std::vector<Integer> invariant_factors(const Rows& m) {
  std::vector<Integer> out;
  const std::size_t r = rank(m);
  for (std::size_t i = 1; i <= r; ++i) out.push_back(determinantal_divisor(m, i) / determinantal_divisor(m, i - 1));
  return out;
}

}  // namespace oracle
