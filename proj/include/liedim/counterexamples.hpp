#pragma once

// The metabelian Lie rings L(n) on r, a, b, c with gamma_n(L(n)) = 0 and a nonzero
// element g of order 2 in delta_(2n-4)(L(n)).

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "liedim/presentation.hpp"

namespace liedim::counterexample {

enum Gen : std::size_t { R = 0, A = 1, B = 2, C = 3 };

// x_0 = y_0 = z_0 = r; x_i = [x_(i-1), a], y_i = [y_(i-1), b], z_i = [z_(i-1), c].
LieExpr x(std::size_t i);
LieExpr y(std::size_t i);
LieExpr z(std::size_t i);

// Infinite relator families are cut at total degree `degree`; needs n >= 4, degree >= 2n-4.
Presentation build_Ln(std::size_t n, std::size_t degree);
// 2^(2n-1)[a,b] + 2^(2n-2)[a,c] + 2^(2n-3)[b,c]
LieExpr build_g(std::size_t n);

struct Identity {
  std::string label;  // e.g. "2^6*x_3"
  bool holds = false;
};

struct Certificate {
  std::size_t n = 0;
  std::size_t degree = 0;
  bool gamma_n_zero = false;
  bool g_nonzero = false;
  bool g_in_delta = false;
  Integer order_of_g;  // 0 when g has infinite order
  std::vector<Identity> identities;
  ElementaryDivisors delta_quotient;  // delta_(2n-4) / gamma_(2n-4)
  std::size_t lie_dim = 0;
  std::size_t assoc_dim = 0;
  std::size_t relation_rank = 0;
  double seconds = 0;

  bool passed() const;
};

// degree == 0 selects 2n-4.
Certificate verify(std::size_t n, std::size_t degree = 0);

nlohmann::ordered_json to_json(const Certificate& cert, bool with_timing = false);

}  // namespace liedim::counterexample
