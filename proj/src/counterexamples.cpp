#include "liedim/counterexamples.hpp"

#include <chrono>

#include "liedim/errors.hpp"
#include "liedim/series.hpp"

namespace liedim::counterexample {

namespace {

LieExpr gen(std::size_t i) { return LieExpr::generator(i); }
LieExpr br(LieExpr u, LieExpr v) { return LieExpr::bracket({std::move(u), std::move(v)}); }

Integer pow2(std::size_t k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, k);
  return out;
}

LieExpr chain(std::size_t i, std::size_t letter) {
  LieExpr e = gen(R);
  for (std::size_t k = 0; k < i; ++k) e = br(e, gen(letter));
  return e;
}

void check_n(std::size_t n) {
  if (n < 4) throw BadParameters("L(n) needs n >= 4");
}

}  // namespace

LieExpr x(std::size_t i) { return chain(i, A); }
LieExpr y(std::size_t i) { return chain(i, B); }
LieExpr z(std::size_t i) { return chain(i, C); }

Presentation build_Ln(std::size_t n, std::size_t degree) {
  check_n(n);
  if (degree < 2 * n - 4) throw BadParameters("L(n) needs degree >= 2n-4");
  std::vector<LieExpr> rels;
  rels.push_back(LieExpr::scaled(pow2(2 * n - 1), gen(R)));
  rels.push_back(LieExpr::sum({pow2(n + 2), -4, -2}, {gen(A), y(n - 3), z(n - 3)}));
  rels.push_back(LieExpr::sum({pow2(n), 4, -1}, {gen(B), x(n - 3), z(n - 3)}));
  rels.push_back(LieExpr::sum({pow2(n - 2), 2, 1}, {gen(C), x(n - 3), y(n - 3)}));
  rels.push_back(z(n - 2) - 4 * y(n - 2));
  rels.push_back(y(n - 2) - 4 * x(n - 2));
  rels.push_back(x(n - 1));
  rels.push_back(y(n - 1));
  rels.push_back(z(n - 1));

  // [a,b,u], [a,c,u], [b,c,u]; u over the Lyndon basis, the Lie ideal closure does the rest.
  for (std::size_t d = 1; d + 2 <= degree; ++d)
    for (const auto& w : lyndon_words(4, d)) {
      LieExpr u = bracketing_expr(w.word);
      rels.push_back(LieExpr::bracket({gen(A), gen(B), u}));
      rels.push_back(LieExpr::bracket({gen(A), gen(C), u}));
      rels.push_back(LieExpr::bracket({gen(B), gen(C), u}));
    }

  for (std::size_t i = 1; i + 2 <= degree; ++i) {
    rels.push_back(br(x(i), gen(B)));
    rels.push_back(br(x(i), gen(C)));
    rels.push_back(br(y(i), gen(A)));
    rels.push_back(br(y(i), gen(C)));
    rels.push_back(br(z(i), gen(A)));
    rels.push_back(br(z(i), gen(B)));
  }

  // Pairs from the same family only need i < j; x_0 = y_0 = z_0 makes i = j = 0 trivial.
  using Family = LieExpr (*)(std::size_t);
  const std::vector<std::pair<Family, Family>> pairs{{x, x}, {x, y}, {x, z}, {y, y}, {y, z}, {z, z}};
  for (const auto& [f, h] : pairs)
    for (std::size_t i = 0; i + 2 <= degree; ++i)
      for (std::size_t j = 0; i + j + 2 <= degree; ++j) {
        if (f == h ? i >= j : i + j == 0) continue;
        rels.push_back(br(f(i), h(j)));
      }
  return Presentation({"r", "a", "b", "c"}, rels);
}

LieExpr build_g(std::size_t n) {
  check_n(n);
  return LieExpr::sum({pow2(2 * n - 1), pow2(2 * n - 2), pow2(2 * n - 3)},
                      {br(gen(A), gen(B)), br(gen(A), gen(C)), br(gen(B), gen(C))});
}

bool Certificate::passed() const {
  bool ok = gamma_n_zero && g_nonzero && g_in_delta && order_of_g == 2;
  for (const auto& id : identities) ok = ok && id.holds;
  return ok;
}

Certificate verify(std::size_t n, std::size_t degree) {
  check_n(n);
  const auto start = std::chrono::steady_clock::now();
  // One class bound K = 2n-4 serves every claim: delta_K needs class >= K-1, and
  // gamma_n = 0 is checked in all degrees n..K at once.
  const std::size_t K = degree == 0 ? 2 * n - 4 : degree;
  const Presentation p = build_Ln(n, K);
  const NilpotentQuotient q = nilpotent_quotient(p, K);
  const ContextPtr& ctx = q.ctx;
  const std::size_t m = p.generator_count();

  Certificate cert;
  cert.n = n;
  cert.degree = K;
  cert.lie_dim = ctx->lie_dim();
  cert.assoc_dim = MonomialIndex(m, 2 * n - 5).dimension();
  cert.relation_rank = q.relation_module.rank();
  cert.gamma_n_zero = contains(q.relation_module, gamma_free(n, ctx).basis);

  auto coords = [&](const LieExpr& e) { return ctx->lie_coords(eval_lie(e, m, K)); };
  const SparseVector g = coords(build_g(n));
  cert.g_nonzero = !member(g, q.relation_module);

  const std::size_t top = 2 * n - 4;
  const SubmoduleBasis delta = delta_n(p, q, top);
  cert.g_in_delta = member(g, delta).has_value();
  cert.delta_quotient = quotient_structure(delta, gamma_n(q, top));

  const SubmoduleBasis multiples = pullback(std::vector<SparseVector>{g}, q.relation_module);
  cert.order_of_g = multiples.is_zero() ? Integer(0) : multiples.row(0)[0];

  const LieExpr ge = build_g(n);
  auto identity = [&](std::string label, const LieExpr& other) {
    cert.identities.push_back({std::move(label), member(coords(ge - other), q.relation_module).has_value()});
  };
  identity("2^" + std::to_string(n + 1) + "*x_" + std::to_string(n - 2), LieExpr::scaled(pow2(n + 1), x(n - 2)));
  identity("2^" + std::to_string(n - 3) + "*z_" + std::to_string(n - 2), LieExpr::scaled(pow2(n - 3), z(n - 2)));
  identity("2^" + std::to_string(2 * n - 1) + "*[a, b]", LieExpr::scaled(pow2(2 * n - 1), br(gen(A), gen(B))));

  cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

nlohmann::ordered_json to_json(const Certificate& cert, bool with_timing) {
  nlohmann::ordered_json out;
  out["n"] = cert.n;
  out["degree"] = cert.degree;
  out["g"] = expr_to_string(build_g(cert.n), {"r", "a", "b", "c"});
  out["gamma_n_zero"] = cert.gamma_n_zero;
  out["g_nonzero"] = cert.g_nonzero;
  out["g_in_delta"] = cert.g_in_delta;
  out["order_of_g"] = integer_json(cert.order_of_g);
  nlohmann::ordered_json ids;
  for (const auto& id : cert.identities) ids["g = " + id.label] = id.holds;
  out["identities"] = ids;
  auto divisors = nlohmann::ordered_json::array();
  for (const auto& d : cert.delta_quotient.divisors) divisors.push_back(integer_json(d));
  out["delta_quotient"] = {{"divisors", divisors}, {"free_rank", cert.delta_quotient.free_rank}};
  out["dimensions"] = {{"lie", cert.lie_dim}, {"assoc", cert.assoc_dim}, {"relation_rank", cert.relation_rank}};
  out["passed"] = cert.passed();
  if (with_timing) out["seconds"] = cert.seconds;
  return out;
}

}  // namespace liedim::counterexample
