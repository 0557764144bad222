#include "liedim/series.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>
#include <thread>

#include "liedim/errors.hpp"

namespace liedim {

NilpotentQuotient nilpotent_quotient(const Presentation& p, std::size_t class_bound) {
  if (class_bound < 1) throw OutOfRange("class bound must be at least 1");
  NilpotentQuotient q;
  q.ctx = TruncatedContext::get(p.generator_count(), class_bound);
  q.class_bound = class_bound;
  // gamma_(c+1)(F) vanishes in degree-<=c coordinates, so R alone spans the module.
  q.relation_module = lie_ideal(p.relators(), q.ctx).basis;
  q.structure = quotient_structure(SubmoduleBasis::full(q.ctx->lie_dim()), q.relation_module);
  return q;
}

SubmoduleBasis gamma_n(const NilpotentQuotient& q, std::size_t n) {
  if (n < 1 || n > q.class_bound + 1) throw OutOfRange("gamma_n: n must lie in 1..c+1");
  return module_sum(gamma_free(n, q.ctx).basis, q.relation_module);
}

SubmoduleBasis delta_n(const Presentation& p, std::size_t n, std::size_t class_bound) {
  if (n >= 1 && class_bound + 1 < n) throw ClassTooSmall("delta_n needs class bound >= n-1");
  return delta_n(p, nilpotent_quotient(p, class_bound), n);
}

SubmoduleBasis delta_n(const Presentation& p, const NilpotentQuotient& q, std::size_t n) {
  if (n < 1) throw OutOfRange("delta_n: n must be at least 1");
  if (q.class_bound + 1 < n) throw ClassTooSmall("delta_n needs class bound >= n-1");
  const std::size_t lie_dim = q.ctx->lie_dim();
  if (n == 1) return SubmoduleBasis::full(lie_dim);

  // Work in U / varpi^n: monomials of degree <= n-1.
  const std::size_t m = p.generator_count();
  auto actx = TruncatedContext::get(m, n - 1);
  std::vector<SparseVector> seeds;
  for (const auto& poly : relator_polys(p, n - 1)) seeds.push_back(actx->assoc_coords(poly));
  Echelon r = assoc_closure(*actx, seeds);

  const std::size_t low = q.ctx->lie().size_upto(n - 1);
  std::vector<SparseVector> images;
  images.reserve(low);
  for (std::size_t i = 0; i < low; ++i) images.push_back(actx->embedding(i));
  SubmoduleBasis kernel = pullback(images, r);

  Echelon out = Echelon::from_basis(kernel, lie_dim - low);
  for (std::size_t i = low; i < lie_dim; ++i) out.insert(SparseVector{{static_cast<std::uint32_t>(i), Integer(1)}});
  for (std::size_t i = 0; i < q.relation_module.rank(); ++i) out.insert(q.relation_module.row(i));
  return out.hnf();
}

CheckResult multiple_contained(const SubmoduleBasis& delta, const SubmoduleBasis& gamma, const Integer& k) {
  CheckResult res;
  for (std::size_t i = 0; i < delta.rank(); ++i) {
    IntVector v = delta.row(i);
    for (auto& x : v) x *= k;
    if (!member(v, gamma)) {
      res.holds = false;
      res.witness = delta.row(i);
      break;
    }
  }
  return res;
}

bool corollary_holds(const NilpotentQuotient& q, const SubmoduleBasis& delta, std::size_t n) {
  if (n > q.class_bound) throw ClassTooSmall("corollary check needs n <= class bound");
  Echelon e = Echelon::from_basis(q.relation_module);
  for (std::size_t i = 0; i < delta.rank(); ++i) {
    SparseVector v = to_sparse(delta.row(i));
    for (std::size_t j = 0; j < q.ctx->generators(); ++j) e.insert(q.ctx->bracket_generator(v, j));
  }
  return e.hnf() == gamma_n(q, n + 1);
}

// ---------------------------------------------------------------------------

namespace {

SeriesEntry compute_entry(const Presentation& p, const NilpotentQuotient& q, std::size_t n,
                          const std::vector<Integer>& sjogren_c) {
  SeriesEntry e;
  e.n = n;
  e.gamma = gamma_n(q, n);
  e.delta = delta_n(p, q, n);
  e.quotient = quotient_structure(e.delta, e.gamma);
  e.two_delta_in_gamma = multiple_contained(e.delta, e.gamma, 2).holds;
  if (n <= q.class_bound) e.corollary = corollary_holds(q, e.delta, n);
  e.sjogren_holds = multiple_contained(e.delta, e.gamma, sjogren_c[n]).holds;
  if (n <= 3) e.low_degree_equal = e.delta == e.gamma;
  return e;
}

}  // namespace

SeriesReport quotient_report(const Presentation& p, std::size_t max_n, std::size_t class_bound, std::size_t threads) {
  if (max_n < 1) throw OutOfRange("max n must be at least 1");
  if (class_bound + 1 < max_n) throw ClassTooSmall("series report needs class bound >= max n - 1");
  const NilpotentQuotient q = nilpotent_quotient(p, class_bound);
  std::vector<Integer> cs(max_n + 1, Integer(1));
  for (std::size_t n = 2; n <= max_n; ++n) cs[n] = sjogren(n).c_n;

  SeriesReport report;
  report.class_bound = class_bound;
  report.entries.resize(max_n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, max_n);
  if (threads <= 1) {
    for (std::size_t n = 1; n <= max_n; ++n) report.entries[n - 1] = compute_entry(p, q, n, cs);
    return report;
  }
  // Largest n first: those dominate the running time.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k; (k = next++) < max_n;) {
          const std::size_t n = max_n - k;
          report.entries[n - 1] = compute_entry(p, q, n, cs);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return report;
}

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::ordered_json to_json(const SeriesReport& report) {
  nlohmann::ordered_json out;
  out["class_bound"] = report.class_bound;
  auto series = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json entry;
    entry["n"] = e.n;
    entry["gamma_rank"] = e.gamma.rank();
    entry["delta_rank"] = e.delta.rank();
    auto divisors = nlohmann::ordered_json::array();
    for (const auto& d : e.quotient.divisors) divisors.push_back(integer_json(d));
    entry["quotient"] = {{"divisors", divisors}, {"free_rank", e.quotient.free_rank}};
    nlohmann::ordered_json checks;
    checks["theorem1"] = e.two_delta_in_gamma;
    checks["corollary"] = e.corollary ? nlohmann::ordered_json(*e.corollary) : nlohmann::ordered_json(nullptr);
    checks["sjogren"] = e.sjogren_holds;
    entry["checks"] = checks;
    series.push_back(entry);
  }
  out["series"] = series;
  return out;
}

std::string to_text(const SeriesReport& report) {
  std::ostringstream os;
  os << "class bound " << report.class_bound << "\n";
  for (const auto& e : report.entries) {
    os << "n=" << e.n << "  gamma_rank=" << e.gamma.rank() << "  delta_rank=" << e.delta.rank() << "  delta/gamma=";
    if (e.quotient.trivial()) os << "0";
    bool first = true;
    for (const auto& d : e.quotient.divisors) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    if (e.quotient.free_rank) os << (first ? "" : " + ") << "Z^" << e.quotient.free_rank;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    os << "  2delta<=gamma=" << yn(e.two_delta_in_gamma);
    os << "  corollary=" << (e.corollary ? yn(*e.corollary) : "n/a");
    os << "  sjogren=" << yn(e.sjogren_holds) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

CheckResult check_theorem1(const Presentation& p, std::size_t n, std::size_t class_bound) {
  auto q = nilpotent_quotient(p, class_bound);
  return multiple_contained(delta_n(p, q, n), gamma_n(q, n), 2);
}

bool check_corollary(const Presentation& p, std::size_t n, std::size_t class_bound) {
  auto q = nilpotent_quotient(p, class_bound);
  return corollary_holds(q, delta_n(p, q, n), n);
}

SjogrenConstant sjogren(std::size_t n) {
  if (n < 2) throw OutOfRange("Sjogren constant needs n >= 2");
  SjogrenConstant s;
  s.n = n;
  s.c_n = 1;
  Integer b = 1;
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    mpz_lcm_ui(b.get_mpz_t(), b.get_mpz_t(), k);
    s.b.push_back(b);
    Integer binom, power;
    mpz_bin_uiui(binom.get_mpz_t(), n - 2, k);
    mpz_pow_ui(power.get_mpz_t(), b.get_mpz_t(), binom.get_ui());
    s.c_n *= power;
  }
  return s;
}

CheckResult check_sjogren(const Presentation& p, std::size_t n, std::size_t class_bound) {
  auto q = nilpotent_quotient(p, class_bound);
  const Integer c = n >= 2 ? sjogren(n).c_n : Integer(1);
  return multiple_contained(delta_n(p, q, n), gamma_n(q, n), c);
}

Lemma2Result check_lemma2(const Presentation& p, std::size_t n, std::size_t class_bound) {
  std::optional<PreabelianForm> form = p.preabelian();
  if (!form) form = detect_preabelian(p);
  if (!form) throw NotPreabelian("lemma 2 needs a pre-abelian presentation");
  if (n < 1 || n > class_bound + 1) throw OutOfRange("lemma 2: n must lie in 1..class bound + 1");
  const std::size_t m = p.generator_count();
  const std::size_t D = class_bound;
  auto ctx = TruncatedContext::get(m, D);

  std::vector<Poly> commutators;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      commutators.push_back(commutator(Poly::generator(static_cast<Letter>(i), D),
                                       Poly::generator(static_cast<Letter>(j), D), D));
  const std::vector<Poly> relators = relator_polys(p, D);

  // s: two-sided ideal generated by S = F' + R; varpi s = sum_j X_j s.
  std::vector<SparseVector> seeds;
  for (const auto& c : commutators) seeds.push_back(ctx->assoc_coords(c));
  for (const auto& r : relators) seeds.push_back(ctx->assoc_coords(r));
  Echelon s = assoc_closure(*ctx, seeds);
  Echelon ws(ctx->assoc_dim());
  for (const auto& row : s.rows())
    for (std::size_t j = 0; j < m; ++j) ws.insert(ctx->left_multiply(j, row));

  std::vector<SparseVector> images;
  for (std::size_t i = 0; i < ctx->lie_dim(); ++i) images.push_back(ctx->embedding(i));
  const SubmoduleBasis m_lhs = pullback(images, ws);

  // [F', S] is the Lie ideal generated by [b_u, g], u of degree >= 2, g generating S.
  std::vector<SparseVector> fs_seeds;
  for (std::size_t u = ctx->lie().offset(2); u < ctx->lie_dim(); ++u) {
    if (ctx->lie().degree_of(u) >= D) break;
    for (const std::vector<Poly>* gens : std::array<const std::vector<Poly>*, 2>{&commutators, &relators})
      for (const auto& g : *gens) fs_seeds.push_back(ctx->lie_coords(commutator(ctx->lie().bracketing(u), g, D)));
  }
  Echelon rhs = lie_closure(*ctx, fs_seeds);
  // e_i [X_i, X_j] for i > j
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Poly c = commutator(Poly::generator(static_cast<Letter>(i), D), Poly::generator(static_cast<Letter>(j), D), D);
      c *= form->e[i];
      rhs.insert(ctx->lie_coords(c));
    }
  const SubmoduleBasis m_rhs = rhs.hnf();

  Echelon wide = ws;
  for (std::size_t k = ctx->monomials().offset(n); k < ctx->assoc_dim(); ++k)
    wide.insert(SparseVector{{static_cast<std::uint32_t>(k), Integer(1)}});
  const SubmoduleBasis lhs_iii = pullback(images, wide);
  const SubmoduleBasis rhs_iii = module_sum(gamma_free(n, ctx).basis, m_rhs);

  return {m_lhs == m_rhs, lhs_iii == rhs_iii};
}

}  // namespace liedim
