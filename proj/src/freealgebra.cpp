#include "liedim/freealgebra.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "liedim/errors.hpp"

namespace liedim {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Letter> w(letters_);
  w.insert(w.end(), other.letters_.begin(), other.letters_.end());
  return Monomial(std::move(w));
}

Monomial Monomial::suffix(std::size_t from) const {
  return Monomial(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()));
}

Monomial Monomial::prefix(std::size_t length) const {
  return Monomial(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

std::string generator_name(std::size_t index, const std::vector<std::string>& names) {
  if (index < names.size()) return names[index];
  return "x" + std::to_string(index);
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i && !names.empty()) out += ' ';
    out += generator_name(letters_[i], names);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::generator(Letter g, std::size_t trunc_degree) { return term(Monomial{g}, 1, trunc_degree); }

Poly Poly::term(const Monomial& m, const Integer& coeff, std::size_t trunc_degree) {
  Poly p(trunc_degree);
  p.add_term(m, coeff);
  return p;
}

Integer Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::size_t Poly::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::size_t Poly::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

std::size_t Poly::max_letter() const {
  std::size_t out = 0;
  for (const auto& [m, c] : terms_)
    for (Letter l : m.letters()) out = std::max<std::size_t>(out, l);
  return out;
}

void Poly::add_term(const Monomial& m, const Integer& coeff) {
  if (m.degree() > trunc_ || sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly Poly::truncated(std::size_t degree) const {
  Poly out(degree);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Integer& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer a = abs(c);
    if (first) os << (sgn(c) < 0 ? "-" : "");
    else os << (sgn(c) < 0 ? " - " : " + ");
    if (a != 1 || m.is_unit()) os << a << (m.is_unit() ? "" : "*");
    if (!m.is_unit()) os << m.to_string(names);
    first = false;
  }
  return os.str();
}

Poly multiply(const Poly& p, const Poly& q, std::size_t degree) {
  Poly out(degree);
  for (const auto& [a, ca] : p.terms()) {
    if (a.degree() > degree) break;
    for (const auto& [b, cb] : q.terms()) {
      if (a.degree() + b.degree() > degree) break;
      out.add_term(a * b, ca * cb);
    }
  }
  return out;
}

Poly commutator(const Poly& p, const Poly& q, std::size_t degree) {
  return multiply(p, q, degree) - multiply(q, p, degree);
}

// ---------------------------------------------------------------------------
// Lyndon words

bool is_lyndon(const Monomial& w) {
  const auto& s = w.letters();
  const std::size_t n = s.size();
  if (n == 0) return false;
  for (std::size_t r = 1; r < n; ++r) {
    // compare w with its rotation starting at r
    for (std::size_t i = 0; i < n; ++i) {
      Letter a = s[i];
      Letter b = s[(r + i) % n];
      if (a < b) break;
      if (a > b) return false;
      if (i + 1 == n) return false;  // equal to a proper rotation: periodic
    }
  }
  return true;
}

std::pair<Monomial, Monomial> standard_factorization(const Monomial& w) {
  if (w.degree() < 2) return {};
  for (std::size_t i = 1; i < w.degree(); ++i) {
    Monomial v = w.suffix(i);
    if (is_lyndon(v)) return {w.prefix(i), v};
  }
  throw std::logic_error("standard_factorization: word has no proper Lyndon suffix");
}

std::vector<LyndonWord> lyndon_words(std::size_t generators, std::size_t degree) {
  std::vector<LyndonWord> out;
  if (generators == 0 || degree == 0) return out;
  const int top = static_cast<int>(generators) - 1;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (w.size() == degree) {
      Monomial word(std::vector<Letter>(w.begin(), w.end()));
      auto [u, v] = standard_factorization(word);
      out.push_back(LyndonWord{std::move(word), std::move(u), std::move(v)});
    }
    const std::size_t len = w.size();
    while (w.size() < degree) w.push_back(w[w.size() - len]);
    while (!w.empty() && w.back() == top) w.pop_back();
  }
  return out;
}

namespace {

int mobius(std::size_t n) {
  int result = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

Integer witt_dimension(std::size_t generators, std::size_t degree) {
  if (degree == 0) return 0;
  Integer total = 0;
  for (std::size_t e = 1; e <= degree; ++e) {
    if (degree % e) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), generators, degree / e);
    total += mobius(e) * p;
  }
  return total / static_cast<unsigned long>(degree);
}

Poly bracketing(const Monomial& w) {
  const std::size_t d = w.degree();
  if (d == 0) throw MalformedExpr("bracketing of the empty word");
  if (d == 1) return Poly::generator(w[0], 1);
  auto [u, v] = standard_factorization(w);
  return commutator(bracketing(u), bracketing(v), d);
}

Poly bracketing(const LyndonWord& w) { return bracketing(w.word); }

// ---------------------------------------------------------------------------
// LieExpr

LieExpr LieExpr::generator(std::size_t index) {
  LieExpr e;
  e.kind_ = Kind::Generator;
  e.gen_ = index;
  return e;
}

LieExpr LieExpr::sum(std::vector<Integer> coefficients, std::vector<LieExpr> terms) {
  if (coefficients.size() != terms.size()) throw MalformedExpr("sum: coefficient count mismatch");
  LieExpr e;
  e.coeffs_ = std::move(coefficients);
  e.children_ = std::move(terms);
  return e;
}

LieExpr LieExpr::bracket(std::vector<LieExpr> entries) {
  if (entries.size() < 2) throw EmptyBracket("bracket needs at least two entries");
  LieExpr e;
  e.kind_ = Kind::Bracket;
  e.children_ = std::move(entries);
  return e;
}

LieExpr LieExpr::scaled(const Integer& k, LieExpr e) { return sum({k}, {std::move(e)}); }

std::optional<std::size_t> LieExpr::max_generator() const {
  if (kind_ == Kind::Generator) return gen_;
  std::optional<std::size_t> out;
  for (const auto& c : children_)
    if (auto g = c.max_generator()) out = std::max(out.value_or(0), *g);
  return out;
}

LieExpr LieExpr::substituted(const std::vector<std::vector<Integer>>& images) const {
  if (kind_ == Kind::Generator) {
    if (gen_ >= images.size()) throw MalformedExpr("substitution: generator index out of range");
    std::vector<Integer> cs;
    std::vector<LieExpr> ts;
    for (std::size_t l = 0; l < images[gen_].size(); ++l)
      if (sgn(images[gen_][l]) != 0) {
        cs.push_back(images[gen_][l]);
        ts.push_back(generator(l));
      }
    if (cs.size() == 1 && cs[0] == 1) return ts[0];
    return sum(std::move(cs), std::move(ts));
  }
  LieExpr out = *this;
  for (auto& c : out.children_) c = c.substituted(images);
  return out;
}

LieExpr operator+(const LieExpr& a, const LieExpr& b) {
  LieExpr out = a.kind_ == LieExpr::Kind::Sum ? a : LieExpr::sum({1}, {a});
  if (b.kind_ == LieExpr::Kind::Sum) {
    out.coeffs_.insert(out.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
    out.children_.insert(out.children_.end(), b.children_.begin(), b.children_.end());
  } else {
    out.coeffs_.emplace_back(1);
    out.children_.push_back(b);
  }
  return out;
}

LieExpr operator-(const LieExpr& a, const LieExpr& b) { return a + Integer(-1) * b; }

LieExpr operator*(const Integer& k, const LieExpr& a) {
  if (a.kind_ == LieExpr::Kind::Sum) {
    LieExpr out = a;
    for (auto& c : out.coeffs_) c *= k;
    return out;
  }
  return LieExpr::scaled(k, a);
}

bool operator==(const LieExpr& a, const LieExpr& b) {
  if (a.kind_ != b.kind_ || a.gen_ != b.gen_ || a.children_.size() != b.children_.size() ||
      a.coeffs_.size() != b.coeffs_.size())
    return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  for (std::size_t i = 0; i < a.children_.size(); ++i)
    if (!(a.children_[i] == b.children_[i])) return false;
  return true;
}

LieExpr lie_bracket(std::vector<LieExpr> entries) { return LieExpr::bracket(std::move(entries)); }

LieExpr bracketing_expr(const Monomial& w) {
  if (w.degree() == 0) throw MalformedExpr("bracketing of the empty word");
  if (w.degree() == 1) return LieExpr::generator(w[0]);
  auto [u, v] = standard_factorization(w);
  return LieExpr::bracket({bracketing_expr(u), bracketing_expr(v)});
}

Poly eval_lie(const LieExpr& e, std::size_t generators, std::size_t degree) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      if (e.generator_index() >= generators)
        throw MalformedExpr("generator index " + std::to_string(e.generator_index()) + " out of range");
      return Poly::generator(static_cast<Letter>(e.generator_index()), degree);
    case LieExpr::Kind::Sum: {
      Poly out(degree);
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (sgn(e.coefficients()[i]) == 0) continue;
        Poly t = eval_lie(e.children()[i], generators, degree);
        out += t *= e.coefficients()[i];
      }
      return out;
    }
    case LieExpr::Kind::Bracket: {
      if (e.children().size() < 2) throw MalformedExpr("bracket with fewer than two entries");
      Poly acc = eval_lie(e.children()[0], generators, degree);
      for (std::size_t i = 1; i < e.children().size(); ++i)
        acc = commutator(acc, eval_lie(e.children()[i], generators, degree), degree);
      return acc;
    }
  }
  throw MalformedExpr("unknown expression node");
}

// ---------------------------------------------------------------------------
// MonomialIndex

MonomialIndex::MonomialIndex(std::size_t generators, std::size_t degree) : m_(generators), d_(degree) {
  if (generators == 0) throw OutOfRange("need at least one generator");
  powers_.push_back(1);
  offsets_.push_back(0);
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 31;
  for (std::size_t d = 1; d <= degree; ++d) {
    if (powers_.back() > kLimit / generators) throw OutOfRange("truncated algebra is too large");
    powers_.push_back(powers_.back() * generators);
    offsets_.push_back(offsets_.back() + powers_.back());
    if (offsets_.back() > kLimit) throw OutOfRange("truncated algebra is too large");
  }
}

std::size_t MonomialIndex::index(const Monomial& w) const {
  const std::size_t d = w.degree();
  if (d == 0 || d > d_) throw OutOfRange("monomial degree outside 1..D");
  std::uint64_t code = 0;
  for (Letter l : w.letters()) {
    if (l >= m_) throw OutOfRange("monomial letter out of range");
    code = code * m_ + l;
  }
  return offsets_[d - 1] + code;
}

std::size_t MonomialIndex::degree_of(std::size_t index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<std::size_t>(it - offsets_.begin());
}

Monomial MonomialIndex::monomial(std::size_t index) const {
  if (index >= dimension()) throw OutOfRange("monomial index out of range");
  const std::size_t d = degree_of(index);
  std::uint64_t code = index - offsets_[d - 1];
  std::vector<Letter> w(d);
  for (std::size_t i = d; i-- > 0;) {
    w[i] = static_cast<Letter>(code % m_);
    code /= m_;
  }
  return Monomial(std::move(w));
}

SparseVector MonomialIndex::coordinates(const Poly& p) const {
  SparseVector out;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_unit()) throw MalformedExpr("constant term inside augmentation-ideal coordinates");
    if (m.degree() > d_) continue;
    out.emplace_back(static_cast<std::uint32_t>(index(m)), c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Poly MonomialIndex::poly(const SparseVector& v) const {
  Poly p(d_);
  for (const auto& [i, c] : v) p.add_term(monomial(i), c);
  return p;
}

// ---------------------------------------------------------------------------
// LieBasis

LieBasis::LieBasis(std::size_t generators, std::size_t degree) : m_(generators), d_(degree) {
  if (generators == 0) throw OutOfRange("need at least one generator");
  MonomialIndex sizes(generators, degree);  // size guard
  offsets_.push_back(0);
  lookup_.emplace_back();  // degree 0 unused
  for (std::size_t d = 1; d <= degree; ++d) {
    auto ws = lyndon_words(generators, d);
    std::vector<std::int32_t> table(sizes.power(d), -1);
    for (auto& w : ws) {
      std::uint64_t code = 0;
      for (Letter l : w.word.letters()) code = code * generators + l;
      table[code] = static_cast<std::int32_t>(words_.size());
      words_.push_back(std::move(w));
    }
    lookup_.push_back(std::move(table));
    offsets_.push_back(words_.size());
  }
  factors_.resize(words_.size());
  polys_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const LyndonWord& w = words_[i];
    if (w.word.degree() == 1) {
      polys_.push_back(Poly::generator(w.word[0], degree));
    } else {
      std::size_t u = *index(w.left);
      std::size_t v = *index(w.right);
      factors_[i] = {u, v};
      polys_.push_back(commutator(polys_[u], polys_[v], degree));
    }
    // Leading-term triangularity: b(w) = w + (lex-larger words of the same degree).
    const auto& terms = polys_.back().terms();
    if (terms.empty() || terms.begin()->first != w.word || terms.begin()->second != 1)
      throw std::logic_error("Lyndon bracketing is not unitriangular");
  }
}

std::optional<std::size_t> LieBasis::index(const Monomial& w) const {
  const std::size_t d = w.degree();
  if (d == 0 || d > d_) return std::nullopt;
  std::uint64_t code = 0;
  for (Letter l : w.letters()) {
    if (l >= m_) return std::nullopt;
    code = code * m_ + l;
  }
  std::int32_t i = lookup_[d][code];
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

std::optional<LieVector> LieBasis::try_coordinates(const Poly& p) const {
  std::map<Monomial, Integer> work;
  for (const auto& [m, c] : p.terms()) {
    if (m.is_unit()) return std::nullopt;
    if (m.degree() <= d_) work.emplace(m, c);
  }
  LieVector out{m_, d_, IntVector(words_.size())};
  while (!work.empty()) {
    auto it = work.begin();
    auto idx = index(it->first);
    if (!idx) return std::nullopt;
    const Integer c = it->second;
    out.coords[*idx] = c;
    for (const auto& [m, v] : polys_[*idx].terms()) {
      auto [jt, inserted] = work.try_emplace(m, 0);
      jt->second -= c * v;
      if (sgn(jt->second) == 0) work.erase(jt);
    }
  }
  return out;
}

LieVector LieBasis::coordinates(const Poly& p) const {
  auto v = try_coordinates(p);
  if (!v) throw NotLieElement("polynomial is not in the span of the Lyndon bracketings");
  return *v;
}

Poly LieBasis::evaluate(const LieVector& v) const {
  if (v.coords.size() != words_.size()) throw DimensionMismatch("Lie vector length != basis size");
  Poly out(d_);
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (sgn(v.coords[i]) == 0) continue;
    Poly t = polys_[i];
    out += t *= v.coords[i];
  }
  return out;
}

std::optional<LieVector> lie_coordinates(const Poly& p, const LieBasis& basis) {
  return basis.try_coordinates(p);
}

LieVector lie_coordinates(const Poly& p, std::size_t generators, std::size_t degree) {
  return LieBasis(generators, degree).coordinates(p);
}

Poly adjoint_action(const Poly& x, const Monomial& w, std::size_t generators, std::size_t degree) {
  LieBasis basis(generators, degree);
  if (!basis.try_coordinates(x)) throw NotLieElement("adjoint action needs a Lie element");
  Poly acc = x.truncated(degree);
  for (Letter l : w.letters()) {
    if (l >= generators) throw OutOfRange("adjoint action letter out of range");
    acc = commutator(acc, Poly::generator(l, degree), degree);
  }
  return acc;
}

SubmoduleBasis lie_submodule_to_poly_coords(const SubmoduleBasis& b, const LieBasis& basis) {
  if (b.ambient_rank() != basis.size()) throw DimensionMismatch("submodule is not over this Lie basis");
  MonomialIndex index(basis.generators(), basis.degree());
  Echelon e(index.dimension());
  for (std::size_t i = 0; i < b.rank(); ++i) {
    LieVector v{basis.generators(), basis.degree(), b.row(i)};
    e.insert(index.coordinates(basis.evaluate(v)));
  }
  return e.hnf();
}

}  // namespace liedim
