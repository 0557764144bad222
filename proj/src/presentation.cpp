#include "liedim/presentation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "liedim/errors.hpp"

namespace liedim {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

bool divides(const Integer& a, const Integer& b) {
  if (sgn(a) == 0) return sgn(b) == 0;
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

void check_chain(const std::vector<Integer>& e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (sgn(e[i]) < 0) throw NotPreabelian("negative entry in the e-chain");
    if (i + 1 < e.size() && !divides(e[i], e[i + 1])) throw NotPreabelian("e-chain is not a divisor chain");
  }
}

bool is_zero_vector(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::vector<std::string> generators, std::vector<LieExpr> relators)
    : names_(std::move(generators)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw BadParameters("invalid generator name '" + n + "'");
    if (!seen.insert(n).second) throw BadParameters("duplicate generator name '" + n + "'");
  }
  for (auto& r : relators) add_relator(std::move(r));
}

std::optional<std::size_t> Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

void Presentation::add_relator(LieExpr r) {
  if (auto g = r.max_generator(); g && *g >= names_.size())
    throw MalformedExpr("relator mentions generator index " + std::to_string(*g));
  relators_.push_back(std::move(r));
}

void Presentation::set_preabelian(PreabelianForm form) {
  if (form.e.size() != names_.size()) throw NotPreabelian("e-chain length differs from generator count");
  if (form.xi.size() < names_.size()) throw NotPreabelian("need one xi per generator");
  check_chain(form.e);
  for (const auto& x : form.xi)
    if (!is_zero_vector(linear_part(x, names_.size()))) throw NotPreabelian("xi has a degree-one part");
  preabelian_ = std::move(form);
}

bool operator==(const Presentation& a, const Presentation& b) {
  if (a.names_ != b.names_ || a.relators_ != b.relators_) return false;
  if (a.preabelian_.has_value() != b.preabelian_.has_value()) return false;
  if (!a.preabelian_) return true;
  return a.preabelian_->e == b.preabelian_->e && a.preabelian_->xi == b.preabelian_->xi;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line, std::size_t column0,
             const std::unordered_map<std::string, std::size_t>& names)
      : s_(text), line_(line), col0_(column0), names_(names) {}

  LieExpr parse_all() {
    LieExpr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col0_ + pos_); }

  std::string where() const {
    return "line " + std::to_string(line_) + ", column " + std::to_string(col0_ + pos_) + ": ";
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  LieExpr expr() {
    std::vector<Integer> coeffs;
    std::vector<LieExpr> terms;
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
    }
    for (;;) {
      auto [c, t] = term();
      coeffs.push_back(negative ? Integer(-c) : c);
      terms.push_back(std::move(t));
      if (peek('+')) negative = false;
      else if (peek('-')) negative = true;
      else break;
      ++pos_;
    }
    if (terms.size() == 1 && coeffs[0] == 1) return std::move(terms[0]);
    return LieExpr::sum(std::move(coeffs), std::move(terms));
  }

  std::pair<Integer, LieExpr> term() {
    skip();
    Integer c = 1;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      c = integer();
      if (peek('*')) ++pos_;
    }
    return {c, atom()};
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Integer integer() {
    Integer base(digits());
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      const std::size_t at = pos_;
      Integer exp(digits());
      if (exp > 1 << 16) {
        pos_ = at;
        fail("exponent too large");
      }
      Integer out;
      mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
      return out;
    }
    return base;
  }

  LieExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of line");
    const char ch = s_[pos_];
    if (ch == '[') {
      ++pos_;
      if (peek(']')) throw EmptyBracket(where() + "empty bracket");
      std::vector<LieExpr> entries{expr()};
      while (peek(',')) {
        ++pos_;
        entries.push_back(expr());
      }
      if (!peek(']')) fail("expected ',' or ']'");
      if (entries.size() < 2) throw EmptyBracket(where() + "bracket needs at least two entries");
      ++pos_;
      return LieExpr::bracket(std::move(entries));
    }
    if (ch == '(') {
      ++pos_;
      LieExpr e = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto it = names_.find(name);
      if (it == names_.end()) {
        pos_ = start;
        throw UnknownGenerator(where() + "unknown generator '" + name + "'");
      }
      return LieExpr::generator(it->second);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
  const std::unordered_map<std::string, std::size_t>& names_;
};

}  // namespace

Presentation parse(std::string_view text) {
  std::optional<Presentation> out;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    if (b == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    std::string_view body = line.substr(b);
    constexpr std::string_view kGen = "generators:";
    constexpr std::string_view kRel = "relator:";
    if (body.starts_with(kGen)) {
      if (out) throw SyntaxError("repeated generators header", line_no, b + 1);
      std::vector<std::string> names;
      std::size_t p = b + kGen.size();
      for (;;) {
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
        if (p >= line.size()) break;
        std::size_t q = p;
        while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
        std::string name(line.substr(p, q - p));
        if (!is_identifier(name)) throw SyntaxError("invalid generator name '" + name + "'", line_no, p + 1);
        if (!index.emplace(name, names.size()).second)
          throw SyntaxError("duplicate generator '" + name + "'", line_no, p + 1);
        names.push_back(std::move(name));
        p = q;
      }
      out.emplace(std::move(names), std::vector<LieExpr>{});
    } else if (body.starts_with(kRel)) {
      if (!out) throw SyntaxError("relator before the generators header", line_no, b + 1);
      const std::size_t col = b + kRel.size();
      ExprParser parser(line.substr(col), line_no, col + 1, index);
      out->add_relator(parser.parse_all());
    } else {
      throw SyntaxError("expected 'generators:' or 'relator:'", line_no, b + 1);
    }
    if (end == text.size()) break;
  }
  if (!out) throw SyntaxError("missing generators header", line_no ? line_no : 1, 1);
  return std::move(*out);
}

Presentation parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

std::string expr_to_string(const LieExpr& e, const std::vector<std::string>& names) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return generator_name(e.generator_index(), names);
    case LieExpr::Kind::Bracket: {
      std::string out = "[";
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += ", ";
        out += expr_to_string(e.children()[i], names);
      }
      return out + "]";
    }
    case LieExpr::Kind::Sum:
      break;
  }
  if (e.children().empty()) return "0*" + generator_name(0, names);
  std::string out;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    const LieExpr& t = e.children()[i];
    std::string s = expr_to_string(t, names);
    if (t.kind() == LieExpr::Kind::Sum) s = "(" + s + ")";
    const Integer& c = e.coefficients()[i];
    const Integer a = abs(c);
    if (i == 0) out += sgn(c) < 0 ? "-" : "";
    else out += sgn(c) < 0 ? " - " : " + ";
    if (a != 1) out += a.get_str() + "*";
    out += s;
  }
  return out;
}

std::string serialize(const Presentation& p) {
  std::string out = "generators:";
  for (const auto& n : p.generators()) out += " " + n;
  out += "\n";
  for (const auto& r : p.relators()) {
    if (r.is_empty_sum()) continue;
    out += "relator: " + expr_to_string(r, p.generators()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pre-abelian form

IntVector linear_part(const LieExpr& e, std::size_t generators) {
  IntVector out(generators);
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      if (e.generator_index() >= generators) throw MalformedExpr("generator index out of range");
      out[e.generator_index()] = 1;
      break;
    case LieExpr::Kind::Sum:
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (sgn(e.coefficients()[i]) == 0) continue;
        IntVector c = linear_part(e.children()[i], generators);
        for (std::size_t j = 0; j < generators; ++j) out[j] += e.coefficients()[i] * c[j];
      }
      break;
    case LieExpr::Kind::Bracket:
      break;
  }
  return out;
}

LieExpr derived_part(const LieExpr& e) {
  switch (e.kind()) {
    case LieExpr::Kind::Generator:
      return LieExpr::zero();
    case LieExpr::Kind::Bracket:
      return e;
    case LieExpr::Kind::Sum:
      break;
  }
  std::vector<Integer> cs;
  std::vector<LieExpr> ts;
  for (std::size_t i = 0; i < e.children().size(); ++i) {
    if (sgn(e.coefficients()[i]) == 0) continue;
    LieExpr d = derived_part(e.children()[i]);
    if (d.is_empty_sum()) continue;
    cs.push_back(e.coefficients()[i]);
    ts.push_back(std::move(d));
  }
  if (ts.size() == 1 && cs[0] == 1) return ts[0];
  return LieExpr::sum(std::move(cs), std::move(ts));
}

IntMatrix abelianized_relations(const Presentation& p) {
  const std::size_t m = p.generator_count();
  IntMatrix a(p.relators().size(), m);
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    IntVector row = linear_part(p.relators()[i], m);
    for (std::size_t j = 0; j < m; ++j) a(i, j) = row[j];
  }
  return a;
}

std::optional<PreabelianForm> detect_preabelian(const Presentation& p) {
  const std::size_t m = p.generator_count();
  const std::size_t k = p.relators().size();
  IntMatrix a = abelianized_relations(p);
  PreabelianForm form;
  form.e.assign(m, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (sgn(a(i, j)) == 0) continue;
      if (i != j || sgn(a(i, j)) < 0) return std::nullopt;
      form.e[i] = a(i, j);
    }
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!divides(form.e[i], form.e[i + 1])) return std::nullopt;
  for (const auto& r : p.relators()) form.xi.push_back(derived_part(r));
  while (form.xi.size() < m) form.xi.push_back(LieExpr::zero());
  return form;
}

Presentation preabelianize(const Presentation& p) {
  if (auto form = detect_preabelian(p)) {
    Presentation out = p;
    out.set_preabelian(std::move(*form));
    return out;
  }
  const std::size_t m = p.generator_count();
  const std::size_t k = p.relators().size();
  const IntMatrix a = abelianized_relations(p);
  const SmithForm s = snf(a);

  // Old generators in terms of new ones: X = V Y.
  const bool renamed = !(s.right == IntMatrix::identity(m));
  std::vector<LieExpr> substituted;
  if (renamed) {
    std::vector<std::vector<Integer>> images(m, std::vector<Integer>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) images[i][j] = s.right(i, j);
    for (const auto& r : p.relators()) substituted.push_back(r.substituted(images));
  } else {
    substituted = p.relators();
  }

  PreabelianForm form;
  form.e.assign(m, 0);
  for (std::size_t i = 0; i < std::min(k, m); ++i) form.e[i] = s.diagonal[i];
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> cs;
    std::vector<LieExpr> ts;
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(s.left(i, j)) != 0) {
        cs.push_back(s.left(i, j));
        ts.push_back(substituted[j]);
      }
    LieExpr combined = ts.size() == 1 && cs[0] == 1 ? ts[0] : LieExpr::sum(std::move(cs), std::move(ts));
    IntVector lin = linear_part(combined, m);
    for (std::size_t j = 0; j < m; ++j)
      if (lin[j] != (i == j ? form.e[j] : Integer(0)))
        throw std::logic_error("preabelianize: transformed relator has unexpected linear part");
    form.xi.push_back(derived_part(combined));
  }
  while (form.xi.size() < m) form.xi.push_back(LieExpr::zero());

  std::vector<std::string> names = p.generators();
  if (renamed)
    for (std::size_t i = 0; i < m; ++i) names[i] = "y" + std::to_string(i + 1);
  Presentation out(std::move(names), {});
  for (std::size_t i = 0; i < form.xi.size(); ++i) {
    const LieExpr& xi = form.xi[i];
    const bool linear = i < m && sgn(form.e[i]) != 0;
    if (!linear) {
      if (!xi.is_empty_sum()) out.add_relator(xi);
      continue;
    }
    LieExpr lead = form.e[i] == 1 ? LieExpr::generator(i) : LieExpr::scaled(form.e[i], LieExpr::generator(i));
    if (xi.is_empty_sum()) out.add_relator(std::move(lead));
    else out.add_relator(LieExpr::sum({form.e[i], 1}, {LieExpr::generator(i), xi}));
  }
  out.set_preabelian(std::move(form));
  return out;
}

Presentation instantiate_metabelian(const Presentation& p, std::size_t degree) {
  Presentation out = p;
  const std::size_t m = p.generator_count();
  std::vector<Monomial> words;
  for (std::size_t d = 2; d + 2 <= degree; ++d)
    for (auto& w : lyndon_words(m, d)) words.push_back(std::move(w.word));
  std::optional<PreabelianForm> form = p.preabelian();
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (words[i].degree() + words[j].degree() > degree) continue;
      LieExpr r = LieExpr::bracket({bracketing_expr(words[i]), bracketing_expr(words[j])});
      if (form) form->xi.push_back(r);
      out.add_relator(std::move(r));
    }
  if (form) out.set_preabelian(std::move(*form));
  return out;
}

std::vector<Poly> relator_polys(const Presentation& p, std::size_t degree) {
  std::vector<Poly> out;
  out.reserve(p.relators().size());
  for (const auto& r : p.relators()) out.push_back(eval_lie(r, p.generator_count(), degree));
  return out;
}

}  // namespace liedim
