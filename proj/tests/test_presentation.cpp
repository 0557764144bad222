#include <random>

#include "doctest.h"
#include "liedim/errors.hpp"
#include "liedim/presentation.hpp"

using namespace liedim;

namespace {

LieExpr g(std::size_t i) { return LieExpr::generator(i); }

std::string random_expr(std::mt19937& rng, const std::vector<std::string>& names, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
  std::uniform_int_distribution<std::size_t> name(0, names.size() - 1);
  std::uniform_int_distribution<int> coef(1, 9);
  switch (pick(rng)) {
    case 0:
    case 1:
      return names[name(rng)];
    case 2:
      return "[" + random_expr(rng, names, depth - 1) + ", " + random_expr(rng, names, depth - 1) + "]";
    case 3:
      return "[" + random_expr(rng, names, depth - 1) + ", " + random_expr(rng, names, depth - 1) + ", " +
             random_expr(rng, names, depth - 1) + "]";
    default:
      return std::to_string(coef(rng)) + "*(" + random_expr(rng, names, depth - 1) + " - " +
             random_expr(rng, names, depth - 1) + ")";
  }
}

bool in_derived(const LieExpr& xi, std::size_t m) {
  const Poly p = eval_lie(xi, m, 6);
  for (const auto& [mono, c] : p.terms())
    if (mono.degree() < 2) return false;
  return true;
}

std::vector<Integer> nonunit_divisors(const IntMatrix& a) {
  std::vector<Integer> out;
  for (auto& d : smith_diagonal(a))
    if (d != 1) out.push_back(d);
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  auto p = parse("generators: a b\nrelator: [a,b]");
  CHECK(p.generator_count() == 2);
  REQUIRE(p.relators().size() == 1);
  CHECK(p.relators()[0] == LieExpr::bracket({g(0), g(1)}));

  auto q = parse("generators: r\nrelator: 2^9 * r\n");
  REQUIRE(q.relators().size() == 1);
  CHECK(q.relators()[0] == LieExpr::scaled(512, g(0)));

  auto t = parse("generators: a b c\nrelator: [a,b,c]");
  CHECK(t.relators()[0] == LieExpr::bracket({g(0), g(1), g(2)}));
  CHECK(eval_lie(t.relators()[0], 3, 3) == eval_lie(LieExpr::bracket({LieExpr::bracket({g(0), g(1)}), g(2)}), 3, 3));
}

TEST_CASE("parse handles comments, signs, and parentheses") {
  auto p = parse(
      "# header comment\n"
      "generators: a b   # two of them\n"
      "\n"
      "relator: -a + 2 b - 3*[a, (a - b)]\n"
      "relator: 2^3*(a+b)\n");
  REQUIRE(p.relators().size() == 2);
  CHECK(eval_lie(p.relators()[0], 2, 2) ==
        eval_lie(LieExpr::sum({-1, 2, -3}, {g(0), g(1), LieExpr::bracket({g(0), g(0) - g(1)})}), 2, 2));
  CHECK(linear_part(p.relators()[1], 2) == IntVector{8, 8});
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("generators: a b\nrelator: [a, b");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 15);
  }
  try {
    parse("generators: a\n  relator: a + * a");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 16);
  }
  CHECK_THROWS_AS(parse("relator: a"), SyntaxError);
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("generators: a a"), SyntaxError);
  CHECK_THROWS_AS(parse("generators: a\nrelation: a"), SyntaxError);
  CHECK_THROWS_AS(parse("generators: a\nrelator: b"), UnknownGenerator);
  CHECK_THROWS_AS(parse("generators: a\nrelator: []"), EmptyBracket);
  CHECK_THROWS_AS(parse("generators: a\nrelator: [a]"), EmptyBracket);
  CHECK_THROWS_AS(parse_file("/nonexistent/presentation.lp"), Error);
}

TEST_CASE("serialization is canonical and stable") {
  auto p = parse("generators: a b c\nrelator: 2^9*a  -  4*[b,c,a]+[a,b]\nrelator: -(a + b)\nrelator: [[a,b],c]\n");
  const std::string text = serialize(p);
  CHECK(text ==
        "generators: a b c\n"
        "relator: 512*a - 4*[b, c, a] + [a, b]\n"
        "relator: -(a + b)\n"
        "relator: [[a, b], c]\n");
  CHECK(parse(text) == p);
  CHECK(serialize(parse(text)) == text);

  std::mt19937 rng(3);
  std::vector<std::string> names{"a", "b", "c"};
  for (int t = 0; t < 100; ++t) {
    std::string doc = "generators: a b c\n";
    for (int r = 0; r < 3; ++r) doc += "relator: " + random_expr(rng, names, 3) + "\n";
    auto once = serialize(parse(doc));
    CHECK(serialize(parse(once)) == once);
    CHECK(parse(once) == parse(doc));
  }
}

TEST_CASE("preabelianize examples") {
  auto p = preabelianize(parse("generators: a b\nrelator: 2*a + 3*b + [a,b]"));
  REQUIRE(p.preabelian());
  CHECK(p.preabelian()->e == std::vector<Integer>{1, 0});
  for (const auto& xi : p.preabelian()->xi) CHECK(in_derived(xi, 2));

  auto q0 = parse("generators: a b\nrelator: 2*a\nrelator: 4*b");
  auto q = preabelianize(q0);
  REQUIRE(q.preabelian());
  CHECK(q.preabelian()->e == std::vector<Integer>{2, 4});
  CHECK(q.relators() == q0.relators());
  CHECK(q.generators() == q0.generators());

  auto f = preabelianize(parse("generators: a b c"));
  REQUIRE(f.preabelian());
  CHECK(f.preabelian()->e == std::vector<Integer>{0, 0, 0});
  for (const auto& xi : f.preabelian()->xi) CHECK(xi.is_empty_sum());
}

TEST_CASE("preabelianize keeps the abelianization and produces a valid form") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-8, 8), count(0, 4), gens(1, 3);
  for (int t = 0; t < 60; ++t) {
    const int m = gens(rng);
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    std::string doc = "generators:";
    for (auto& n : names) doc += " " + n;
    doc += "\n";
    const int k = count(rng);
    for (int r = 0; r < k; ++r) {
      std::string clean;
      for (int i = 0; i < m; ++i) {
        int c = coef(rng);
        clean += (i == 0 ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) + std::to_string(std::abs(c)) + "*" + names[i];
      }
      clean += " + [" + names[0] + ", " + random_expr(rng, names, 2) + "]";
      doc += "relator: " + clean + "\n";
    }
    auto p = parse(doc);
    auto q = preabelianize(p);
    REQUIRE(q.preabelian());
    const auto& form = *q.preabelian();
    CHECK(form.e.size() == static_cast<std::size_t>(m));
    for (std::size_t i = 0; i + 1 < form.e.size(); ++i) {
      if (sgn(form.e[i]) == 0) CHECK(sgn(form.e[i + 1]) == 0);
      else CHECK(mpz_divisible_p(form.e[i + 1].get_mpz_t(), form.e[i].get_mpz_t()));
    }
    for (const auto& xi : form.xi) CHECK(in_derived(xi, static_cast<std::size_t>(m)));
    CHECK(nonunit_divisors(abelianized_relations(p)) == nonunit_divisors(abelianized_relations(q)));
    CHECK(detect_preabelian(q).has_value());
  }
}

TEST_CASE("instantiate_metabelian examples") {
  auto two = instantiate_metabelian(parse("generators: a b"), 4);
  CHECK(two.relators().empty());

  auto three = instantiate_metabelian(parse("generators: a b c"), 4);
  REQUIRE(three.relators().size() == 3);
  auto ab = LieExpr::bracket({g(0), g(1)}), ac = LieExpr::bracket({g(0), g(2)}), bc = LieExpr::bracket({g(1), g(2)});
  CHECK(three.relators()[0] == LieExpr::bracket({ab, ac}));
  CHECK(three.relators()[1] == LieExpr::bracket({ab, bc}));
  CHECK(three.relators()[2] == LieExpr::bracket({ac, bc}));

  // m=2, D=5: [x0x1] against the two degree-3 brackets
  auto five = instantiate_metabelian(parse("generators: a b"), 5);
  REQUIRE(five.relators().size() == 2);
  CHECK(five.relators()[0] == LieExpr::bracket({ab, LieExpr::bracket({g(0), ab})}));
  CHECK(five.relators()[1] == LieExpr::bracket({ab, LieExpr::bracket({ab, g(1)})}));
  for (const auto& r : five.relators()) CHECK_FALSE(eval_lie(r, 2, 5).is_zero());

  auto pre = instantiate_metabelian(preabelianize(parse("generators: a b c\nrelator: 2*a")), 4);
  REQUIRE(pre.preabelian());
  CHECK(pre.preabelian()->xi.size() == 6);
}
