#include "liedim/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "liedim/counterexamples.hpp"
#include "liedim/errors.hpp"
#include "liedim/series.hpp"

namespace liedim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string out_path;
  std::string format = "text";
  std::size_t n = 0;
  std::size_t max_n = 0;
  std::optional<std::size_t> class_bound;
  std::size_t degree = 0;
  std::size_t threads = 1;
  bool metabelian = false;
  bool verify = false;
  bool timing = false;
  std::string emit_path;
  std::string claim;
};

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json divisors_json(const ElementaryDivisors& d) {
  Json divs = Json::array();
  for (const auto& x : d.divisors) divs.push_back(integer_json(x));
  return {{"divisors", divs}, {"free_rank", d.free_rank}};
}

std::string vector_text(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

Presentation load(const Options& o, std::size_t class_bound) {
  Presentation p = parse_file(o.file);
  return o.metabelian ? instantiate_metabelian(p, class_bound) : p;
}

int cmd_parse(const Options& o, std::ostream& out) {
  out << serialize(parse_file(o.file));
  return 0;
}

int cmd_preabelianize(const Options& o, std::ostream& out) {
  const std::string text = serialize(preabelianize(parse_file(o.file)));
  if (o.out_path.empty())
    out << text;
  else
    write_file(o.out_path, text);
  return 0;
}

int cmd_series(const Options& o, std::ostream& out) {
  const std::size_t c = o.class_bound.value_or(std::max<std::size_t>(o.max_n, 2) - 1);
  const Presentation p = load(o, c);
  const SeriesReport report = quotient_report(p, o.max_n, c, o.threads);
  if (o.format == "json")
    out << to_json(report).dump(2) << "\n";
  else
    out << to_text(report);
  // Sjogren's bound is universal; theorem 1 and the corollary are claimed for metabelian input only.
  bool ok = true;
  for (const auto& e : report.entries) {
    ok = ok && e.sjogren_holds;
    if (o.metabelian) ok = ok && e.two_delta_in_gamma && e.corollary.value_or(true);
  }
  return ok ? 0 : 1;
}

int cmd_delta(const Options& o, std::ostream& out) {
  const std::size_t c = *o.class_bound;
  const Presentation p = load(o, c);
  const NilpotentQuotient q = nilpotent_quotient(p, c);
  const SubmoduleBasis d = delta_n(p, q, o.n);
  const ElementaryDivisors quotient = quotient_structure(d, gamma_n(q, std::min(o.n, c + 1)));
  if (o.format == "json") {
    Json basis = Json::array();
    for (std::size_t i = 0; i < d.rank(); ++i) basis.push_back(vector_json(d.row(i)));
    Json j;
    j["n"] = o.n;
    j["class_bound"] = c;
    j["ambient_rank"] = d.ambient_rank();
    j["rank"] = d.rank();
    j["basis"] = basis;
    j["quotient"] = divisors_json(quotient);
    out << j.dump(2) << "\n";
  } else {
    out << "delta_" << o.n << " in class " << c << ": rank " << d.rank() << " of " << d.ambient_rank() << "\n";
    for (std::size_t i = 0; i < d.rank(); ++i) out << vector_text(d.row(i)) << "\n";
    out << "delta/gamma divisors:";
    for (const auto& x : quotient.divisors) out << " " << x;
    out << (quotient.divisors.empty() ? " none" : "") << "\n";
  }
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  // corollary needs n <= c, the rest n <= c + 1
  const std::size_t fallback = o.claim == "corollary" ? o.n : std::max<std::size_t>(o.n, 2) - 1;
  const std::size_t c = o.class_bound.value_or(fallback);
  const Presentation p = load(o, c);
  Json j;
  j["claim"] = o.claim;
  j["n"] = o.n;
  j["class_bound"] = c;
  bool holds = false;
  std::optional<IntVector> witness;
  if (o.claim == "theorem1" || o.claim == "sjogren") {
    CheckResult r = o.claim == "theorem1" ? check_theorem1(p, o.n, c) : check_sjogren(p, o.n, c);
    holds = r.holds;
    witness = r.witness;
  } else if (o.claim == "corollary") {
    holds = check_corollary(p, o.n, c);
  } else {
    Lemma2Result r = check_lemma2(p, o.n, c);
    holds = r.part_i && r.part_iii;
    j["part_i"] = r.part_i;
    j["part_iii"] = r.part_iii;
  }
  j["holds"] = holds;
  if (witness) j["witness"] = vector_json(*witness);
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << o.claim << " n=" << o.n << " class=" << c << ": " << (holds ? "holds" : "VIOLATED") << "\n";
    if (j.contains("part_i"))
      out << "  part (i): " << (j["part_i"] ? "holds" : "fails") << "\n  part (iii): " << (j["part_iii"] ? "holds" : "fails") << "\n";
    if (witness) out << "  witness: " << vector_text(*witness) << "\n";
  }
  return holds ? 0 : 1;
}

int cmd_counterexample(const Options& o, std::ostream& out, std::ostream& err) {
  const std::size_t degree = o.degree == 0 ? 2 * o.n - 4 : o.degree;
  if (!o.emit_path.empty()) write_file(o.emit_path, serialize(counterexample::build_Ln(o.n, degree)));
  if (!o.verify) {
    if (o.emit_path.empty()) out << serialize(counterexample::build_Ln(o.n, degree));
    return 0;
  }
  err << "verifying L(" << o.n << ") at degree " << degree << "\n";
  const auto cert = counterexample::verify(o.n, degree);
  out << counterexample::to_json(cert, o.timing).dump(2) << "\n";
  return cert.passed() ? 0 : 1;
}

int cmd_sjogren(const Options& o, std::ostream& out) {
  const SjogrenConstant s = sjogren(o.n);
  if (o.format == "json") {
    Json b = Json::array();
    for (const auto& x : s.b) b.push_back(integer_json(x));
    out << Json{{"n", s.n}, {"b", b}, {"c_n", integer_json(s.c_n)}}.dump(2) << "\n";
  } else {
    out << s.c_n << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dimension subrings and lower central series of finitely presented Lie rings", "liedim"};
  app.require_subcommand(1, 1);
  Options o;
  auto formats = CLI::IsMember({"text", "json"});
  auto at_least = [](std::size_t k) { return CLI::Range(k, std::size_t{1000000}); };

  auto* parse_cmd = app.add_subcommand("parse", "Validate a presentation and print its canonical form");
  parse_cmd->add_option("file", o.file, "presentation (.lp)")->required();

  auto* pre = app.add_subcommand("preabelianize", "Rewrite a presentation in pre-abelian form");
  pre->add_option("file", o.file)->required();
  pre->add_option("-o,--output", o.out_path, "write here instead of stdout");

  auto* series = app.add_subcommand("series", "Report delta_n / gamma_n for n = 1..N");
  series->add_option("file", o.file)->required();
  series->add_option("--max-n", o.max_n)->required()->check(at_least(1));
  series->add_option("--class", o.class_bound, "class bound (default N-1)")->check(at_least(1));
  series->add_flag("--metabelian", o.metabelian, "add the metabelian relators first");
  series->add_option("--format", o.format)->check(formats);
  series->add_option("--threads", o.threads, "0 = all cores")->check(CLI::NonNegativeNumber);

  auto* delta = app.add_subcommand("delta", "Hermite basis of delta_n");
  delta->add_option("file", o.file)->required();
  delta->add_option("--n", o.n)->required()->check(at_least(1));
  delta->add_option("--class", o.class_bound)->required()->check(at_least(1));
  delta->add_flag("--metabelian", o.metabelian);
  delta->add_option("--format", o.format)->check(formats);

  auto* check = app.add_subcommand("check", "Check a claim on a presentation");
  check->add_option("claim", o.claim)->required()->check(CLI::IsMember({"theorem1", "corollary", "lemma2", "sjogren"}));
  check->add_option("file", o.file)->required();
  check->add_option("--n", o.n)->required()->check(at_least(1));
  check->add_option("--class", o.class_bound)->check(at_least(1));
  check->add_flag("--metabelian", o.metabelian);
  check->add_option("--format", o.format)->check(formats);

  auto* ce = app.add_subcommand("counterexample", "Build or verify the ring L(n)");
  ce->add_option("--n", o.n)->required()->check(at_least(4));
  ce->add_option("--degree", o.degree, "truncation degree (default 2n-4)");
  ce->add_flag("--verify", o.verify);
  ce->add_option("--emit-presentation", o.emit_path);
  ce->add_flag("--timing", o.timing, "include wall time in the certificate");

  auto* sj = app.add_subcommand("sjogren", "Print the Sjogren constant c_n");
  sj->add_option("--n", o.n)->required()->check(at_least(2));
  sj->add_option("--format", o.format)->check(formats);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "liedim: " << e.what() << "\n";
    return 2;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o, out);
    if (pre->parsed()) return cmd_preabelianize(o, out);
    if (series->parsed()) return cmd_series(o, out);
    if (delta->parsed()) return cmd_delta(o, out);
    if (check->parsed()) return cmd_check(o, out);
    if (ce->parsed()) return cmd_counterexample(o, out, err);
    return cmd_sjogren(o, out);
  } catch (const SyntaxError& e) {
    err << "liedim: " << o.file << ": " << e.what() << "\n";
  } catch (const Error& e) {
    err << "liedim: " << e.what() << "\n";
  } catch (const std::bad_alloc&) {
    err << "liedim: out of memory\n";
  } catch (const std::exception& e) {
    err << "liedim: internal error: " << e.what() << "\n";
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace liedim::cli
