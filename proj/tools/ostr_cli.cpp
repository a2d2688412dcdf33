// ostr: check, translate and exercise order-sorted algebras from the command line.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ostr/bisim.hpp"
#include "ostr/error.hpp"
#include "ostr/rewrite.hpp"
#include "ostr/specfmt.hpp"
#include "ostr/translation.hpp"
#include "ostr/validity.hpp"

using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct LoadError {
  std::string message;
};

struct Output {
  bool json_lines = false;
  bool color = false;

  void record(json j) const {
    j["schema"] = 1;
    std::cout << j.dump() << "\n";
  }
  std::string yes_no(bool v) const {
    if (!color) return v ? "yes" : "no";
    return v ? "\x1b[32myes\x1b[0m" : "\x1b[31mno\x1b[0m";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError{"cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_many_sorted_file(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".msa") == 0;
}

ostr::OSAlgebra load_os(const std::string& path) {
  std::string text = read_file(path);
  try {
    return ostr::parse_os_algebra(text);
  } catch (const ostr::Error& e) {
    throw LoadError{path + ": " + e.what()};
  }
}

ostr::MSAlgebra load_ms(const std::string& path) {
  std::string text = read_file(path);
  try {
    return ostr::parse_ms_algebra(text);
  } catch (const ostr::Error& e) {
    throw LoadError{path + ": " + e.what()};
  }
}

int run_check(const Output& out, const std::string& path) {
  ostr::OSAlgebra alg = load_os(path);
  ostr::ValidityReport r = ostr::check_algebra(alg);
  const std::pair<const char*, bool> flags[] = {
      {"sensible", r.sensible},
      {"strong sensible", r.strong_sensible},
      {"maximal argument-bounding", r.maximal_argument_bounding},
      {"strictly sensible", r.strictly_sensible},
      {"equations sort-equal", r.equations_sort_equal},
      {"rules sort-decreasing", r.rules_sort_decreasing},
      {"unique tops", r.unique_tops},
  };
  if (out.json_lines) {
    json summary{{"kind", "check"},
                 {"algebra", alg.name},
                 {"sorts", alg.signature.sorts().size()},
                 {"subsort_pairs", alg.signature.poset().base_pairs().size()},
                 {"operators", alg.signature.operators().size()},
                 {"equations", alg.equations.size()},
                 {"rules", alg.rules.size()},
                 {"translatable", r.translatable()}};
    for (const auto& [name, v] : flags) summary[name] = v;
    out.record(summary);
    for (const auto& v : r.violations) {
      out.record({{"kind", "violation"}, {"violation", std::string(ostr::violation_kind_name(v.kind))}, {"detail", v.detail}});
    }
  } else {
    std::cout << "algebra " << alg.name << ": " << alg.signature.sorts().size() << " sorts, "
              << alg.signature.poset().base_pairs().size() << " subsort pairs, " << alg.signature.operators().size()
              << " operators, " << alg.equations.size() << " equations, " << alg.rules.size() << " rules\n";
    for (const auto& [name, v] : flags) std::cout << name << ": " << out.yes_no(v) << "\n";
    for (const auto& v : r.violations) std::cout << "  " << ostr::violation_kind_name(v.kind) << ": " << v.detail << "\n";
  }
  return r.translatable() ? kOk : kFailed;
}

int run_translate(const Output& out, const std::string& path, const std::string& output, bool max_tie) {
  ostr::OSAlgebra alg = load_os(path);
  auto tie = max_tie ? ostr::PathTieBreak::lexicographic_max : ostr::PathTieBreak::lexicographic_min;
  ostr::Translation tr = ostr::translate_algebra(alg, tie);
  std::string text = ostr::print_spec(tr.algebra);
  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw LoadError{"cannot write " + output};
    f << text;
  } else if (!out.json_lines) {
    std::cout << text;
  }
  if (out.json_lines) {
    json j{{"kind", "translate"},
           {"algebra", tr.algebra.name},
           {"operators", tr.algebra.signature.operators().size()},
           {"casts", tr.map.casts.size()},
           {"equations", tr.algebra.equations.size()},
           {"core_equations", tr.algebra.core_equation_count()},
           {"rules", tr.algebra.rules.size()}};
    if (!output.empty()) j["output"] = output;
    out.record(j);
  } else if (!output.empty()) {
    std::cerr << "wrote " << output << "\n";
  }
  return kOk;
}

std::string join_path(const ostr::SortPath& p) {
  std::string s;
  for (const auto& x : p) s += (s.empty() ? "" : " -> ") + x.name();
  return s;
}

int run_paths(const Output& out, const std::string& path, const std::string& from, const std::string& to) {
  ostr::OSAlgebra alg = load_os(path);
  const auto& poset = alg.signature.poset();
  ostr::Sort a(from), b(to);
  poset.index_of(a);
  poset.index_of(b);
  auto paths = ostr::enumerate_paths(poset, a, b);
  if (paths.empty()) {
    std::cerr << "no subsort path from " << from << " to " << to << "\n";
    return kFailed;
  }
  auto canonical = ostr::canonical_path(poset, a, b);
  for (const auto& p : paths) {
    if (out.json_lines) {
      json sorts = json::array();
      for (const auto& s : p) sorts.push_back(s.name());
      out.record({{"kind", "path"}, {"sorts", sorts}, {"canonical", p == canonical}});
    } else {
      std::cout << join_path(p) << (p == canonical ? "  (canonical)" : "") << "\n";
    }
  }
  return kOk;
}

struct BudgetFlags {
  std::size_t depth = 5;
  std::size_t max_size = 10000;
  // Caps below the input term's own height and size are raised to them.
  std::size_t height = 0;
  std::size_t nodes = 0;
};

int run_rewrite(const Output& out, const std::string& path, const std::string& term_text, std::size_t steps,
                const std::string& strategy_text, const BudgetFlags& bf) {
  auto strategy = ostr::parse_strategy(strategy_text);
  if (!strategy) {
    std::cerr << "unknown strategy " << strategy_text << " (innermost, outermost, breadth)\n";
    return kUsage;
  }
  std::unique_ptr<ostr::RewriteTheory> theory;
  ostr::GroundTerm t;
  try {
    if (is_many_sorted_file(path)) {
      ostr::MSAlgebra alg = load_ms(path);
      t = ostr::parse_ground_term(term_text, alg.signature.table());
      if (!ostr::well_formed_ground(alg.signature, t)) throw ostr::Error(ostr::ErrorCode::ill_formed_term, term_text);
      theory = std::make_unique<ostr::ManySortedTheory>(alg);
    } else {
      ostr::OSAlgebra alg = load_os(path);
      t = ostr::parse_ground_term(term_text, alg.signature.table());
      ostr::least_sort(alg.signature, t);
      theory = std::make_unique<ostr::OrderSortedTheory>(alg);
    }
  } catch (const ostr::Error& e) {
    throw LoadError{std::string("term: ") + e.what()};
  }
  ostr::EClassBudget budget{bf.depth, bf.max_size, bf.height, bf.nodes};
  ostr::Trace trace = ostr::rewrite_trace(*theory, t, *strategy, steps, budget);
  if (out.json_lines) {
    for (const auto& s : trace.steps) {
      out.record({{"kind", "step"},
                  {"position", ostr::to_string(s.position)},
                  {"rule", s.rule_index},
                  {"before", ostr::to_string(s.bridging_term)},
                  {"after", ostr::to_string(s.result)}});
    }
    out.record({{"kind", "trace"}, {"steps", trace.steps.size()}, {"complete", trace.complete}});
  } else {
    std::cout << ostr::format_trace(trace);
    if (!trace.complete) std::cerr << "warning: an equivalence class search hit its budget; steps may be missing\n";
  }
  return kOk;
}

int run_bisim_cmd(const Output& out, const std::string& path, const ostr::BisimConfig& cfg) {
  ostr::OSAlgebra alg = load_os(path);
  ostr::BisimReport r = ostr::run_bisim(alg, cfg);
  if (out.json_lines) {
    auto cex = [&](const ostr::Counterexample& c) {
      out.record({{"kind", "counterexample"},
                  {"direction", std::string(ostr::direction_name(c.direction))},
                  {"term", ostr::to_string(c.source_term)},
                  {"rule", c.rule_index},
                  {"witness", ostr::to_string(c.witness.result)},
                  {"missing", c.missing}});
    };
    for (const auto& c : r.forward_failures) cex(c);
    for (const auto& c : r.backward_failures) cex(c);
    out.record({{"kind", "bisim"},
                {"terms_checked", r.terms_checked},
                {"backward_terms_checked", r.backward_terms_checked},
                {"forward_steps", r.forward_steps},
                {"backward_steps", r.backward_steps},
                {"forward_failures", r.forward_failures.size()},
                {"backward_failures", r.backward_failures.size()},
                {"skipped_unexhausted", r.skipped_unexhausted},
                {"skipped_not_in_image", r.skipped_not_in_image},
                {"roundtrip_failures", r.roundtrip_failures},
                {"truncated", r.truncated},
                {"passed", r.passed()}});
  } else {
    for (const auto& c : r.forward_failures) {
      std::cout << "forward failure: " << ostr::to_string(c.source_term) << ": " << c.missing << "\n";
    }
    for (const auto& c : r.backward_failures) {
      std::cout << "backward failure: " << ostr::to_string(c.source_term) << ": " << c.missing << "\n";
    }
    std::cout << r.terms_checked << " order-sorted terms, " << r.backward_terms_checked << " many-sorted terms"
              << (r.truncated ? " (sampled)" : "") << "\n";
    std::cout << r.forward_steps << " forward steps, " << r.backward_steps << " backward steps matched or checked\n";
    std::cout << r.skipped_unexhausted << " skipped (class search unfinished), " << r.skipped_not_in_image
              << " skipped (not in image)\n";
    if (r.roundtrip_failures) std::cout << r.roundtrip_failures << " round-trip failures\n";
    std::cout << r.forward_failures.size() << " forward failures, " << r.backward_failures.size()
              << " backward failures\n";
    std::cout << "bisimulation: " << out.yes_no(r.passed()) << "\n";
  }
  return r.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate order-sorted algebras to many-sorted ones and check the result"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json-lines"}));

  std::string file, output, from, to, term, strategy = "innermost";
  bool max_tie = false;
  std::size_t steps = 10;
  BudgetFlags bf;
  ostr::BisimConfig cfg;
  std::size_t eclass_height = 0, eclass_nodes = 0;

  auto* check = app.add_subcommand("check", "Report the validity conditions of an algebra");
  check->add_option("file", file, "Order-sorted algebra (.osa)")->required();

  auto* translate = app.add_subcommand("translate", "Print the many-sorted translation");
  translate->add_option("file", file, "Order-sorted algebra (.osa)")->required();
  translate->add_option("-o,--output", output, "Write the .msa text here");
  translate->add_flag("--max-paths", max_tie, "Break path ties toward the lexicographically largest path");

  auto* paths = app.add_subcommand("paths", "List the subsort paths between two sorts");
  paths->add_option("file", file, "Order-sorted algebra (.osa)")->required();
  paths->add_option("--from", from, "Lower sort")->required();
  paths->add_option("--to", to, "Upper sort")->required();

  auto* rewrite = app.add_subcommand("rewrite", "Rewrite a ground term");
  rewrite->add_option("file", file, "Algebra (.osa or .msa)")->required();
  rewrite->add_option("--term", term, "Ground term, e.g. \"-(true)\"")->required();
  rewrite->add_option("--steps", steps, "Maximum number of steps");
  rewrite->add_option("--strategy", strategy, "innermost, outermost or breadth");
  rewrite->add_option("--eclass-depth", bf.depth, "Breadth-first layers of the class search");
  rewrite->add_option("--eclass-max", bf.max_size, "Members of the class search");
  rewrite->add_option("--eclass-height", bf.height, "Height cap for class members (default: the term's)");
  rewrite->add_option("--eclass-nodes", bf.nodes, "Size cap for class members (default: the term's)");

  auto* bisim = app.add_subcommand("bisim", "Check the translation against the source by bisimulation");
  bisim->add_option("file", file, "Order-sorted algebra (.osa)")->required();
  bisim->add_option("--depth", cfg.term_depth, "Height of enumerated terms");
  bisim->add_option("--eclass-depth", cfg.eclass_depth, "Breadth-first layers of each class search");
  bisim->add_option("--eclass-max", cfg.eclass_max, "Members of each class search");
  bisim->add_option("--eclass-height", eclass_height, "Height cap for class members (default: each term's)");
  bisim->add_option("--eclass-nodes", eclass_nodes, "Size cap for class members (default: each term's)");
  bisim->add_option("--max-terms", cfg.max_terms, "Sample larger enumerations down to this many terms");
  bisim->add_option("--seed", cfg.seed, "Seed for sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  Output out;
  out.json_lines = format == "json-lines";
  const char* color_env = std::getenv("OSTR_COLOR");
  out.color = !out.json_lines && isatty(STDOUT_FILENO) && !(color_env && std::string(color_env) == "0");
  if (eclass_height) cfg.eclass_height = eclass_height;
  if (eclass_nodes) cfg.eclass_nodes = eclass_nodes;

  try {
    if (check->parsed()) return run_check(out, file);
    if (translate->parsed()) return run_translate(out, file, output, max_tie);
    if (paths->parsed()) return run_paths(out, file, from, to);
    if (rewrite->parsed()) return run_rewrite(out, file, term, steps, strategy, bf);
    if (bisim->parsed()) return run_bisim_cmd(out, file, cfg);
  } catch (const LoadError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const ostr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
