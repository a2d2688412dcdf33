// One PASS/FAIL line per acceptance criterion. Exit status is 1 if any
// criterion fails, unless it is listed with --allow-fail.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ostr/bisim.hpp"
#include "ostr/rewrite.hpp"
#include "ostr/specfmt.hpp"
#include "ostr/translation.hpp"
#include "random_algebra.hpp"

using namespace ostr;

namespace {

struct Options {
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::size_t sample = 200000;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome(const Options&)> run;
};

PatternTerm ms_pattern(const std::string& text, const MSAlgebra& alg) {
  return elaborate_term(parse_spec_term(text), alg.signature.table());
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---- 1 ----
Outcome cast_generation(const Options&) {
  auto tr = translate_algebra(imp_algebra());
  std::vector<std::string> got;
  for (const auto& c : tr.map.casts) got.push_back(c.name);
  const std::vector<std::string> want{"Cast_nat_to_int", "Cast_int_to_AExp", "Cast_Id_to_AExp", "Cast_bool_to_BExp",
                                      "Cast_Block_to_Stmt"};
  std::vector<std::string> a = got, b = want;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  bool profiles = true;
  for (const auto& c : tr.map.casts) profiles = profiles && c.name == cast_name(c.from, c.to);
  return {a == b && profiles, "casts: " + join(got)};
}

// ---- 2 ----
Outcome overload_collapse(const Options&) {
  auto alg = imp_algebra();
  auto tr = translate_algebra(alg);
  std::size_t source_plus = 0;
  for (const auto& op : alg.signature.operators()) source_plus += op.constructor == "+";
  std::vector<std::string> got;
  for (const auto& op : tr.algebra.signature.operators()) {
    auto origin = tr.map.origin_of(op.constructor);
    if (origin && origin->constructor == "+") got.push_back(to_string(op));
  }
  std::sort(got.begin(), got.end());
  const std::vector<std::string> want{to_string(Operator{"+AExp", {Sort("AExp"), Sort("AExp")}, Sort("AExp")}),
                                      to_string(Operator{"+BExp", {Sort("BExp"), Sort("BExp")}, Sort("BExp")})};
  return {source_plus == 5 && got == want, fmt("%zu source operators -> ", source_plus) + join(got)};
}

// ---- 3 ----
Outcome equation_bound(const Options& opt) {
  auto imp = imp_algebra();
  auto tr = translate_algebra(imp);
  bool ok = tr.algebra.equations.size() == imp.equations.size() && tr.algebra.core_equation_count() == 0;

  auto real = imp_real_algebra();
  auto rt = translate_algebra(real);
  auto core = rt.algebra.core_equations();
  Equation want{ms_pattern("Cast_int_to_AExp(Cast_nat_to_int(A:nat))", rt.algebra),
                ms_pattern("Cast_real_to_AExp(Cast_nat_to_real(A:nat))", rt.algebra)};
  bool real_ok = rt.algebra.equations.size() == real.equations.size() + 1 && core.size() == 1 && core[0] == want;

  std::mt19937_64 rng(opt.seed);
  std::size_t violations = 0, max_count = 0, with_diamonds = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, 7)(rng);
    SortPoset p = testing::random_poset(rng, n, false);
    std::size_t k = find_diamonds(p).size();
    max_count = std::max(max_count, k);
    with_diamonds += k > 0;
    if (k >= n * n) ++violations;
  }
  return {ok && real_ok && violations == 0,
          fmt("IMP %zu core, IMP+real %zu core (%s); 200 posets: %zu with diamonds, max %zu, %zu at or over |S|^2",
              tr.algebra.core_equation_count(), core.size(), real_ok ? "exact" : "mismatch", with_diamonds, max_count,
              violations)};
}

// ---- 4 ----
Outcome rule_count(const Options& opt) {
  auto imp = imp_algebra();
  bool ok = translate_algebra(imp).algebra.rules.size() == imp.rules.size();
  std::mt19937_64 rng(opt.seed);
  std::size_t bad = 0, rules = 0;
  for (int i = 0; i < 100; ++i) {
    auto alg = testing::random_strictly_sensible_algebra(rng);
    rules += alg.rules.size();
    if (translate_algebra(alg).algebra.rules.size() != alg.rules.size()) ++bad;
  }
  return {ok && bad == 0, fmt("IMP %s; 100 random algebras (%zu rules): %zu mismatches", ok ? "equal" : "differs",
                              rules, bad)};
}

// ---- 5 ----
Outcome rule_golden(const Options&) {
  auto imp = imp_algebra();
  auto tr = translate_algebra(imp);
  const auto& table = imp.signature.table();
  PatternTerm neg0 = elaborate_term(parse_spec_term("-(0)"), table);
  for (std::size_t i = 0; i < imp.rules.size(); ++i) {
    if (imp.rules[i].lhs != neg0) continue;
    const Rule& r = tr.algebra.rules[i];
    bool rhs = r.rhs == ms_pattern("Cast_nat_to_int(0)", tr.algebra);
    // The left argument carries its cast too, since -int expects an int.
    bool lhs = r.lhs == ms_pattern("-int(Cast_nat_to_int(0))", tr.algebra);
    return {rhs && lhs, to_string(r.lhs) + " => " + to_string(r.rhs)};
  }
  return {false, "rule -(0) => 0 not found"};
}

// ---- 6 ----
Outcome shared_constructors(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t pairs = 0, violations = 0;
  for (int i = 0; i < 200; ++i) {
    auto alg = testing::random_strictly_sensible_algebra(rng);
    auto tr = translate_algebra(alg);
    const auto& poset = alg.signature.poset();
    std::vector<Operator> reps;
    for (const auto& op : tr.algebra.signature.operators()) {
      if (auto o = tr.map.origin_of(op.constructor)) reps.push_back(*o);
    }
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = a + 1; b < reps.size(); ++b) {
        if (reps[a].constructor != reps[b].constructor || reps[a].arity() != reps[b].arity()) continue;
        ++pairs;
        bool apart = false;
        for (std::size_t k = 0; k < reps[a].arity(); ++k) {
          apart = apart || !poset.common_supersort_exists(reps[a].arg_sorts[k], reps[b].arg_sorts[k]);
        }
        violations += !apart;
      }
    }
  }
  return {violations == 0, fmt("200 algebras: %zu constructor-sharing pairs, %zu violations", pairs, violations)};
}

// ---- 7 ----
OSAlgebra constants_over(const SortPoset& p) {
  std::vector<Operator> ops;
  for (const auto& s : p.sorts()) ops.push_back({"c_" + s.name(), {}, s});
  return OSAlgebra{"P", OSSignature(p.sorts(), p.base_pairs(), ops), {}, {}};
}

Outcome core_equality(const Options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t terms = 0, pairs = 0, equal_pairs = 0, disagreements = 0, unfinished = 0;
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, 5)(rng);
    OSAlgebra alg = constants_over(testing::random_poset(rng, n, true));
    auto tr = translate_algebra(alg);
    ManySortedTheory oracle(tr.algebra, CoreMode::syntactic, tr.map.tie_break);
    const SortPoset& p = alg.signature.poset();

    // Every cast chain of length <= 4 over every constant, grouped by sort.
    std::map<std::size_t, std::vector<GroundTerm>> by_sort;
    std::function<void(GroundTerm, std::size_t, std::size_t)> grow = [&](GroundTerm t, std::size_t s, std::size_t len) {
      by_sort[s].push_back(t);
      if (len == 4) return;
      for (std::size_t up : p.successors(s)) {
        grow(GroundTerm(cast_name(p.sorts()[s], p.sorts()[up]), {t}), up, len + 1);
      }
    };
    for (std::size_t s = 0; s < p.size(); ++s) grow(GroundTerm("c_" + p.sorts()[s].name()), s, 0);

    for (const auto& [s, group] : by_sort) {
      std::vector<EClassApprox> classes;
      std::vector<GroundTerm> canon;
      for (const auto& t : group) {
        classes.push_back(e_class_bounded(oracle, t, {64, 100000, std::nullopt, std::nullopt}));
        unfinished += !classes.back().exhausted;
        canon.push_back(core_canonicalize(tr.map, t));
      }
      terms += group.size();
      for (std::size_t a = 0; a < group.size(); ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          ++pairs;
          bool brute = classes[a].contains(group[b]);
          bool decided = canon[a] == canon[b];
          equal_pairs += brute;
          disagreements += brute != decided;
        }
      }
    }
  }
  return {disagreements == 0 && unfinished == 0,
          fmt("1000 posets, %zu chains, %zu pairs (%zu equal): %zu disagreements, %zu unfinished searches", terms, pairs,
              equal_pairs, disagreements, unfinished)};
}

// ---- 8 and 9 ----

// Terms of height <= 3 exhaustively, then either every term of height 4
// (--exhaustive) or a seeded uniform sample of the terms of height <= 4.
void for_each_term(const OSSignature& sig, const Options& opt, const std::function<void(const GroundTerm&)>& fn,
                   std::string& coverage) {
  Enumeration low = enumerate_ground_terms(sig, std::nullopt, 3, SIZE_MAX, opt.seed);
  for (const auto& t : low.terms) fn(t);
  if (!opt.exhaustive) {
    Enumeration s = enumerate_ground_terms(sig, std::nullopt, 4, opt.sample, opt.seed);
    for (const auto& t : s.terms) fn(t);
    coverage = fmt("all %zu terms of height <= 3, %zu sampled of %zu of height <= 4", low.terms.size(), s.terms.size(),
                   s.total);
    return;
  }
  // Height exactly 4: some child of height exactly 3.
  std::set<std::pair<std::string, std::size_t>> shapes;
  for (const auto& op : sig.operators()) {
    if (op.arity() > 0) shapes.insert({op.constructor, op.arity()});
  }
  std::size_t count = low.terms.size();
  for (const auto& [ctor, arity] : shapes) {
    std::vector<std::size_t> ix(arity, 0);
    const std::size_t n = low.terms.size();
    while (true) {
      bool top = false;
      for (std::size_t k : ix) top = top || height(low.terms[k]) == 3;
      if (top) {
        std::vector<GroundTerm> args;
        for (std::size_t k : ix) args.push_back(low.terms[k]);
        GroundTerm t(ctor, std::move(args));
        if (sig.least_sort_index(t)) {
          fn(t);
          ++count;
        }
      }
      std::size_t k = 0;
      while (k < arity && ++ix[k] == n) ix[k++] = 0;
      if (k == arity) break;
    }
  }
  coverage = fmt("all %zu terms of height <= 4", count);
}

Outcome sort_preservation(const Options& opt) {
  auto imp = imp_algebra();
  auto tr = translate_algebra(imp);
  std::size_t checked = 0, bad = 0;
  std::string coverage;
  for_each_term(
      imp.signature, opt,
      [&](const GroundTerm& t) {
        ++checked;
        if (term_sort(tr.algebra.signature, tr_term(tr.map, t)) != least_sort(imp.signature, t)) ++bad;
      },
      coverage);
  return {bad == 0, coverage + fmt(": %zu violations", bad)};
}

Outcome tie_break_agreement(const Options& opt) {
  auto real = imp_real_algebra();
  auto lo = translate_algebra(real, PathTieBreak::lexicographic_min);
  auto hi = translate_algebra(real, PathTieBreak::lexicographic_max);
  std::size_t differ = 0, bad = 0;
  std::string coverage;
  for_each_term(
      real.signature, opt,
      [&](const GroundTerm& t) {
        GroundTerm a = tr_term(lo.map, t);
        GroundTerm b = tr_term(hi.map, t);
        differ += a != b;
        if (core_canonicalize(lo.map, a) != core_canonicalize(lo.map, b) ||
            core_canonicalize(hi.map, a) != core_canonicalize(hi.map, b)) {
          ++bad;
        }
      },
      coverage);
  return {bad == 0, coverage + fmt(" (%zu translate differently): %zu mismatches", differ, bad)};
}

// ---- 10 ----
Outcome bisimulation(const Options& opt) {
  BisimConfig cfg;
  cfg.term_depth = 3;
  cfg.eclass_depth = 5;
  cfg.seed = opt.seed;
  BisimReport imp = run_bisim(imp_algebra(), cfg);
  bool ok = imp.passed() && imp.skipped_unexhausted == 0;
  std::string detail = fmt("IMP: %zu+%zu terms, %zu/%zu failures, %zu skipped", imp.terms_checked,
                           imp.backward_terms_checked, imp.forward_failures.size(), imp.backward_failures.size(),
                           imp.skipped_unexhausted);
  std::mt19937_64 rng(opt.seed);
  std::size_t failures = 0, skipped = 0, terms = 0;
  for (int i = 0; i < 50; ++i) {
    auto alg = testing::random_strictly_sensible_algebra(rng);
    BisimReport r = run_bisim(alg, cfg);
    terms += r.terms_checked + r.backward_terms_checked;
    failures += r.forward_failures.size() + r.backward_failures.size() + r.roundtrip_failures;
    skipped += r.skipped_unexhausted;
  }
  ok = ok && failures == 0 && skipped == 0;
  return {ok, detail + fmt("; 50 random: %zu terms, %zu failures, %zu skipped", terms, failures, skipped)};
}

// ---- 11 ----
Outcome round_trip(const Options& opt) {
  auto imp = imp_algebra();
  bool ok = parse_os_algebra(print_spec(imp)) == imp;
  auto tr = translate_algebra(imp_real_algebra());
  bool ms_ok = parse_ms_algebra(print_spec(tr.algebra)) == tr.algebra;
  std::mt19937_64 rng(opt.seed);
  std::size_t bad = 0;
  for (int i = 0; i < 100; ++i) {
    auto alg = testing::random_strictly_sensible_algebra(rng);
    if (!(parse_os_algebra(print_spec(alg)) == alg)) ++bad;
  }
  return {ok && ms_ok && bad == 0, fmt("IMP %s, translated IMP+real %s, 100 random: %zu mismatches",
                                       ok ? "equal" : "differs", ms_ok ? "equal" : "differs", bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Options opt;
  std::vector<int> only, allow_fail;
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--allow-fail", allow_fail, "Criteria whose failure does not change the exit status");
  app.add_option("--seed", opt.seed, "Seed for random algebras and sampling");
  app.add_option("--sample", opt.sample, "Sampled terms of height <= 4 for criteria 8 and 9");
  app.add_flag("--exhaustive", opt.exhaustive, "Check every term of height <= 4 for criteria 8 and 9 (hours)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "IMP cast generation", 1, cast_generation},
      {2, "IMP overload collapse", 1, overload_collapse},
      {3, "core equation count", 30, equation_bound},
      {4, "rule count preserved", 30, rule_count},
      {5, "translated rule -(0) => 0", 1, rule_golden},
      {6, "shared constructors stay apart", 60, shared_constructors},
      {7, "core equality decision", 60, core_equality},
      {8, "translated sort is the least sort", 60, sort_preservation},
      {9, "tie-breaks agree up to core equality", 60, tie_break_agreement},
      {10, "bisimulation", 600, bisimulation},
      {11, "print/parse round trip", 30, round_trip},
  };

  int status = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run(opt);
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = opt.exhaustive && (c.id == 8 || c.id == 9) ? true : secs < c.limit_s;
    bool pass = out.pass && in_time;
    std::cout << "[" << c.id << "] " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  " << out.detail
              << fmt("  (%.2f s, limit %.0f s)", secs, c.limit_s) << std::endl;
    bool allowed = std::find(allow_fail.begin(), allow_fail.end(), c.id) != allow_fail.end();
    if (!pass && !allowed) status = 1;
  }
  return status;
}
