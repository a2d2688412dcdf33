#include "ostr/translation.hpp"

#include <algorithm>
#include <set>

#include "ostr/error.hpp"

namespace ostr {

// ---- CoreCanonicalizer ----

CoreCanonicalizer::CoreCanonicalizer(const MSSignature& sig, PathTieBreak tie) : sig_(sig) {
  std::vector<SortPair> pairs;
  const auto& ops = sig.operators();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (!sig.is_non_core(i)) continue;
    cast_index_[ops[i].constructor] = casts_.size();
    casts_.push_back({ops[i].arg_sorts[0], ops[i].target, ops[i].constructor});
    pairs.emplace_back(ops[i].arg_sorts[0], ops[i].target);
  }
  poset_ = SortPoset::build(sig.sorts(), pairs);
  for (const auto& [lo, hi] : poset_.closure_pairs()) {
    if (lo != hi) paths_.emplace(SortPair{lo, hi}, canonical_path(poset_, lo, hi, tie));
  }
}

const CastOperator& CoreCanonicalizer::cast(const std::string& ctor) const {
  auto it = cast_index_.find(ctor);
  if (it == cast_index_.end()) throw Error(ErrorCode::ill_formed_term, ctor + " is not a cast");
  return casts_[it->second];
}

Sort CoreCanonicalizer::sort_of(const GroundTerm& t) const {
  const auto& idx = sig_.table().operators_named(t.constructor);
  if (idx.size() == 1) return sig_.operators()[idx[0]].target;
  return term_sort(sig_, t);
}

Sort CoreCanonicalizer::sort_of(const PatternTerm& p) const {
  if (p.is_variable()) return p.sort;
  const auto& idx = sig_.table().operators_named(p.name);
  if (idx.size() == 1) return sig_.operators()[idx[0]].target;
  return term_sort(sig_, p);
}

const SortPath& CoreCanonicalizer::path(const Sort& from, const Sort& to) const {
  auto it = paths_.find({from, to});
  if (it == paths_.end()) throw Error(ErrorCode::no_path, "no cast chain from " + from.name() + " to " + to.name());
  return it->second;
}

GroundTerm CoreCanonicalizer::wrap(GroundTerm core, const Sort& from, const Sort& to) const {
  if (from == to) return core;
  const auto& p = path(from, to);
  for (std::size_t k = 1; k < p.size(); ++k) core = GroundTerm(cast_name(p[k - 1], p[k]), {std::move(core)});
  return core;
}

PatternTerm CoreCanonicalizer::wrap(PatternTerm core, const Sort& from, const Sort& to) const {
  if (from == to) return core;
  const auto& p = path(from, to);
  for (std::size_t k = 1; k < p.size(); ++k) core = PatternTerm::node(cast_name(p[k - 1], p[k]), {std::move(core)});
  return core;
}

GroundTerm CoreCanonicalizer::canonicalize(const GroundTerm& t) const {
  if (!is_cast(t.constructor)) {
    GroundTerm out(t.constructor);
    out.args.reserve(t.args.size());
    for (const auto& a : t.args) out.args.push_back(canonicalize(a));
    return out;
  }
  Sort top = cast(t.constructor).to;
  const GroundTerm* core = &t;
  while (is_cast(core->constructor)) core = &core->args.at(0);
  GroundTerm inner = canonicalize(*core);
  Sort bottom = sort_of(inner);
  return wrap(std::move(inner), bottom, top);
}

std::size_t CoreCanonicalizer::core_height(const GroundTerm& t) const {
  if (is_cast(t.constructor)) return core_height(t.args.at(0));
  std::size_t h = 0;
  for (const auto& a : t.args) h = std::max(h, core_height(a) + 1);
  return h;
}

std::size_t CoreCanonicalizer::core_size(const GroundTerm& t) const {
  if (is_cast(t.constructor)) return core_size(t.args.at(0));
  std::size_t n = 1;
  for (const auto& a : t.args) n += core_size(a);
  return n;
}

// ---- TranslationMap ----

std::optional<Operator> TranslationMap::origin_of(const std::string& translated_ctor) const {
  auto it = origin_.find(translated_ctor);
  if (it == origin_.end()) return std::nullopt;
  return it->second;
}

// ---- representative selection and renaming ----

RepresentativeSelection select_representatives(const OSAlgebra& alg) {
  auto strong = check_strong_sensible(alg);
  auto maxarg = check_maximal_argument_bounding(alg);
  if (!strong.ok || !maxarg.ok) {
    const auto& v = !strong.ok ? strong.violations.front() : maxarg.violations.front();
    throw Error(ErrorCode::not_strictly_sensible, v.detail);
  }
  RepresentativeSelection out;
  const auto& ops = alg.signature.operators();
  std::set<std::size_t> kept;
  for (const auto& [f, rep] : maxarg.representative) {
    out.representative_of[ops[f]] = ops[rep];
    kept.insert(rep);
  }
  for (std::size_t i : kept) out.operators.push_back(ops[i]);
  return out;
}

std::map<Operator, std::string> rename_constructors(const std::vector<Operator>& ops, const SortPoset& poset) {
  (void)poset;
  std::map<std::string, std::vector<std::size_t>> by_ctor;
  std::set<std::string> existing;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    by_ctor[ops[i].constructor].push_back(i);
    existing.insert(ops[i].constructor);
  }

  std::vector<std::string> names(ops.size());
  std::map<std::string, std::size_t> primary_uses;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (by_ctor[ops[i].constructor].size() == 1) {
      names[i] = ops[i].constructor;
    } else {
      names[i] = ops[i].constructor + ops[i].target.name();
      ++primary_uses[names[i]];
    }
  }

  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (by_ctor[ops[i].constructor].size() == 1) continue;
    if (primary_uses[names[i]] > 1 || existing.count(names[i])) {
      for (const auto& s : ops[i].arg_sorts) names[i] += "_" + s.name();
    }
  }
  std::map<Operator, std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    bool renamed = names[i] != ops[i].constructor;
    if (renamed && (existing.count(names[i]) || seen.count(names[i]))) {
      throw Error(ErrorCode::rename_collision, "cannot find a fresh name for " + to_string(ops[i]));
    }
    if (!renamed && seen.count(names[i])) {
      throw Error(ErrorCode::rename_collision, "name " + names[i] + " is used twice");
    }
    seen.insert(names[i]);
    out[ops[i]] = names[i];
  }
  return out;
}

std::vector<CastOperator> generate_cast_operators(const SortPoset& poset, const std::vector<std::string>& taken_names) {
  std::set<std::string> taken(taken_names.begin(), taken_names.end());
  std::vector<CastOperator> out;
  for (const auto& [lo, hi] : poset.base_pairs()) {
    std::string name = cast_name(lo, hi);
    if (taken.count(name)) throw Error(ErrorCode::rename_collision, "cast name " + name + " is already a constructor");
    taken.insert(name);
    out.push_back({lo, hi, name});
  }
  return out;
}

TranslationMap make_translation_map(const OSAlgebra& alg, PathTieBreak tie) {
  // Every failed check, including unsorted equations and rules, is reported
  // under one code; the detail names the first violation.
  ValidityReport report = check_algebra(alg);
  if (!report.translatable()) {
    std::string detail = "algebra " + alg.name + " is not strictly sensible";
    if (!report.violations.empty()) detail += ": " + report.violations.front().detail;
    throw Error(ErrorCode::not_strictly_sensible, detail);
  }

  TranslationMap tm;
  tm.source = alg.signature;
  tm.tie_break = tie;
  const SortPoset& poset = alg.signature.poset();

  RepresentativeSelection sel = select_representatives(alg);
  tm.representative_of = sel.representative_of;
  tm.rename_of = rename_constructors(sel.operators, poset);

  std::vector<std::string> taken;
  for (const auto& op : alg.signature.operators()) taken.push_back(op.constructor);
  for (const auto& [op, name] : tm.rename_of) taken.push_back(name);
  tm.casts = generate_cast_operators(poset, taken);

  for (const auto& [lo, hi] : poset.closure_pairs()) {
    if (lo != hi) tm.canonical_path_of.emplace(SortPair{lo, hi}, canonical_path(poset, lo, hi, tie));
  }

  std::vector<Operator> ms_ops;
  std::vector<bool> non_core;
  for (const auto& op : sel.operators) {
    const std::string& name = tm.rename_of.at(op);
    ms_ops.push_back(Operator{name, op.arg_sorts, op.target});
    non_core.push_back(false);
    tm.origin_[name] = op;
  }
  for (const auto& c : tm.casts) {
    ms_ops.push_back(c.as_operator());
    non_core.push_back(true);
  }
  tm.canonicalizer = CoreCanonicalizer(MSSignature(alg.signature.sorts(), ms_ops, non_core), tie);
  return tm;
}

const SortPath& canonical_path(const TranslationMap& tm, const Sort& from, const Sort& to) {
  auto it = tm.canonical_path_of.find({from, to});
  if (it == tm.canonical_path_of.end()) {
    throw Error(ErrorCode::no_path, "no subsort path from " + from.name() + " to " + to.name());
  }
  return it->second;
}

// ---- term translation ----

namespace {

PatternTerm cast_up(const TranslationMap& tm, PatternTerm p, const Sort& from, const Sort& to) {
  if (from == to) return p;
  auto it = tm.canonical_path_of.find({from, to});
  if (it == tm.canonical_path_of.end()) {
    throw Error(ErrorCode::untranslatable_sort, from.name() + " is not a subsort of " + to.name());
  }
  const SortPath& path = it->second;
  for (std::size_t k = 1; k < path.size(); ++k) p = PatternTerm::node(cast_name(path[k - 1], path[k]), {std::move(p)});
  return p;
}

TranslatedPattern translate(const TranslationMap& tm, const PatternTerm& p) {
  if (p.is_variable()) {
    if (!tm.source.poset().contains(p.sort)) throw Error(ErrorCode::unknown_sort, "unknown sort " + p.sort.name());
    return {p, p.sort};
  }
  std::vector<TranslatedPattern> kids;
  std::vector<Sort> child_sorts;
  kids.reserve(p.args.size());
  for (const auto& a : p.args) {
    kids.push_back(translate(tm, a));
    child_sorts.push_back(kids.back().sort);
  }
  auto admissible = admissible_operators(tm.source, p.name, child_sorts);
  if (admissible.empty()) throw Error(ErrorCode::ill_formed_term, "no operator admits " + to_string(p));
  const Operator& rep = tm.representative_of.at(tm.source.operators()[admissible.front()]);
  std::vector<PatternTerm> args;
  args.reserve(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    args.push_back(cast_up(tm, std::move(kids[i].term), kids[i].sort, rep.arg_sorts[i]));
  }
  return {PatternTerm::node(tm.rename_of.at(rep), std::move(args)), rep.target};
}

}  // namespace

TranslatedPattern tr_term(const TranslationMap& tm, const PatternTerm& p, const std::optional<Sort>& expected) {
  TranslatedPattern out = translate(tm, p);
  if (expected && *expected != out.sort) {
    out.term = cast_up(tm, std::move(out.term), out.sort, *expected);
    out.sort = *expected;
  }
  return out;
}

GroundTerm tr_term(const TranslationMap& tm, const GroundTerm& t, const std::optional<Sort>& expected) {
  return to_ground(tr_term(tm, to_pattern(t), expected).term);
}

// ---- equations and rules ----

std::vector<Equation> generate_core_equations(const TranslationMap& tm) {
  std::vector<Equation> out;
  for (const auto& d : find_diamonds(tm.source.poset(), tm.tie_break)) {
    auto chain = [&](const SortPath& path) {
      PatternTerm p = PatternTerm::variable("A", d.bottom);
      for (std::size_t k = 1; k < path.size(); ++k) p = PatternTerm::node(cast_name(path[k - 1], path[k]), {std::move(p)});
      return p;
    };
    out.push_back({chain(d.path_a), chain(d.path_b)});
  }
  return out;
}

std::vector<Equation> tr_equations(const TranslationMap& tm, const std::vector<Equation>& equations) {
  std::vector<Equation> out;
  for (const auto& e : equations) {
    Sort s = least_sort(tm.source, e.lhs);
    out.push_back({tr_term(tm, e.lhs, s).term, tr_term(tm, e.rhs, s).term});
  }
  auto core = generate_core_equations(tm);
  out.insert(out.end(), core.begin(), core.end());
  return out;
}

std::vector<Rule> tr_rules(const TranslationMap& tm, const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  out.reserve(rules.size());
  for (const auto& r : rules) {
    TranslatedPattern lhs = tr_term(tm, r.lhs);
    out.push_back({std::move(lhs.term), tr_term(tm, r.rhs, lhs.sort).term});
  }
  return out;
}

Translation translate_algebra(const OSAlgebra& alg, PathTieBreak tie) {
  TranslationMap tm = make_translation_map(alg, tie);
  MSAlgebra ms;
  ms.name = alg.name;
  ms.signature = tm.canonicalizer.signature();
  ms.equations = tr_equations(tm, alg.equations);
  ms.core_equation.assign(ms.equations.size(), false);
  std::fill(ms.core_equation.begin() + static_cast<std::ptrdiff_t>(alg.equations.size()), ms.core_equation.end(), true);
  ms.rules = tr_rules(tm, alg.rules);
  return {std::move(ms), std::move(tm)};
}

GroundTerm untranslate(const TranslationMap& tm, const GroundTerm& t) {
  if (tm.canonicalizer.is_cast(t.constructor)) return untranslate(tm, t.args.at(0));
  auto origin = tm.origin_of(t.constructor);
  if (!origin || origin->arity() != t.args.size()) {
    throw Error(ErrorCode::not_in_image, to_string(t) + " is not the translation of an order-sorted term");
  }
  GroundTerm out(origin->constructor);
  out.args.reserve(t.args.size());
  for (const auto& a : t.args) out.args.push_back(untranslate(tm, a));
  return out;
}

}  // namespace ostr
