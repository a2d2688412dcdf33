#include "ostr/algebra.hpp"

#include <algorithm>
#include <set>

#include "ostr/error.hpp"

namespace ostr {

std::string to_string(const Operator& op) {
  std::string out = op.constructor + " :";
  for (const auto& s : op.arg_sorts) out += " " + s.name();
  out += " -> " + op.target.name();
  return out;
}

bool is_cast_name(const std::string& name) {
  static const std::string prefix = "Cast_";
  if (name.rfind(prefix, 0) != 0) return false;
  auto mid = name.find("_to_", prefix.size());
  return mid != std::string::npos && mid > prefix.size() && mid + 4 < name.size();
}

std::string cast_name(const Sort& from, const Sort& to) { return "Cast_" + from.name() + "_to_" + to.name(); }

// ---- OperatorTable ----

OperatorTable::OperatorTable(std::vector<Sort> sorts, std::vector<Operator> operators, bool same_args_distinct_targets)
    : sorts_(std::move(sorts)), ops_(std::move(operators)) {
  std::set<Sort> known(sorts_.begin(), sorts_.end());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Operator& op = ops_[i];
    for (const auto& s : op.arg_sorts) {
      if (!known.count(s)) throw Error(ErrorCode::unknown_sort, "operator " + to_string(op) + " uses unknown sort " + s.name());
    }
    if (!known.count(op.target)) {
      throw Error(ErrorCode::unknown_sort, "operator " + to_string(op) + " uses unknown sort " + op.target.name());
    }
    auto& bucket = by_name_[op.constructor];
    for (std::size_t j : bucket) {
      if (ops_[j].arg_sorts == op.arg_sorts && (!same_args_distinct_targets || ops_[j].target == op.target)) {
        throw Error(ErrorCode::duplicate_declaration, "operator " + op.constructor + " declared twice with the same argument sorts");
      }
    }
    bucket.push_back(i);
  }
}

bool OperatorTable::has_sort(const Sort& s) const { return std::find(sorts_.begin(), sorts_.end(), s) != sorts_.end(); }

const std::vector<std::size_t>& OperatorTable::operators_named(const std::string& ctor) const {
  static const std::vector<std::size_t> none;
  auto it = by_name_.find(ctor);
  return it == by_name_.end() ? none : it->second;
}

std::optional<std::size_t> OperatorTable::find(const std::string& ctor, const std::vector<Sort>& args) const {
  for (std::size_t i : operators_named(ctor)) {
    if (ops_[i].arg_sorts == args) return i;
  }
  return std::nullopt;
}

std::vector<std::string> OperatorTable::constructors() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (seen.insert(op.constructor).second) out.push_back(op.constructor);
  }
  return out;
}

// ---- signatures ----

OSSignature::OSSignature(std::vector<Sort> sorts, std::vector<SortPair> subsorts, std::vector<Operator> operators)
    : poset_(SortPoset::build(sorts, std::move(subsorts))), table_(std::move(sorts), std::move(operators), true) {
  for (const auto& op : table_.operators()) {
    std::vector<std::size_t> args;
    for (const auto& s : op.arg_sorts) args.push_back(poset_.index_of(s));
    arg_index_.push_back(std::move(args));
    target_index_.push_back(poset_.index_of(op.target));
  }
}

std::optional<std::size_t> OSSignature::least_sort_index(const GroundTerm& t) const {
  std::size_t kids[8];
  std::vector<std::size_t> many;
  std::size_t* child = kids;
  if (t.args.size() > 8) {
    many.resize(t.args.size());
    child = many.data();
  }
  for (std::size_t k = 0; k < t.args.size(); ++k) {
    auto s = least_sort_index(t.args[k]);
    if (!s) return std::nullopt;
    child[k] = *s;
  }
  const auto& named = table_.operators_named(t.constructor);
  std::size_t small[16];
  std::vector<std::size_t> large;
  std::size_t* fits = small;
  if (named.size() > 16) {
    large.resize(named.size());
    fits = large.data();
  }
  std::size_t n = 0;
  for (std::size_t i : named) {
    const auto& args = arg_index_[i];
    if (args.size() != t.args.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < args.size() && ok; ++k) ok = poset_.leq(child[k], args[k]);
    if (ok) fits[n++] = target_index_[i];
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool least = true;
    for (std::size_t b = 0; b < n && least; ++b) least = poset_.leq(fits[a], fits[b]);
    if (least) return fits[a];
  }
  return std::nullopt;
}

bool operator==(const OSSignature& a, const OSSignature& b) {
  return a.sorts() == b.sorts() && a.poset().base_pairs() == b.poset().base_pairs() && a.operators() == b.operators();
}

MSSignature::MSSignature(std::vector<Sort> sorts, std::vector<Operator> operators, std::vector<bool> non_core)
    : table_(std::move(sorts), std::move(operators)), non_core_(std::move(non_core)) {
  non_core_.resize(table_.operators().size(), false);
  for (std::size_t i = 0; i < non_core_.size(); ++i) {
    if (non_core_[i] && table_.operators()[i].arity() != 1) {
      throw Error(ErrorCode::invalid_algebra, "non-core operator " + to_string(table_.operators()[i]) + " is not unary");
    }
  }
}

bool operator==(const MSSignature& a, const MSSignature& b) {
  return a.sorts() == b.sorts() && a.operators() == b.operators() && a.non_core_ == b.non_core_;
}

std::vector<Equation> MSAlgebra::core_equations() const {
  std::vector<Equation> out;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    if (i < core_equation.size() && core_equation[i]) out.push_back(equations[i]);
  }
  return out;
}

std::size_t MSAlgebra::core_equation_count() const {
  return static_cast<std::size_t>(std::count(core_equation.begin(), core_equation.end(), true));
}

// ---- order-sorted sorting ----

std::vector<std::size_t> admissible_operators(const OSSignature& sig, const std::string& ctor,
                                              const std::vector<Sort>& child_sorts) {
  std::vector<std::size_t> out;
  const auto& poset = sig.poset();
  for (std::size_t i : sig.table().operators_named(ctor)) {
    const Operator& op = sig.operators()[i];
    if (op.arity() != child_sorts.size()) continue;
    bool ok = true;
    for (std::size_t k = 0; k < child_sorts.size() && ok; ++k) ok = poset.leq(child_sorts[k], op.arg_sorts[k]);
    if (ok) out.push_back(i);
  }
  return out;
}

namespace {

struct SortResult {
  std::optional<Sort> sort;
  ErrorCode failure = ErrorCode::ill_formed_term;
  std::string detail;
};

SortResult minimum_target(const OSSignature& sig, const std::string& ctor, const std::vector<Sort>& child_sorts) {
  auto ops = admissible_operators(sig, ctor, child_sorts);
  if (ops.empty()) {
    std::string args;
    for (const auto& s : child_sorts) args += (args.empty() ? "" : ", ") + s.name();
    return {std::nullopt, ErrorCode::ill_formed_term, "no operator " + ctor + " admits (" + args + ")"};
  }
  const auto& poset = sig.poset();
  for (std::size_t i : ops) {
    const Sort& cand = sig.operators()[i].target;
    bool least = std::all_of(ops.begin(), ops.end(),
                             [&](std::size_t j) { return poset.leq(cand, sig.operators()[j].target); });
    if (least) return {cand, {}, {}};
  }
  return {std::nullopt, ErrorCode::ambiguous_sort, "targets of " + ctor + " have no least element"};
}

SortResult least_sort_rec(const OSSignature& sig, const GroundTerm& t) {
  std::vector<Sort> child_sorts;
  child_sorts.reserve(t.args.size());
  for (const auto& a : t.args) {
    auto r = least_sort_rec(sig, a);
    if (!r.sort) return r;
    child_sorts.push_back(*r.sort);
  }
  return minimum_target(sig, t.constructor, child_sorts);
}

SortResult least_sort_rec(const OSSignature& sig, const PatternTerm& p) {
  if (p.is_variable()) {
    if (!sig.poset().contains(p.sort)) return {std::nullopt, ErrorCode::unknown_sort, "unknown sort " + p.sort.name()};
    return {p.sort, {}, {}};
  }
  std::vector<Sort> child_sorts;
  child_sorts.reserve(p.args.size());
  for (const auto& a : p.args) {
    auto r = least_sort_rec(sig, a);
    if (!r.sort) return r;
    child_sorts.push_back(*r.sort);
  }
  return minimum_target(sig, p.name, child_sorts);
}

}  // namespace

Sort least_sort(const OSSignature& sig, const GroundTerm& t) {
  if (auto i = sig.least_sort_index(t)) return sig.sorts()[*i];
  auto r = least_sort_rec(sig, t);
  if (!r.sort) throw Error(r.failure, r.detail + " in " + to_string(t));
  return *r.sort;
}

Sort least_sort(const OSSignature& sig, const PatternTerm& p) {
  auto r = least_sort_rec(sig, p);
  if (!r.sort) throw Error(r.failure, r.detail + " in " + to_string(p));
  return *r.sort;
}

std::optional<Sort> try_least_sort(const OSSignature& sig, const GroundTerm& t) {
  auto i = sig.least_sort_index(t);
  if (!i) return std::nullopt;
  return sig.sorts()[*i];
}
std::optional<Sort> try_least_sort(const OSSignature& sig, const PatternTerm& p) { return least_sort_rec(sig, p).sort; }

namespace {

// Sorts assigned to t by some admissible operator at the root, computed bottom-up
// over the full sort sets of the children (no uniqueness assumed).
std::set<Sort> possible_sorts(const OSSignature& sig, const GroundTerm& t, bool& ok) {
  std::vector<std::set<Sort>> children;
  for (const auto& a : t.args) {
    children.push_back(possible_sorts(sig, a, ok));
    if (!ok) return {};
  }
  std::set<Sort> out;
  const auto& poset = sig.poset();
  for (std::size_t i : sig.table().operators_named(t.constructor)) {
    const Operator& op = sig.operators()[i];
    if (op.arity() != t.args.size()) continue;
    bool admits = true;
    for (std::size_t k = 0; k < op.arity() && admits; ++k) {
      admits = std::any_of(children[k].begin(), children[k].end(),
                           [&](const Sort& s) { return poset.leq(s, op.arg_sorts[k]); });
    }
    if (admits) out.insert(op.target);
  }
  if (out.empty()) ok = false;
  return out;
}

}  // namespace

bool well_formed_ground(const OSSignature& sig, const GroundTerm& t) {
  bool ok = true;
  possible_sorts(sig, t, ok);
  return ok;
}

std::optional<Sort> try_term_sort(const MSSignature& sig, const GroundTerm& t) {
  std::vector<Sort> child_sorts;
  child_sorts.reserve(t.args.size());
  for (const auto& a : t.args) {
    auto s = try_term_sort(sig, a);
    if (!s) return std::nullopt;
    child_sorts.push_back(*s);
  }
  auto idx = sig.table().find(t.constructor, child_sorts);
  if (!idx) return std::nullopt;
  return sig.operators()[*idx].target;
}

Sort term_sort(const MSSignature& sig, const GroundTerm& t) {
  auto s = try_term_sort(sig, t);
  if (!s) throw Error(ErrorCode::ill_formed_term, "term " + to_string(t) + " is not well-formed");
  return *s;
}

Sort term_sort(const MSSignature& sig, const PatternTerm& p) {
  if (p.is_variable()) {
    if (!sig.table().has_sort(p.sort)) throw Error(ErrorCode::unknown_sort, "unknown sort " + p.sort.name());
    return p.sort;
  }
  std::vector<Sort> child_sorts;
  for (const auto& a : p.args) child_sorts.push_back(term_sort(sig, a));
  auto idx = sig.table().find(p.name, child_sorts);
  if (!idx) throw Error(ErrorCode::ill_formed_term, "pattern " + to_string(p) + " is not well-formed");
  return sig.operators()[*idx].target;
}

bool well_formed_ground(const MSSignature& sig, const GroundTerm& t) { return try_term_sort(sig, t).has_value(); }

// ---- patterns ----

static void collect_vars(const PatternTerm& p, std::map<std::string, Sort>& out) {
  if (p.is_variable()) {
    auto [it, fresh] = out.emplace(p.name, p.sort);
    if (!fresh && it->second != p.sort) {
      throw Error(ErrorCode::inconsistent_annotation,
                  "variable " + p.name + " annotated with " + it->second.name() + " and " + p.sort.name());
    }
    return;
  }
  for (const auto& a : p.args) collect_vars(a, out);
}

std::map<std::string, Sort> variables_of(const PatternTerm& p) {
  std::map<std::string, Sort> out;
  collect_vars(p, out);
  return out;
}

std::map<std::string, Sort> variables_of(const PatternTerm& lhs, const PatternTerm& rhs) {
  std::map<std::string, Sort> out;
  collect_vars(lhs, out);
  collect_vars(rhs, out);
  return out;
}

GroundTerm instantiate(const PatternTerm& p, const Substitution& h) {
  if (p.is_variable()) {
    auto it = h.find(p.name);
    if (it == h.end()) throw Error(ErrorCode::unbound_variable, "variable " + p.name + " is not bound");
    return it->second;
  }
  GroundTerm out(p.name);
  out.args.reserve(p.args.size());
  for (const auto& a : p.args) out.args.push_back(instantiate(a, h));
  return out;
}

GroundTerm apply_substitution(const OSSignature& sig, const PatternTerm& p, const Substitution& h) {
  for (const auto& [name, sort] : variables_of(p)) {
    auto it = h.find(name);
    if (it == h.end()) throw Error(ErrorCode::unbound_variable, "variable " + name + " is not bound");
    auto bound = try_least_sort(sig, it->second);
    if (!bound || !sig.poset().leq(*bound, sort)) {
      throw Error(ErrorCode::sort_violation, "cannot bind " + name + ":" + sort.name() + " to " + to_string(it->second));
    }
  }
  GroundTerm out = instantiate(p, h);
  if (!try_least_sort(sig, out)) throw Error(ErrorCode::ill_formed_term, "instance " + to_string(out) + " is not well-formed");
  return out;
}

GroundTerm apply_substitution(const MSSignature& sig, const PatternTerm& p, const Substitution& h) {
  for (const auto& [name, sort] : variables_of(p)) {
    auto it = h.find(name);
    if (it == h.end()) throw Error(ErrorCode::unbound_variable, "variable " + name + " is not bound");
    auto bound = try_term_sort(sig, it->second);
    if (!bound || *bound != sort) {
      throw Error(ErrorCode::sort_violation, "cannot bind " + name + ":" + sort.name() + " to " + to_string(it->second));
    }
  }
  GroundTerm out = instantiate(p, h);
  if (!try_term_sort(sig, out)) throw Error(ErrorCode::ill_formed_term, "instance " + to_string(out) + " is not well-formed");
  return out;
}

}  // namespace ostr
