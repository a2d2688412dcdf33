#include "ostr/validity.hpp"

#include <algorithm>
#include <set>

#include "ostr/error.hpp"

namespace ostr {

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::not_sensible: return "not-sensible";
    case ViolationKind::not_strong_sensible: return "not-strong-sensible";
    case ViolationKind::overloaded_constant: return "overloaded-constant";
    case ViolationKind::no_maximal_operator: return "no-maximal-operator";
    case ViolationKind::rule_not_sort_decreasing: return "rule-not-sort-decreasing";
    case ViolationKind::equation_sorts_differ: return "equation-sorts-differ";
    case ViolationKind::ill_formed_pattern: return "ill-formed-pattern";
    case ViolationKind::unbound_rule_variable: return "unbound-rule-variable";
    case ViolationKind::unique_top: return "unique-top";
  }
  return "unknown";
}

bool argument_compatible(const SortPoset& p, const Operator& f, const Operator& g) {
  if (f.constructor != g.constructor || f.arity() != g.arity()) return false;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (!p.common_supersort_exists(f.arg_sorts[i], g.arg_sorts[i])) return false;
  }
  return true;
}

namespace {

// Visits each unordered pair of distinct argument-compatible operators once.
template <typename Fn>
void for_each_compatible_pair(const OSSignature& sig, Fn&& fn) {
  const auto& ops = sig.operators();
  for (const auto& ctor : sig.table().constructors()) {
    const auto& idx = sig.table().operators_named(ctor);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (argument_compatible(sig.poset(), ops[idx[a]], ops[idx[b]])) fn(ops[idx[a]], ops[idx[b]]);
      }
    }
  }
}

}  // namespace

CheckResult check_sensible(const OSAlgebra& alg) {
  CheckResult out;
  const auto& poset = alg.signature.poset();
  for_each_compatible_pair(alg.signature, [&](const Operator& f, const Operator& g) {
    if (!poset.common_supersort_exists(f.target, g.target)) {
      out.ok = false;
      out.violations.push_back({ViolationKind::not_sensible,
                                to_string(f) + " and " + to_string(g) + " have targets without a common supersort"});
    }
  });
  return out;
}

CheckResult check_strong_sensible(const OSAlgebra& alg) {
  CheckResult out;
  for_each_compatible_pair(alg.signature, [&](const Operator& f, const Operator& g) {
    if (f.arity() == 0) {
      out.ok = false;
      out.violations.push_back({ViolationKind::overloaded_constant, "constant " + f.constructor + " is overloaded"});
    } else if (f.target != g.target) {
      out.ok = false;
      out.violations.push_back({ViolationKind::not_strong_sensible,
                                to_string(f) + " and " + to_string(g) + " are argument compatible with different targets"});
    }
  });
  return out;
}

RepresentativeResult check_maximal_argument_bounding(const OSAlgebra& alg) {
  RepresentativeResult out;
  const auto& sig = alg.signature;
  const auto& poset = sig.poset();
  const auto& ops = sig.operators();
  for (std::size_t f = 0; f < ops.size(); ++f) {
    std::vector<std::size_t> group;
    for (std::size_t g : sig.table().operators_named(ops[f].constructor)) {
      if (argument_compatible(poset, ops[f], ops[g])) group.push_back(g);
    }
    std::optional<std::size_t> rep;
    for (std::size_t cand : group) {
      bool bounds_all = std::all_of(group.begin(), group.end(), [&](std::size_t other) {
        if (!argument_compatible(poset, ops[cand], ops[other])) return false;
        for (std::size_t i = 0; i < ops[cand].arity(); ++i) {
          if (!poset.leq(ops[other].arg_sorts[i], ops[cand].arg_sorts[i])) return false;
        }
        return true;
      });
      if (bounds_all) {
        rep = cand;
        break;
      }
    }
    if (rep) {
      out.representative[f] = *rep;
    } else {
      out.ok = false;
      out.violations.push_back({ViolationKind::no_maximal_operator,
                                "no operator bounds the arguments of every operator compatible with " + to_string(ops[f])});
    }
  }
  return out;
}

CheckResult check_rules_sort_decreasing(const OSAlgebra& alg) {
  CheckResult out;
  const auto& sig = alg.signature;
  for (std::size_t i = 0; i < alg.rules.size(); ++i) {
    const Rule& r = alg.rules[i];
    std::string label = "rule " + std::to_string(i) + " (" + to_string(r.lhs) + " => " + to_string(r.rhs) + ")";
    auto ls = try_least_sort(sig, r.lhs);
    auto rs = try_least_sort(sig, r.rhs);
    if (!ls || !rs) {
      out.ok = false;
      out.violations.push_back({ViolationKind::ill_formed_pattern, label + " is not well-formed"});
      continue;
    }
    if (!sig.poset().leq(*rs, *ls)) {
      out.ok = false;
      out.violations.push_back({ViolationKind::rule_not_sort_decreasing,
                                label + ": " + rs->name() + " is not below " + ls->name()});
    }
    auto lhs_vars = variables_of(r.lhs);
    for (const auto& [name, sort] : variables_of(r.rhs)) {
      if (!lhs_vars.count(name)) {
        out.ok = false;
        out.violations.push_back({ViolationKind::unbound_rule_variable, label + ": " + name + " does not occur on the left"});
      }
    }
  }
  return out;
}

CheckResult check_equations_sort_equal(const OSAlgebra& alg) {
  CheckResult out;
  const auto& sig = alg.signature;
  for (std::size_t i = 0; i < alg.equations.size(); ++i) {
    const Equation& e = alg.equations[i];
    std::string label = "equation " + std::to_string(i) + " (" + to_string(e.lhs) + " = " + to_string(e.rhs) + ")";
    auto ls = try_least_sort(sig, e.lhs);
    auto rs = try_least_sort(sig, e.rhs);
    if (!ls || !rs) {
      out.ok = false;
      out.violations.push_back({ViolationKind::ill_formed_pattern, label + " is not well-formed"});
    } else if (*ls != *rs) {
      out.ok = false;
      out.violations.push_back({ViolationKind::equation_sorts_differ, label + ": " + ls->name() + " vs " + rs->name()});
    }
  }
  return out;
}

ValidityReport check_algebra(const OSAlgebra& alg) {
  ValidityReport report;
  auto append = [&](std::vector<Violation>& from) {
    report.violations.insert(report.violations.end(), from.begin(), from.end());
  };
  for (const auto& v : check_unique_tops(alg.signature.poset())) {
    report.unique_tops = false;
    std::string tops;
    for (const auto& s : v.maximal_upper_bounds) tops += (tops.empty() ? "" : ", ") + s.name();
    report.violations.push_back({ViolationKind::unique_top, v.first.name() + " and " + v.second.name() +
                                                                " have maximal common supersorts {" + tops + "}"});
  }
  auto sensible = check_sensible(alg);
  report.sensible = sensible.ok;
  append(sensible.violations);
  auto strong = check_strong_sensible(alg);
  report.strong_sensible = strong.ok;
  append(strong.violations);
  auto maxarg = check_maximal_argument_bounding(alg);
  report.maximal_argument_bounding = maxarg.ok;
  append(maxarg.violations);
  report.strictly_sensible = report.strong_sensible && report.maximal_argument_bounding;
  auto eqs = check_equations_sort_equal(alg);
  report.equations_sort_equal = eqs.ok;
  append(eqs.violations);
  auto rules = check_rules_sort_decreasing(alg);
  report.rules_sort_decreasing = rules.ok;
  append(rules.violations);
  return report;
}

}  // namespace ostr
