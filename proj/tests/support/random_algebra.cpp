#include "random_algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ostr/validity.hpp"

namespace ostr::testing {

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<Sort> sort_names(std::size_t n) {
  std::vector<Sort> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back("s" + std::to_string(i));
  return out;
}

struct Pools {
  const OSSignature& sig;
  std::vector<std::size_t> constants;
  std::vector<std::size_t> functions;
};

PatternTerm variable_of(std::mt19937_64& rng, const Sort& s) {
  return PatternTerm::variable(std::string(coin(rng, 0.5) ? "A_" : "B_") + s.name(), s);
}

// Random pattern whose least sort fits below `want`; nullopt when the search gives up.
std::optional<PatternTerm> random_pattern(std::mt19937_64& rng, const Pools& pools, const Sort& want, std::size_t depth) {
  const SortPoset& poset = pools.sig.poset();
  for (int attempt = 0; attempt < 20; ++attempt) {
    if (depth == 0 || coin(rng, 0.3)) {
      // A variable of some sort below `want`, or a constant.
      if (coin(rng, 0.6)) {
        std::vector<Sort> lower;
        for (const auto& s : pools.sig.sorts()) {
          if (poset.leq(s, want)) lower.push_back(s);
        }
        return variable_of(rng, lower[below(rng, lower.size())]);
      }
      const Operator& c = pools.sig.operators()[pools.constants[below(rng, pools.constants.size())]];
      if (poset.leq(c.target, want)) return PatternTerm::node(c.constructor);
      continue;
    }
    if (pools.functions.empty()) continue;
    const Operator& op = pools.sig.operators()[pools.functions[below(rng, pools.functions.size())]];
    if (!poset.leq(op.target, want)) continue;
    std::vector<PatternTerm> args;
    for (const auto& a : op.arg_sorts) {
      auto sub = random_pattern(rng, pools, a, depth - 1);
      if (!sub) break;
      args.push_back(std::move(*sub));
    }
    if (args.size() != op.arity()) continue;
    PatternTerm p = PatternTerm::node(op.constructor, std::move(args));
    auto ls = try_least_sort(pools.sig, p);
    if (ls && poset.leq(*ls, want)) return p;
  }
  return std::nullopt;
}

bool vars_within(const PatternTerm& small, const PatternTerm& big) {
  auto sv = variables_of(small);
  auto bv = variables_of(big);
  return std::all_of(sv.begin(), sv.end(), [&](const auto& kv) { return bv.count(kv.first) != 0; });
}

std::optional<OSSignature> random_signature(std::mt19937_64& rng, const RandomAlgebraLimits& limits) {
  const std::size_t n = 1 + below(rng, limits.max_sorts);
  SortPoset poset = random_poset(rng, n, true);
  const auto& sorts = poset.sorts();
  std::vector<Operator> ops;
  const std::size_t n_ops = std::min(limits.max_operators, 2 + below(rng, limits.max_operators));
  // One constant per component keeps every component inhabited.
  std::set<std::size_t> components;
  for (const auto& s : sorts) components.insert(poset.component_of(s));
  std::size_t constant_id = 0;
  for (std::size_t comp : components) {
    if (ops.size() >= n_ops) break;
    std::vector<Sort> in;
    for (const auto& s : sorts) {
      if (poset.component_of(s) == comp) in.push_back(s);
    }
    ops.push_back({"c" + std::to_string(constant_id++), {}, in[below(rng, in.size())]});
  }
  static const char* const names[] = {"f", "g", "h"};
  while (ops.size() < n_ops) {
    if (coin(rng, 0.15)) {
      ops.push_back({"c" + std::to_string(constant_id++), {}, sorts[below(rng, n)]});
      continue;
    }
    Operator op;
    op.constructor = names[below(rng, 3)];
    const std::size_t arity = 1 + below(rng, 2);
    for (std::size_t i = 0; i < arity; ++i) op.arg_sorts.push_back(sorts[below(rng, n)]);
    op.target = sorts[below(rng, n)];
    if (std::any_of(ops.begin(), ops.end(), [&](const Operator& o) {
          return o.constructor == op.constructor && o.arg_sorts == op.arg_sorts;
        })) {
      continue;
    }
    ops.push_back(std::move(op));
  }
  std::vector<SortPair> pairs = poset.base_pairs();
  OSSignature sig(sorts, pairs, ops);
  OSAlgebra probe{"probe", sig, {}, {}};
  if (!check_algebra(probe).translatable()) return std::nullopt;
  return sig;
}

}  // namespace

SortPoset random_poset(std::mt19937_64& rng, std::size_t n, bool unique_tops) {
  std::vector<Sort> sorts = sort_names(n);
  // A random order; pairs only go upward in it.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<SortPair> pairs;
  if (!unique_tops) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (coin(rng, 0.35)) pairs.emplace_back(sorts[order[i]], sorts[order[j]]);
      }
    }
    return SortPoset::build(sorts, pairs);
  }
  // Split into components; within one, every sort but the last gets one or two
  // parents later in the order, so the last sort is the only maximal one.
  std::size_t start = 0;
  while (start < n) {
    std::size_t len = 1 + below(rng, n - start);
    for (std::size_t i = start; i + 1 < start + len; ++i) {
      std::size_t span = start + len - i - 1;
      std::set<std::size_t> parents{i + 1 + below(rng, span)};
      if (span > 1 && coin(rng, 0.4)) parents.insert(i + 1 + below(rng, span));
      for (std::size_t p : parents) pairs.emplace_back(sorts[order[i]], sorts[order[p]]);
    }
    start += len;
  }
  return SortPoset::build(sorts, pairs);
}

OSAlgebra random_strictly_sensible_algebra(std::mt19937_64& rng, const RandomAlgebraLimits& limits) {
  while (true) {
    auto sig = random_signature(rng, limits);
    if (!sig) continue;
    Pools pools{*sig, {}, {}};
    for (std::size_t i = 0; i < sig->operators().size(); ++i) {
      (sig->operators()[i].arity() == 0 ? pools.constants : pools.functions).push_back(i);
    }
    OSAlgebra alg{"random", *sig, {}, {}};
    const auto& sorts = sig->sorts();

    // Candidate patterns by least sort, then pairs drawn within and below sorts.
    std::map<Sort, std::vector<PatternTerm>> by_sort;
    for (int k = 0; k < 60; ++k) {
      auto p = random_pattern(rng, pools, sorts[below(rng, sorts.size())], 2);
      if (p) by_sort[least_sort(*sig, *p)].push_back(std::move(*p));
    }
    const std::size_t want_eqs = below(rng, limits.max_equations + 1);
    const std::size_t want_rules = below(rng, limits.max_rules + 1);
    std::set<std::string> used;
    for (int k = 0; k < 200 && (alg.equations.size() < want_eqs || alg.rules.size() < want_rules); ++k) {
      const Sort& s = sorts[below(rng, sorts.size())];
      auto it = by_sort.find(s);
      if (it == by_sort.end()) continue;
      const PatternTerm& lhs = it->second[below(rng, it->second.size())];
      if (lhs.is_variable()) continue;
      bool rule = alg.rules.size() < want_rules && (alg.equations.size() >= want_eqs || coin(rng, 0.5));
      // Right sides: same least sort for equations, any sort below for rules.
      std::vector<const PatternTerm*> rhs;
      for (const auto& [rs, list] : by_sort) {
        if (rule ? !sig->poset().leq(rs, s) : rs != s) continue;
        for (const auto& r : list) {
          if (r != lhs && vars_within(r, lhs)) rhs.push_back(&r);
        }
      }
      if (rhs.empty()) continue;
      const PatternTerm& r = *rhs[below(rng, rhs.size())];
      std::string key = (rule ? "r " : "e ") + to_string(lhs) + " " + to_string(r);
      if (!used.insert(key).second) continue;
      if (rule) {
        alg.rules.push_back({lhs, r});
      } else {
        alg.equations.push_back({lhs, r});
      }
    }
    if (check_algebra(alg).translatable()) return alg;
  }
}

}  // namespace ostr::testing
