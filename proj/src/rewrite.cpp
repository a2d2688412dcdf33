#include "ostr/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

#include "ostr/error.hpp"

namespace ostr {

bool EClassApprox::contains(const GroundTerm& t) const {
  return std::find(members.begin(), members.end(), t) != members.end();
}

// ---- theories ----

namespace {

bool covers(const std::map<std::string, Sort>& from, const std::map<std::string, Sort>& to) {
  return std::all_of(to.begin(), to.end(), [&](const auto& kv) { return from.count(kv.first) != 0; });
}

}  // namespace

RewriteTheory::RewriteTheory(std::vector<Equation> equations, std::vector<Rule> rules,
                             const std::vector<bool>& skip_equation)
    : equations_(std::move(equations)), rules_(std::move(rules)) {
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    if (i < skip_equation.size() && skip_equation[i]) continue;
    const Equation& e = equations_[i];
    auto lv = variables_of(e.lhs);
    auto rv = variables_of(e.rhs);
    if (covers(lv, rv)) oriented_.push_back({i, e.lhs, e.rhs});
    if (covers(rv, lv) && e.lhs != e.rhs) oriented_.push_back({i, e.rhs, e.lhs});
  }
}

template <typename Lhs>
RewriteTheory::Index RewriteTheory::make_index(std::size_t n, const Lhs& lhs) const {
  Index ix;
  for (std::size_t i = 0; i < n; ++i) {
    const PatternTerm& p = lhs(i);
    if (p.is_variable()) {
      ix.any.push_back(i);
      for (auto& [key, list] : ix.by_head) list.push_back(i);
    } else {
      auto [it, fresh] = ix.by_head.try_emplace(head_key(p.name), ix.any);
      it->second.push_back(i);
    }
  }
  return ix;
}

void RewriteTheory::build_index() {
  orientation_index_ = make_index(oriented_.size(), [&](std::size_t i) -> const PatternTerm& { return oriented_[i].from; });
  rule_index_ = make_index(rules_.size(), [&](std::size_t i) -> const PatternTerm& { return rules_[i].lhs; });
}

const std::vector<std::size_t>& RewriteTheory::lookup(const Index& ix, const GroundTerm& sub) const {
  auto it = ix.by_head.find(head_key(sub.constructor));
  return it == ix.by_head.end() ? ix.any : it->second;
}

const std::vector<std::size_t>& RewriteTheory::orientations_at(const GroundTerm& sub) const {
  return lookup(orientation_index_, sub);
}

const std::vector<std::size_t>& RewriteTheory::rules_at(const GroundTerm& sub) const { return lookup(rule_index_, sub); }

OrderSortedTheory::OrderSortedTheory(const OSAlgebra& alg)
    : RewriteTheory(alg.equations, alg.rules, {}), sig_(alg.signature) {
  build_index();
}

std::optional<Substitution> OrderSortedTheory::match(const PatternTerm& p, const GroundTerm& t) const {
  return match_pattern(sig_, p, t);
}

std::optional<GroundTerm> OrderSortedTheory::rewrite_at(const GroundTerm& t, const Position& pos, const PatternTerm& out,
                                                        const Substitution& h) const {
  GroundTerm w = replace_at(t, pos, instantiate(out, h));
  if (!sig_.least_sort_index(w)) return std::nullopt;
  return w;
}

ManySortedTheory::ManySortedTheory(const MSAlgebra& alg, CoreMode mode, PathTieBreak tie)
    : RewriteTheory(alg.equations, alg.rules,
                    mode == CoreMode::canonical ? alg.core_equation : std::vector<bool>{}),
      canon_(alg.signature, tie),
      mode_(mode) {
  build_index();
}

std::string ManySortedTheory::head_key(const std::string& ctor) const {
  // Cast chains match modulo core equality, so any cast may meet any other.
  return mode_ == CoreMode::canonical && canon_.is_cast(ctor) ? std::string("Cast_") : ctor;
}

bool ManySortedTheory::match_into(const PatternTerm& p, const GroundTerm& t, Substitution& h) const {
  if (p.is_variable()) {
    if (canon_.sort_of(t) != p.sort) return false;
    auto [it, fresh] = h.emplace(p.name, t);
    return fresh || it->second == t;
  }
  if (mode_ == CoreMode::canonical && canon_.is_cast(p.name)) {
    // Chains are compared modulo core equality: the subject's chain must start
    // at or below the pattern chain's bottom sort and end at the same top.
    if (!canon_.is_cast(t.constructor)) return false;
    const Sort& ptop = canon_.cast(p.name).to;
    const PatternTerm* q = &p;
    while (!q->is_variable() && canon_.is_cast(q->name)) q = &q->args.at(0);
    Sort pbottom = canon_.sort_of(*q);
    if (canon_.cast(t.constructor).to != ptop) return false;
    const GroundTerm* c = &t;
    while (canon_.is_cast(c->constructor)) c = &c->args.at(0);
    Sort tbottom = canon_.sort_of(*c);
    if (!canon_.cast_poset().leq(tbottom, pbottom)) return false;
    return match_into(*q, canon_.wrap(*c, tbottom, pbottom), h);
  }
  if (p.name != t.constructor || p.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (!match_into(p.args[i], t.args[i], h)) return false;
  }
  return true;
}

std::optional<Substitution> ManySortedTheory::match(const PatternTerm& p, const GroundTerm& t) const {
  Substitution h;
  if (!match_into(p, t, h)) return std::nullopt;
  return h;
}

std::optional<GroundTerm> ManySortedTheory::rewrite_at(const GroundTerm& t, const Position& pos, const PatternTerm& out,
                                                       const Substitution& h) const {
  GroundTerm r = instantiate(out, h);
  if (canon_.sort_of(r) != canon_.sort_of(subterm_at(t, pos))) return std::nullopt;
  return normalize(replace_at(t, pos, std::move(r)));
}

GroundTerm ManySortedTheory::normalize(const GroundTerm& t) const {
  return mode_ == CoreMode::canonical ? canon_.canonicalize(t) : t;
}

// ---- plain matching ----

namespace {

template <typename VarOk>
bool match_rec(const PatternTerm& p, const GroundTerm& t, Substitution& h, const VarOk& var_ok) {
  if (p.is_variable()) {
    if (!var_ok(p.sort, t)) return false;
    auto [it, fresh] = h.emplace(p.name, t);
    return fresh || it->second == t;
  }
  if (p.name != t.constructor || p.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (!match_rec(p.args[i], t.args[i], h, var_ok)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> match_pattern(const OSSignature& sig, const PatternTerm& p, const GroundTerm& t) {
  Substitution h;
  auto ok = [&](const Sort& s, const GroundTerm& sub) {
    auto ls = sig.least_sort_index(sub);
    return ls && sig.poset().leq(*ls, sig.poset().index_of(s));
  };
  if (!match_rec(p, t, h, ok)) return std::nullopt;
  return h;
}

std::optional<Substitution> match_pattern(const MSSignature& sig, const PatternTerm& p, const GroundTerm& t) {
  Substitution h;
  auto ok = [&](const Sort& s, const GroundTerm& sub) {
    auto ts = try_term_sort(sig, sub);
    return ts && *ts == s;
  };
  if (!match_rec(p, t, h, ok)) return std::nullopt;
  return h;
}

GroundTerm core_canonicalize(const TranslationMap& tm, const GroundTerm& t) { return tm.canonicalizer.canonicalize(t); }

// ---- equational closure ----

namespace {

struct Caps {
  std::size_t height = static_cast<std::size_t>(-1);
  std::size_t nodes = static_cast<std::size_t>(-1);

  bool admits(const RewriteTheory& theory, const GroundTerm& t) const {
    return theory.height_of(t) <= height && theory.size_of(t) <= nodes;
  }
};

Caps caps_for(const RewriteTheory& theory, const GroundTerm& seed, const EClassBudget& budget) {
  Caps c;
  if (budget.max_height) c.height = std::max(*budget.max_height, theory.height_of(seed));
  if (budget.max_nodes) c.nodes = std::max(*budget.max_nodes, theory.size_of(seed));
  return c;
}

}  // namespace

EClassApprox e_class_bounded(const RewriteTheory& theory, const GroundTerm& t, const EClassBudget& budget) {
  EClassApprox out;
  out.seed = theory.normalize(t);
  out.members.push_back(out.seed);
  std::unordered_set<GroundTerm> seen{out.seed};
  const Caps caps = caps_for(theory, out.seed, budget);

  std::vector<GroundTerm> frontier{out.seed};
  std::size_t depth = 0;
  while (true) {
    if (frontier.empty()) {
      out.exhausted = true;
      break;
    }
    std::vector<GroundTerm> next;
    for (const auto& u : frontier) {
      for (const auto& pos : positions(u)) {
        const GroundTerm& sub = subterm_at(u, pos);
        for (std::size_t oi : theory.orientations_at(sub)) {
          const auto& o = theory.orientations()[oi];
          auto h = theory.match(o.from, sub);
          if (!h) continue;
          auto w = theory.rewrite_at(u, pos, o.to, *h);
          if (!w || !caps.admits(theory, *w)) continue;
          if (seen.insert(*w).second) next.push_back(std::move(*w));
        }
      }
    }
    if (depth == budget.depth) {
      // Probe layer: anything new means the class goes on past the budget.
      out.exhausted = next.empty();
      break;
    }
    if (out.members.size() + next.size() > budget.max_size) {
      std::size_t room = budget.max_size - out.members.size();
      out.members.insert(out.members.end(), next.begin(), next.begin() + static_cast<std::ptrdiff_t>(room));
      ++depth;
      break;
    }
    out.members.insert(out.members.end(), next.begin(), next.end());
    if (!next.empty()) ++depth;
    frontier = std::move(next);
  }
  out.depth_used = depth;
  return out;
}

// ---- rule application ----

namespace {

void steps_from(const RewriteTheory& theory, const GroundTerm& u, std::vector<RewriteStep>& out) {
  const auto& rules = theory.rules();
  for (const auto& pos : positions(u)) {
    const GroundTerm& sub = subterm_at(u, pos);
    for (std::size_t r : theory.rules_at(sub)) {
      auto h = theory.match(rules[r].lhs, sub);
      if (!h) continue;
      auto w = theory.rewrite_at(u, pos, rules[r].rhs, *h);
      if (!w) continue;
      out.push_back({r, rules[r], pos, std::move(*h), u, std::move(*w)});
    }
  }
}

}  // namespace

StepSet rewrite_step(const RewriteTheory& theory, const GroundTerm& t, const EClassBudget& budget) {
  StepSet out;
  out.eclass = e_class_bounded(theory, t, budget);
  for (const auto& u : out.eclass.members) steps_from(theory, u, out.steps);
  return out;
}

std::optional<GroundTerm> replay_step(const RewriteTheory& theory, const RewriteStep& step) {
  const GroundTerm& sub = subterm_at(step.bridging_term, step.position);
  auto h = theory.match(step.rule.lhs, sub);
  if (!h || *h != step.substitution) return std::nullopt;
  return theory.rewrite_at(step.bridging_term, step.position, step.rule.rhs, *h);
}

// ---- traces ----

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "innermost" || name == "leftmost-innermost") return Strategy::leftmost_innermost;
  if (name == "outermost" || name == "leftmost-outermost") return Strategy::leftmost_outermost;
  if (name == "breadth" || name == "exhaustive-breadth") return Strategy::exhaustive_breadth;
  return std::nullopt;
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::leftmost_innermost: return "leftmost-innermost";
    case Strategy::leftmost_outermost: return "leftmost-outermost";
    case Strategy::exhaustive_breadth: return "exhaustive-breadth";
  }
  return "unknown";
}

namespace {

// Picks the step a positional strategy takes: steps on the term itself win over
// steps on other class members; then depth of position, then left to right.
const RewriteStep* pick(const std::vector<RewriteStep>& steps, const GroundTerm& current, bool innermost) {
  const RewriteStep* best = nullptr;
  auto better = [&](const RewriteStep& a, const RewriteStep& b) {
    bool a_here = a.bridging_term == current;
    bool b_here = b.bridging_term == current;
    if (a_here != b_here) return a_here;
    if (a.position.size() != b.position.size()) {
      return innermost ? a.position.size() > b.position.size() : a.position.size() < b.position.size();
    }
    if (a.position != b.position) return a.position < b.position;
    return a.rule_index < b.rule_index;
  };
  for (const auto& s : steps) {
    if (!best || better(s, *best)) best = &s;
  }
  return best;
}

}  // namespace

Trace rewrite_trace(const RewriteTheory& theory, const GroundTerm& t, Strategy strategy, std::size_t max_steps,
                    const EClassBudget& budget) {
  Trace trace;
  if (strategy == Strategy::exhaustive_breadth) {
    std::deque<GroundTerm> queue{theory.normalize(t)};
    std::unordered_set<GroundTerm> seen{queue.front()};
    while (!queue.empty() && trace.steps.size() < max_steps) {
      GroundTerm cur = std::move(queue.front());
      queue.pop_front();
      StepSet set = rewrite_step(theory, cur, budget);
      if (!set.complete()) trace.complete = false;
      for (auto& s : set.steps) {
        if (trace.steps.size() >= max_steps) break;
        if (!seen.insert(s.result).second) continue;
        queue.push_back(s.result);
        trace.steps.push_back(std::move(s));
      }
    }
    return trace;
  }
  GroundTerm cur = theory.normalize(t);
  while (trace.steps.size() < max_steps) {
    StepSet set = rewrite_step(theory, cur, budget);
    if (!set.complete()) trace.complete = false;
    const RewriteStep* s = pick(set.steps, set.eclass.seed, strategy == Strategy::leftmost_innermost);
    if (!s) break;
    cur = s->result;
    trace.steps.push_back(*s);
  }
  return trace;
}

std::string format_trace(const Trace& trace) {
  std::ostringstream os;
  for (const auto& s : trace.steps) {
    os << to_string(s.position) << "  " << s.rule_index << "  " << to_string(s.bridging_term) << " --> "
       << to_string(s.result) << "\n";
  }
  return os.str();
}

}  // namespace ostr
