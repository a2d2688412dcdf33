#include "ostr/bisim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include "ostr/error.hpp"

namespace ostr {

std::string_view direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

// ---- enumeration ----

namespace {

struct OpInfo {
  std::vector<std::size_t> args;
  std::size_t target;
};

struct OpGroup {
  std::string ctor;
  std::size_t arity;
  std::vector<OpInfo> ops;
};

// Sort-index view of a signature: `leq` is the subsort order for order-sorted
// signatures and plain equality for many-sorted ones.
struct Grammar {
  std::vector<Sort> sorts;
  std::vector<OpGroup> groups;
  std::vector<std::vector<bool>> leq;

  std::optional<std::size_t> result_sort(const OpGroup& g, const std::vector<std::size_t>& kids) const {
    std::vector<std::size_t> targets;
    for (const auto& op : g.ops) {
      bool ok = true;
      for (std::size_t i = 0; i < kids.size() && ok; ++i) ok = leq[kids[i]][op.args[i]];
      if (ok) targets.push_back(op.target);
    }
    for (std::size_t cand : targets) {
      if (std::all_of(targets.begin(), targets.end(), [&](std::size_t o) { return leq[cand][o]; })) return cand;
    }
    return std::nullopt;
  }
};

template <typename Table>
std::vector<OpGroup> group_operators(const Table& table, const std::map<Sort, std::size_t>& index) {
  std::vector<OpGroup> groups;
  for (const auto& ctor : table.constructors()) {
    std::map<std::size_t, OpGroup> by_arity;
    for (std::size_t i : table.operators_named(ctor)) {
      const Operator& op = table.operators()[i];
      OpGroup& g = by_arity[op.arity()];
      g.ctor = ctor;
      g.arity = op.arity();
      OpInfo info{{}, index.at(op.target)};
      for (const auto& s : op.arg_sorts) info.args.push_back(index.at(s));
      g.ops.push_back(std::move(info));
    }
    for (auto& [arity, g] : by_arity) groups.push_back(std::move(g));
  }
  return groups;
}

struct Slot {
  GroundTerm term;
  std::size_t sort;
  std::size_t height;
};

// Every well-formed term of height <= depth, layer by layer.
std::vector<GroundTerm> enumerate_all(const Grammar& gr, const std::optional<std::size_t>& filter, std::size_t depth) {
  std::vector<GroundTerm> out;
  std::vector<Slot> all;  // every layer below the current one
  for (std::size_t k = 0; k <= depth; ++k) {
    std::vector<Slot> layer;
    for (const auto& g : gr.groups) {
      if ((k == 0) != (g.arity == 0)) continue;
      if (g.arity == 0) {
        if (auto s = gr.result_sort(g, {})) layer.push_back({GroundTerm(g.ctor), *s, 0});
        continue;
      }
      // Candidates per argument position: lower terms fitting some operator there.
      std::vector<std::vector<std::size_t>> cand(g.arity);
      for (std::size_t i = 0; i < g.arity; ++i) {
        for (std::size_t x = 0; x < all.size(); ++x) {
          bool fits = std::any_of(g.ops.begin(), g.ops.end(),
                                  [&](const OpInfo& op) { return gr.leq[all[x].sort][op.args[i]]; });
          if (fits) cand[i].push_back(x);
        }
      }
      if (std::any_of(cand.begin(), cand.end(), [](const auto& c) { return c.empty(); })) continue;
      std::vector<std::size_t> odo(g.arity, 0);
      std::vector<std::size_t> kids(g.arity);
      while (true) {
        std::size_t h = 0;
        for (std::size_t i = 0; i < g.arity; ++i) {
          const Slot& sl = all[cand[i][odo[i]]];
          kids[i] = sl.sort;
          h = std::max(h, sl.height);
        }
        if (h + 1 == k) {
          if (auto s = gr.result_sort(g, kids)) {
            GroundTerm t(g.ctor);
            for (std::size_t i = 0; i < g.arity; ++i) t.args.push_back(all[cand[i][odo[i]]].term);
            layer.push_back({std::move(t), *s, k});
          }
        }
        std::size_t i = g.arity;
        while (i > 0) {
          --i;
          if (++odo[i] < cand[i].size()) break;
          odo[i] = 0;
          if (i == 0) goto done;
        }
      }
    done:;
    }
    for (const auto& sl : layer) {
      if (!filter || gr.leq[sl.sort][*filter]) out.push_back(sl.term);
    }
    if (k < depth) {
      for (auto& sl : layer) all.push_back(std::move(sl));
    }
  }
  return out;
}

// Term counts by exact height and least sort, with the productions behind them,
// for counting and uniform sampling without listing every term.
class TermCounts {
 public:
  TermCounts(const Grammar& gr, std::size_t depth) : gr_(gr), count_(depth + 1, std::vector<double>(gr.sorts.size(), 0)) {
    prods_.resize(depth + 1, std::vector<std::vector<Production>>(gr.sorts.size()));
    for (std::size_t h = 0; h <= depth; ++h) {
      for (std::size_t gi = 0; gi < gr.groups.size(); ++gi) {
        const OpGroup& g = gr.groups[gi];
        if ((h == 0) != (g.arity == 0)) continue;
        std::vector<std::pair<std::size_t, std::size_t>> kids(g.arity);  // (height, sort)
        add_products(h, gi, 0, kids, false);
      }
    }
    for (const auto& row : prods_) {
      auto& picks = pick_.emplace_back();
      for (const auto& ps : row) {
        std::vector<double> w;
        for (const auto& p : ps) w.push_back(p.weight);
        picks.emplace_back(w.begin(), w.end());
      }
    }
  }

  double total(const std::optional<std::size_t>& filter) const {
    double n = 0;
    for (const auto& row : count_) {
      for (std::size_t s = 0; s < row.size(); ++s) {
        if (!filter || gr_.leq[s][*filter]) n += row[s];
      }
    }
    return n;
  }

  GroundTerm sample(const std::optional<std::size_t>& filter, std::mt19937_64& rng) const {
    std::vector<double> w;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t h = 0; h < count_.size(); ++h) {
      for (std::size_t s = 0; s < count_[h].size(); ++s) {
        if (count_[h][s] > 0 && (!filter || gr_.leq[s][*filter])) {
          w.push_back(count_[h][s]);
          cells.emplace_back(h, s);
        }
      }
    }
    std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
    auto [h, s] = cells[pick(rng)];
    return sample_cell(h, s, rng);
  }

 private:
  struct Production {
    std::size_t group;
    std::vector<std::pair<std::size_t, std::size_t>> kids;
    double weight;
  };

  void add_products(std::size_t h, std::size_t gi, std::size_t i, std::vector<std::pair<std::size_t, std::size_t>>& kids,
                    bool reached) {
    const OpGroup& g = gr_.groups[gi];
    if (i == g.arity) {
      if (g.arity > 0 && !reached) return;
      std::vector<std::size_t> sorts;
      double weight = 1;
      for (const auto& [kh, ks] : kids) {
        sorts.push_back(ks);
        weight *= count_[kh][ks];
      }
      if (weight == 0) return;
      auto s = gr_.result_sort(g, sorts);
      if (!s) return;
      count_[h][*s] += weight;
      prods_[h][*s].push_back({gi, kids, weight});
      return;
    }
    for (std::size_t kh = 0; kh < h; ++kh) {
      for (std::size_t ks = 0; ks < gr_.sorts.size(); ++ks) {
        if (count_[kh][ks] == 0) continue;
        bool fits = std::any_of(g.ops.begin(), g.ops.end(), [&](const OpInfo& op) { return gr_.leq[ks][op.args[i]]; });
        if (!fits) continue;
        kids[i] = {kh, ks};
        add_products(h, gi, i + 1, kids, reached || kh + 1 == h);
      }
    }
  }

  GroundTerm sample_cell(std::size_t h, std::size_t s, std::mt19937_64& rng) const {
    const Production& p = prods_[h][s][pick_[h][s](rng)];
    GroundTerm t(gr_.groups[p.group].ctor);
    for (const auto& [kh, ks] : p.kids) t.args.push_back(sample_cell(kh, ks, rng));
    return t;
  }

  const Grammar& gr_;
  std::vector<std::vector<double>> count_;
  std::vector<std::vector<std::vector<Production>>> prods_;
  mutable std::vector<std::vector<std::discrete_distribution<std::size_t>>> pick_;
};

Enumeration enumerate(const Grammar& gr, const std::optional<std::size_t>& filter, std::size_t depth,
                      std::size_t max_terms, std::uint64_t seed) {
  Enumeration out;
  TermCounts counts(gr, depth);
  const double total = counts.total(filter);
  constexpr double huge = 1e18;
  out.total = total >= huge ? static_cast<std::size_t>(huge) : static_cast<std::size_t>(total + 0.5);
  if (total <= static_cast<double>(max_terms)) {
    out.terms = enumerate_all(gr, filter, depth);
    return out;
  }
  // Too many to list: a seeded uniform sample without repeats.
  out.truncated = true;
  std::mt19937_64 rng(seed);
  std::unordered_set<GroundTerm> seen;
  const std::size_t attempts = 20 * max_terms;
  for (std::size_t a = 0; a < attempts && out.terms.size() < max_terms; ++a) {
    GroundTerm t = counts.sample(filter, rng);
    if (seen.insert(t).second) out.terms.push_back(std::move(t));
  }
  return out;
}

std::map<Sort, std::size_t> index_sorts(const std::vector<Sort>& sorts) {
  std::map<Sort, std::size_t> index;
  for (std::size_t i = 0; i < sorts.size(); ++i) index[sorts[i]] = i;
  return index;
}

}  // namespace

Enumeration enumerate_ground_terms(const OSSignature& sig, const std::optional<Sort>& sort, std::size_t depth,
                                   std::size_t max_terms, std::uint64_t seed) {
  Grammar gr;
  gr.sorts = sig.sorts();
  auto index = index_sorts(gr.sorts);
  gr.groups = group_operators(sig.table(), index);
  gr.leq.assign(gr.sorts.size(), std::vector<bool>(gr.sorts.size(), false));
  for (std::size_t a = 0; a < gr.sorts.size(); ++a) {
    for (std::size_t b = 0; b < gr.sorts.size(); ++b) gr.leq[a][b] = sig.poset().leq(gr.sorts[a], gr.sorts[b]);
  }
  std::optional<std::size_t> filter;
  if (sort) {
    sig.poset().index_of(*sort);  // throws on unknown sorts
    filter = index.at(*sort);
  }
  return enumerate(gr, filter, depth, max_terms, seed);
}

Enumeration enumerate_ground_terms(const MSSignature& sig, const std::optional<Sort>& sort, std::size_t depth,
                                   std::size_t max_terms, std::uint64_t seed) {
  Grammar gr;
  gr.sorts = sig.sorts();
  auto index = index_sorts(gr.sorts);
  gr.groups = group_operators(sig.table(), index);
  gr.leq.assign(gr.sorts.size(), std::vector<bool>(gr.sorts.size(), false));
  for (std::size_t a = 0; a < gr.sorts.size(); ++a) gr.leq[a][a] = true;
  std::optional<std::size_t> filter;
  if (sort) {
    auto it = index.find(*sort);
    if (it == index.end()) throw Error(ErrorCode::unknown_sort, "unknown sort " + sort->name());
    filter = it->second;
  }
  return enumerate(gr, filter, depth, max_terms, seed);
}

// ---- simulation checks ----

namespace {

EClassBudget budget_of(const BisimConfig& cfg) {
  return {cfg.eclass_depth, cfg.eclass_max, cfg.eclass_height.value_or(0), cfg.eclass_nodes.value_or(0)};
}

enum class Verdict { matched, missing, unknown };

// Is some member of target's bounded class among `results`?
Verdict find_equivalent(const RewriteTheory& theory, const GroundTerm& target,
                        const std::unordered_set<GroundTerm>& results, const EClassBudget& budget) {
  if (results.count(target)) return Verdict::matched;
  if (results.empty()) return Verdict::missing;
  EClassApprox cls = e_class_bounded(theory, target, budget);
  for (const auto& m : cls.members) {
    if (results.count(m)) return Verdict::matched;
  }
  return cls.exhausted ? Verdict::missing : Verdict::unknown;
}

// Steps of a set with duplicate (rule, result) pairs removed, first occurrence kept.
std::vector<const RewriteStep*> distinct_steps(const StepSet& set) {
  std::vector<const RewriteStep*> out;
  std::map<std::size_t, std::unordered_set<GroundTerm>> seen;
  for (const auto& s : set.steps) {
    if (seen[s.rule_index].insert(s.result).second) out.push_back(&s);
  }
  return out;
}

// Rules correspond by position across the translation.
void require_matching_rules(const OSAlgebra& os, const MSAlgebra& ms) {
  if (os.rules.size() != ms.rules.size()) {
    throw Error(ErrorCode::invalid_algebra, "rule counts differ: " + std::to_string(os.rules.size()) + " vs " +
                                                std::to_string(ms.rules.size()));
  }
}

}  // namespace

BisimReport check_forward(const OSAlgebra& os, const MSAlgebra& ms, const TranslationMap& tm, const BisimConfig& cfg) {
  require_matching_rules(os, ms);
  BisimReport report;
  OrderSortedTheory ost(os);
  ManySortedTheory mst(ms, CoreMode::canonical, tm.tie_break);
  const EClassBudget budget = budget_of(cfg);
  Enumeration en = enumerate_ground_terms(os.signature, std::nullopt, cfg.term_depth, cfg.max_terms, cfg.seed);
  report.truncated = en.truncated;

  for (const auto& t : en.terms) {
    ++report.terms_checked;
    GroundTerm p = tr_term(tm, t);
    if (untranslate(tm, p) != t) ++report.roundtrip_failures;
    StepSet os_steps = rewrite_step(ost, t, budget);
    if (!os_steps.complete()) {
      ++report.skipped_unexhausted;
      continue;
    }
    if (os_steps.steps.empty()) continue;
    // Steps modulo equations may leave the source's least sort; those are compared
    // at the top of its component, where the translated source sits under casts.
    const Sort ls = least_sort(os.signature, t);
    const Sort top = os.signature.poset().component_top(ls).value_or(ls);
    std::map<Sort, std::optional<std::vector<std::unordered_set<GroundTerm>>>> results_at;
    auto results_for = [&](const Sort& at) -> const std::optional<std::vector<std::unordered_set<GroundTerm>>>& {
      auto it = results_at.find(at);
      if (it != results_at.end()) return it->second;
      auto& slot = results_at[at];
      StepSet ms_steps = rewrite_step(mst, mst.canonicalizer().wrap(p, ls, at), budget);
      if (ms_steps.complete()) {
        slot.emplace(ms.rules.size());
        for (const auto& s : ms_steps.steps) (*slot)[s.rule_index].insert(s.result);
      }
      return slot;
    };
    if (!results_for(ls)) {
      ++report.skipped_unexhausted;
      continue;
    }

    bool unknown = false;
    for (const RewriteStep* s : distinct_steps(os_steps)) {
      ++report.forward_steps;
      // The step may exist only above ls, where the class holds terms of bigger sorts.
      const Sort rs = least_sort(os.signature, s->result);
      Verdict v = Verdict::missing;
      std::vector<Sort> sorts;
      if (os.signature.poset().leq(rs, ls)) sorts.push_back(ls);
      if (top != ls) sorts.push_back(top);
      GroundTerm expect;
      for (const Sort& at : sorts) {
        const auto& results = results_for(at);
        expect = mst.normalize(tr_term(tm, s->result, at));
        Verdict w = results ? find_equivalent(mst, expect, (*results)[s->rule_index], budget) : Verdict::unknown;
        if (w == Verdict::matched || v == Verdict::missing) v = w;
        if (v == Verdict::matched) break;
      }
      if (v == Verdict::unknown) unknown = true;
      if (v != Verdict::missing) continue;
      report.forward_failures.push_back({Direction::forward, t, s->rule_index, s->rule, *s,
                                         "no translated step of rule " + std::to_string(s->rule_index) + " reaches " +
                                             to_string(expect)});
    }
    if (unknown) ++report.skipped_unexhausted;
  }
  return report;
}

BisimReport check_backward(const OSAlgebra& os, const MSAlgebra& ms, const TranslationMap& tm, const BisimConfig& cfg) {
  require_matching_rules(os, ms);
  BisimReport report;
  OrderSortedTheory ost(os);
  ManySortedTheory mst(ms, CoreMode::canonical, tm.tie_break);
  const EClassBudget budget = budget_of(cfg);
  Enumeration en = enumerate_ground_terms(ms.signature, std::nullopt, cfg.term_depth, cfg.max_terms, cfg.seed);
  report.truncated = en.truncated;
  const CoreCanonicalizer& canon = mst.canonicalizer();

  std::unordered_set<GroundTerm> done;
  for (const auto& raw : en.terms) {
    GroundTerm p = canon.canonicalize(raw);
    if (!done.insert(p).second) continue;
    ++report.backward_terms_checked;
    const Sort sp = canon.sort_of(p);
    GroundTerm t;
    try {
      t = untranslate(tm, p);
      if (canon.canonicalize(tr_term(tm, t, sp)) != p) {
        ++report.skipped_not_in_image;
        continue;
      }
    } catch (const Error&) {
      ++report.skipped_not_in_image;
      continue;
    }
    StepSet ms_steps = rewrite_step(mst, p, budget);
    if (!ms_steps.complete()) {
      ++report.skipped_unexhausted;
      continue;
    }
    if (ms_steps.steps.empty()) continue;
    StepSet os_steps = rewrite_step(ost, t, budget);
    if (!os_steps.complete()) {
      ++report.skipped_unexhausted;
      continue;
    }
    // Results are also compared at the component top, where bigger sorts are visible.
    const Sort top = os.signature.poset().component_top(sp).value_or(sp);
    std::vector<std::unordered_set<GroundTerm>> images(os.rules.size()), lifted(os.rules.size());
    for (const auto& s : os_steps.steps) {
      const Sort rs = least_sort(os.signature, s.result);
      if (os.signature.poset().leq(rs, sp)) images[s.rule_index].insert(canon.canonicalize(tr_term(tm, s.result, sp)));
      lifted[s.rule_index].insert(canon.canonicalize(tr_term(tm, s.result, top)));
    }

    bool unknown = false;
    for (const RewriteStep* s : distinct_steps(ms_steps)) {
      ++report.backward_steps;
      Verdict v = find_equivalent(mst, s->result, images[s->rule_index], budget);
      if (v != Verdict::matched && top != sp) {
        Verdict w = find_equivalent(mst, canon.wrap(s->result, sp, top), lifted[s->rule_index], budget);
        if (w == Verdict::matched || v == Verdict::missing) v = w;
      }
      if (v == Verdict::unknown) unknown = true;
      if (v != Verdict::missing) continue;
      report.backward_failures.push_back({Direction::backward, p, s->rule_index, s->rule, *s,
                                          "no order-sorted step of rule " + std::to_string(s->rule_index) + " from " +
                                              to_string(t) + " translates to " + to_string(s->result)});
    }
    if (unknown) ++report.skipped_unexhausted;
  }
  return report;
}

BisimReport run_bisim(const OSAlgebra& os, const BisimConfig& cfg) {
  Translation tr = translate_algebra(os);
  BisimReport report = check_forward(os, tr.algebra, tr.map, cfg);
  if (cfg.backward) {
    BisimReport back = check_backward(os, tr.algebra, tr.map, cfg);
    report.backward_terms_checked = back.backward_terms_checked;
    report.backward_steps = back.backward_steps;
    report.backward_failures = std::move(back.backward_failures);
    report.skipped_unexhausted += back.skipped_unexhausted;
    report.skipped_not_in_image += back.skipped_not_in_image;
    report.truncated = report.truncated || back.truncated;
  }
  return report;
}

}  // namespace ostr
