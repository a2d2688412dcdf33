#include "ostr/sort_poset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "ostr/error.hpp"

namespace ostr {

SortPoset SortPoset::build(std::vector<Sort> sorts, std::vector<SortPair> pairs) {
  SortPoset p;
  p.sorts_ = std::move(sorts);
  for (std::size_t i = 0; i < p.sorts_.size(); ++i) {
    if (!p.index_.emplace(p.sorts_[i], i).second) {
      throw Error(ErrorCode::duplicate_declaration, "sort " + p.sorts_[i].name() + " declared twice");
    }
  }
  const std::size_t n = p.sorts_.size();
  p.succ_.assign(n, {});
  for (const auto& [lo, hi] : pairs) {
    if (!p.contains(lo)) throw Error(ErrorCode::unknown_sort, "unknown sort " + lo.name());
    if (!p.contains(hi)) throw Error(ErrorCode::unknown_sort, "unknown sort " + hi.name());
    if (lo == hi) throw Error(ErrorCode::cycle_detected, "subsort pair " + lo.name() + " < " + hi.name());
    auto& out = p.succ_[p.index_.at(lo)];
    std::size_t target = p.index_.at(hi);
    if (std::find(out.begin(), out.end(), target) == out.end()) {
      out.push_back(target);
      p.pairs_.emplace_back(lo, hi);
    }
  }
  for (auto& out : p.succ_) {
    std::sort(out.begin(), out.end(),
              [&](std::size_t a, std::size_t b) { return p.sorts_[a].name() < p.sorts_[b].name(); });
  }

  // Cycle check by colouring DFS.
  std::vector<int> colour(n, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    colour[v] = 1;
    for (std::size_t w : p.succ_[v]) {
      if (colour[w] == 1) {
        throw Error(ErrorCode::cycle_detected,
                    "subsort pairs form a cycle through " + p.sorts_[v].name() + " and " + p.sorts_[w].name());
      }
      if (colour[w] == 0) visit(w);
    }
    colour[v] = 2;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (colour[v] == 0) visit(v);
  }

  p.closure_.assign(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> stack{v};
    p.closure_[v][v] = true;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : p.succ_[u]) {
        if (!p.closure_[v][w]) {
          p.closure_[v][w] = true;
          stack.push_back(w);
        }
      }
    }
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : p.succ_[v]) parent[find(v)] = find(w);
  }
  p.component_.resize(n);
  for (std::size_t v = 0; v < n; ++v) p.component_[v] = find(v);
  return p;
}

std::size_t SortPoset::index_of(const Sort& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw Error(ErrorCode::unknown_sort, "unknown sort " + s.name());
  return it->second;
}

bool SortPoset::leq(const Sort& lo, const Sort& hi) const { return closure_[index_of(lo)][index_of(hi)]; }

bool SortPoset::common_supersort_exists(const Sort& a, const Sort& b) const {
  std::size_t ia = index_of(a), ib = index_of(b);
  for (std::size_t u = 0; u < sorts_.size(); ++u) {
    if (closure_[ia][u] && closure_[ib][u]) return true;
  }
  return false;
}

std::optional<Sort> SortPoset::component_top(const Sort& s) const {
  std::size_t comp = component_[index_of(s)];
  std::optional<Sort> top;
  for (std::size_t v = 0; v < sorts_.size(); ++v) {
    if (component_[v] != comp || !succ_[v].empty()) continue;
    if (top) return std::nullopt;
    top = sorts_[v];
  }
  return top;
}

std::vector<SortPair> SortPoset::closure_pairs() const {
  std::vector<SortPair> out;
  for (std::size_t a = 0; a < sorts_.size(); ++a) {
    for (std::size_t b = 0; b < sorts_.size(); ++b) {
      if (closure_[a][b]) out.emplace_back(sorts_[a], sorts_[b]);
    }
  }
  return out;
}

std::vector<UniqueTopViolation> check_unique_tops(const SortPoset& p) {
  std::vector<UniqueTopViolation> out;
  const auto& sorts = p.sorts();
  const std::size_t n = sorts.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p.component_of(sorts[a]) != p.component_of(sorts[b])) continue;
      std::vector<std::size_t> upper;
      for (std::size_t u = 0; u < n; ++u) {
        if (p.leq(a, u) && p.leq(b, u)) upper.push_back(u);
      }
      std::vector<Sort> maximal;
      for (std::size_t u : upper) {
        bool dominated = std::any_of(upper.begin(), upper.end(),
                                     [&](std::size_t w) { return w != u && p.leq(u, w); });
        if (!dominated) maximal.push_back(sorts[u]);
      }
      if (maximal.size() != 1) out.push_back({sorts[a], sorts[b], std::move(maximal)});
    }
  }
  return out;
}

std::vector<SortPath> enumerate_paths(const SortPoset& p, const Sort& from, const Sort& to) {
  std::size_t src = p.index_of(from), dst = p.index_of(to);
  std::vector<SortPath> out;
  if (src == dst || !p.leq(src, dst)) return out;
  std::vector<std::size_t> path{src};
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == dst) {
      SortPath sp;
      for (std::size_t i : path) sp.push_back(p.sorts()[i]);
      out.push_back(std::move(sp));
      return;
    }
    for (std::size_t w : p.successors(v)) {
      if (!p.leq(w, dst)) continue;
      path.push_back(w);
      walk(w);
      path.pop_back();
    }
  };
  walk(src);
  std::sort(out.begin(), out.end(), [](const SortPath& a, const SortPath& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Sort& x, const Sort& y) { return x.name() < y.name(); });
  });
  return out;
}

SortPath canonical_path(const SortPoset& p, const Sort& from, const Sort& to, PathTieBreak tie) {
  std::size_t src = p.index_of(from), dst = p.index_of(to);
  if (src == dst || !p.leq(src, dst)) {
    throw Error(ErrorCode::no_path, "no subsort path from " + from.name() + " to " + to.name());
  }
  // Distance to dst along base pairs, restricted to sorts below dst.
  const std::size_t n = p.size();
  constexpr std::size_t unreachable = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, unreachable);
  dist[dst] = 0;
  // Process in order of increasing distance via repeated relaxation (the graph is a DAG).
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w : p.successors(v)) {
        if (dist[w] != unreachable && (dist[v] == unreachable || dist[w] + 1 < dist[v])) {
          dist[v] = dist[w] + 1;
          changed = true;
        }
      }
    }
  }
  SortPath out{p.sorts()[src]};
  std::size_t cur = src;
  while (cur != dst) {
    std::optional<std::size_t> next;
    for (std::size_t w : p.successors(cur)) {
      if (dist[w] == unreachable || dist[w] + 1 != dist[cur]) continue;
      if (!next || tie == PathTieBreak::lexicographic_max) next = w;
      if (tie == PathTieBreak::lexicographic_min) break;
    }
    cur = *next;
    out.push_back(p.sorts()[cur]);
  }
  return out;
}

std::vector<Diamond> find_diamonds(const SortPoset& p, PathTieBreak tie) {
  std::vector<Diamond> out;
  const auto& sorts = p.sorts();
  for (std::size_t bottom = 0; bottom < p.size(); ++bottom) {
    for (std::size_t top = 0; top < p.size(); ++top) {
      if (bottom == top || !p.leq(bottom, top)) continue;
      std::vector<std::size_t> exits;
      for (std::size_t w : p.successors(bottom)) {
        if (p.leq(w, top)) exits.push_back(w);
      }
      if (exits.size() < 2) continue;
      SortPath canon = canonical_path(p, sorts[bottom], sorts[top], tie);
      for (std::size_t w : exits) {
        if (sorts[w] == canon[1]) continue;
        SortPath alt{sorts[bottom]};
        if (w == top) {
          alt.push_back(sorts[top]);
        } else {
          SortPath rest = canonical_path(p, sorts[w], sorts[top], tie);
          alt.insert(alt.end(), rest.begin(), rest.end());
        }
        out.push_back({sorts[bottom], sorts[top], canon, std::move(alt)});
      }
    }
  }
  return out;
}

}  // namespace ostr
