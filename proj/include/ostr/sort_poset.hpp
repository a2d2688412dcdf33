#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ostr/term.hpp"

namespace ostr {

using SortPair = std::pair<Sort, Sort>;  // (subsort, supersort)
using SortPath = std::vector<Sort>;

/// How ties between equally short subsort paths are broken.
enum class PathTieBreak { lexicographic_min, lexicographic_max };

/// Subsort relation generated by a set of base pairs. Immutable once built.
class SortPoset {
 public:
  SortPoset() = default;

  /// Throws Error(unknown_sort) for pairs naming unknown sorts and
  /// Error(cycle_detected) when the pairs contain a directed cycle.
  static SortPoset build(std::vector<Sort> sorts, std::vector<SortPair> pairs);

  const std::vector<Sort>& sorts() const noexcept { return sorts_; }
  const std::vector<SortPair>& base_pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return sorts_.size(); }

  bool contains(const Sort& s) const { return index_.count(s) != 0; }
  std::size_t index_of(const Sort& s) const;

  bool leq(const Sort& lo, const Sort& hi) const;
  bool leq(std::size_t lo, std::size_t hi) const { return closure_[lo][hi]; }
  bool common_supersort_exists(const Sort& a, const Sort& b) const;

  /// Direct supersorts of s in the base pairs, sorted by name.
  const std::vector<std::size_t>& successors(std::size_t s) const { return succ_[s]; }
  /// Connected component id of each sort in the undirected base-pair graph.
  std::size_t component_of(const Sort& s) const { return component_[index_of(s)]; }
  /// The unique maximal sort of the component of s, if there is exactly one.
  std::optional<Sort> component_top(const Sort& s) const;

  /// Every pair of the reflexive-transitive closure, ordered by sort index.
  std::vector<SortPair> closure_pairs() const;

 private:
  std::vector<Sort> sorts_;
  std::vector<SortPair> pairs_;
  std::unordered_map<Sort, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<bool>> closure_;
  std::vector<std::size_t> component_;
};

struct UniqueTopViolation {
  Sort first;
  Sort second;
  std::vector<Sort> maximal_upper_bounds;  // empty when the pair has no common supersort
};

/// Pairs of sorts in one component that lack a unique maximal common supersort.
std::vector<UniqueTopViolation> check_unique_tops(const SortPoset& p);

/// All simple directed paths in the base pairs from `from` to `to`, sorted.
/// Empty when from == to or from is not below to.
std::vector<SortPath> enumerate_paths(const SortPoset& p, const Sort& from, const Sort& to);

/// Shortest path from `from` to `to`; ties are broken on the sort-name sequence.
/// Throws Error(no_path) unless from < to.
SortPath canonical_path(const SortPoset& p, const Sort& from, const Sort& to,
                        PathTieBreak tie = PathTieBreak::lexicographic_min);

/// Two paths from bottom to top whose first steps differ. path_a is canonical;
/// path_b leaves the bottom along another edge and then follows the canonical
/// path from that edge's end.
struct Diamond {
  Sort bottom;
  Sort top;
  SortPath path_a;
  SortPath path_b;

  friend bool operator==(const Diamond&, const Diamond&) = default;
};

std::vector<Diamond> find_diamonds(const SortPoset& p, PathTieBreak tie = PathTieBreak::lexicographic_min);

}  // namespace ostr
