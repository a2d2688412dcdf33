#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ostr/algebra.hpp"
#include "ostr/rewrite.hpp"
#include "ostr/translation.hpp"

namespace ostr {

struct BisimConfig {
  std::size_t term_depth = 3;
  std::size_t eclass_depth = 5;
  std::size_t eclass_max = 10000;
  std::size_t max_terms = 200000;  // per direction; larger enumerations are sampled
  std::uint64_t seed = 0;
  /// Height and node caps for class members (casts not counted). Unset, or
  /// below the explored term's own measure, means that measure: the search
  /// never builds terms taller or larger than the term it starts from.
  std::optional<std::size_t> eclass_height;
  std::optional<std::size_t> eclass_nodes;
  bool backward = true;
};

enum class Direction { forward, backward };

std::string_view direction_name(Direction d);

struct Counterexample {
  Direction direction = Direction::forward;
  GroundTerm source_term;
  std::size_t rule_index = 0;
  Rule rule;
  RewriteStep witness;  // the step with no counterpart on the other side
  std::string missing;
};

struct BisimReport {
  std::size_t terms_checked = 0;           // order-sorted terms, forward direction
  std::size_t backward_terms_checked = 0;  // many-sorted terms, backward direction
  std::size_t forward_steps = 0;
  std::size_t backward_steps = 0;
  std::vector<Counterexample> forward_failures;
  std::vector<Counterexample> backward_failures;
  std::size_t skipped_unexhausted = 0;
  std::size_t skipped_not_in_image = 0;
  std::size_t roundtrip_failures = 0;  // untranslate(tr_term(t)) != t
  bool truncated = false;

  bool passed() const noexcept { return forward_failures.empty() && backward_failures.empty() && roundtrip_failures == 0; }
};

struct Enumeration {
  std::vector<GroundTerm> terms;
  std::size_t total = 0;  // well-formed terms seen, before sampling
  bool truncated = false;
};

/// Well-formed ground terms of height <= depth, lowest first. With `sort`, only
/// terms whose least sort is below it. Beyond max_terms a seeded uniform sample is kept.
Enumeration enumerate_ground_terms(const OSSignature& sig, const std::optional<Sort>& sort, std::size_t depth,
                                   std::size_t max_terms = 200000, std::uint64_t seed = 0);
Enumeration enumerate_ground_terms(const MSSignature& sig, const std::optional<Sort>& sort, std::size_t depth,
                                   std::size_t max_terms = 200000, std::uint64_t seed = 0);

BisimReport check_forward(const OSAlgebra& os, const MSAlgebra& ms, const TranslationMap& tm, const BisimConfig& cfg);
BisimReport check_backward(const OSAlgebra& os, const MSAlgebra& ms, const TranslationMap& tm, const BisimConfig& cfg);

/// Translates os and checks both directions. Throws Error(not_strictly_sensible).
BisimReport run_bisim(const OSAlgebra& os, const BisimConfig& cfg = {});

}  // namespace ostr
