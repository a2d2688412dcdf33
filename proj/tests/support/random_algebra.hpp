#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ostr/algebra.hpp"

namespace ostr::testing {

struct RandomAlgebraLimits {
  std::size_t max_sorts = 5;
  std::size_t max_operators = 8;
  std::size_t max_rules = 4;
  std::size_t max_equations = 4;
};

/// Acyclic subsort poset on s0..s(n-1). With unique_tops every component has a
/// single maximal sort; otherwise the pairs are arbitrary (still acyclic).
SortPoset random_poset(std::mt19937_64& rng, std::size_t n, bool unique_tops);

/// A random algebra that passes every validity check the translation needs.
/// Deterministic in the generator state.
OSAlgebra random_strictly_sensible_algebra(std::mt19937_64& rng, const RandomAlgebraLimits& limits = {});

}  // namespace ostr::testing
