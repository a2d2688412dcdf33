#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ostr/algebra.hpp"

namespace ostr {

enum class ViolationKind {
  not_sensible,
  not_strong_sensible,
  overloaded_constant,
  no_maximal_operator,
  rule_not_sort_decreasing,
  equation_sorts_differ,
  ill_formed_pattern,
  unbound_rule_variable,
  unique_top,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidityReport {
  bool sensible = true;
  bool strong_sensible = true;
  bool maximal_argument_bounding = true;
  bool strictly_sensible = true;  // strong_sensible && maximal_argument_bounding
  bool rules_sort_decreasing = true;
  bool equations_sort_equal = true;
  bool unique_tops = true;
  std::vector<Violation> violations;

  /// Everything the translation requires.
  bool translatable() const {
    return strictly_sensible && rules_sort_decreasing && equations_sort_equal && unique_tops;
  }
};

/// Same constructor, same arity, and pairwise argument sorts with a common supersort.
bool argument_compatible(const SortPoset& p, const Operator& f, const Operator& g);

struct CheckResult {
  bool ok = true;
  std::vector<Violation> violations;
};

CheckResult check_sensible(const OSAlgebra& alg);
CheckResult check_strong_sensible(const OSAlgebra& alg);

struct RepresentativeResult {
  bool ok = true;
  /// Operator index -> index of the position-wise maximal operator of its group.
  std::map<std::size_t, std::size_t> representative;
  std::vector<Violation> violations;
};

RepresentativeResult check_maximal_argument_bounding(const OSAlgebra& alg);

CheckResult check_rules_sort_decreasing(const OSAlgebra& alg);
CheckResult check_equations_sort_equal(const OSAlgebra& alg);

ValidityReport check_algebra(const OSAlgebra& alg);

}  // namespace ostr
