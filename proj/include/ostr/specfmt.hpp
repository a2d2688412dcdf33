#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ostr/algebra.hpp"
#include "ostr/error.hpp"

namespace ostr {

/// Term as written, before sorts are resolved.
struct SpecTerm {
  std::string name;
  std::string sort;  // set for variables
  bool is_variable = false;
  std::vector<SpecTerm> args;
  SourceSpan span;
};

struct SpecItem {
  enum class Kind { sorts, subsorts, op, eq, rule };

  Kind kind = Kind::sorts;
  SourceSpan span;
  std::vector<std::string> names;  // sorts
  std::vector<std::pair<std::string, std::string>> pairs;  // subsorts (sub, super)
  std::vector<SourceSpan> name_spans;  // one per name or pair
  std::string op_name;
  std::vector<std::string> op_args;
  std::string op_target;
  SpecTerm lhs;
  SpecTerm rhs;
};

struct SpecDocument {
  std::string name;
  SourceSpan name_span;
  std::vector<SpecItem> items;
};

/// Throws Error(syntax_error) with the offending line and column.
SpecDocument parse_spec(std::string_view text);
/// A single term in the same syntax, e.g. "+(0, s(0))" or "A:nat".
SpecTerm parse_spec_term(std::string_view text);

/// Resolves sorts and constructors. Throws Error with a span on unknown or duplicate
/// declarations, and Error(cast_name_reserved) for user constructors named like casts.
OSAlgebra elaborate_os(const SpecDocument& doc);
/// Cast_<a>_to_<b> operators become the non-core operators; equations between two
/// cast chains over one variable are marked as core equations.
MSAlgebra elaborate_ms(const SpecDocument& doc);

OSAlgebra parse_os_algebra(std::string_view text);
MSAlgebra parse_ms_algebra(std::string_view text);

/// Term over the constructors of `sig` (arity checked, sorts left to the caller).
PatternTerm elaborate_term(const SpecTerm& t, const OperatorTable& table);
GroundTerm parse_ground_term(std::string_view text, const OperatorTable& table);

std::string print_spec(const OSAlgebra& alg);
std::string print_spec(const MSAlgebra& alg);

/// Bundled IMP language fixture and its variant with an extra sort real,
/// nat < real < AExp, which adds a second path from nat to AExp.
std::string_view imp_fixture_text();
std::string_view imp_real_fixture_text();
OSAlgebra imp_algebra();
OSAlgebra imp_real_algebra();

}  // namespace ostr
