#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ostr/sort_poset.hpp"
#include "ostr/term.hpp"

namespace ostr {

/// constructor : arg_sorts -> target. Overloads are distinguished by (constructor, arg_sorts).
struct Operator {
  std::string constructor;
  std::vector<Sort> arg_sorts;
  Sort target;

  std::size_t arity() const noexcept { return arg_sorts.size(); }

  friend auto operator<=>(const Operator&, const Operator&) = default;
  friend bool operator==(const Operator&, const Operator&) = default;
};

std::string to_string(const Operator& op);

struct Equation {
  PatternTerm lhs;
  PatternTerm rhs;

  friend auto operator<=>(const Equation&, const Equation&) = default;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct Rule {
  PatternTerm lhs;
  PatternTerm rhs;

  friend auto operator<=>(const Rule&, const Rule&) = default;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// True when `name` has the shape reserved for generated casts, Cast_<a>_to_<b>.
bool is_cast_name(const std::string& name);
std::string cast_name(const Sort& from, const Sort& to);

/// Shared operator table: sorts, operators, lookup by constructor.
class OperatorTable {
 public:
  OperatorTable() = default;
  /// Throws on unknown sorts and on duplicate operators. With `same_args_distinct_targets`
  /// two declarations may share (constructor, arg_sorts) if their targets differ; such
  /// signatures are rejected later by the validity checks rather than at construction.
  OperatorTable(std::vector<Sort> sorts, std::vector<Operator> operators, bool same_args_distinct_targets = false);

  const std::vector<Sort>& sorts() const noexcept { return sorts_; }
  const std::vector<Operator>& operators() const noexcept { return ops_; }
  bool has_sort(const Sort& s) const;
  /// Indices of the operators using `ctor`, in declaration order.
  const std::vector<std::size_t>& operators_named(const std::string& ctor) const;
  std::optional<std::size_t> find(const std::string& ctor, const std::vector<Sort>& args) const;
  /// Distinct constructor names in declaration order.
  std::vector<std::string> constructors() const;

 private:
  std::vector<Sort> sorts_;
  std::vector<Operator> ops_;
  std::map<std::string, std::vector<std::size_t>> by_name_;
};

/// (S, O, Φ, Σ): operators over a subsort poset.
class OSSignature {
 public:
  OSSignature() = default;
  OSSignature(std::vector<Sort> sorts, std::vector<SortPair> subsorts, std::vector<Operator> operators);

  const std::vector<Sort>& sorts() const noexcept { return poset_.sorts(); }
  const SortPoset& poset() const noexcept { return poset_; }
  const OperatorTable& table() const noexcept { return table_; }
  const std::vector<Operator>& operators() const noexcept { return table_.operators(); }

  /// Position of the least sort of t in sorts(), or nullopt if t is ill-formed
  /// or its sort is ambiguous. The fast path behind least_sort.
  std::optional<std::size_t> least_sort_index(const GroundTerm& t) const;

  friend bool operator==(const OSSignature& a, const OSSignature& b);

 private:
  SortPoset poset_;
  OperatorTable table_;
  std::vector<std::vector<std::size_t>> arg_index_;  // per operator, poset indices
  std::vector<std::size_t> target_index_;
};

/// (S, Φ, Σ) with the generated cast operators flagged as non-core.
class MSSignature {
 public:
  MSSignature() = default;
  /// Throws Error(invalid_algebra) if a non-core operator is not unary.
  MSSignature(std::vector<Sort> sorts, std::vector<Operator> operators, std::vector<bool> non_core);

  const std::vector<Sort>& sorts() const noexcept { return table_.sorts(); }
  const OperatorTable& table() const noexcept { return table_; }
  const std::vector<Operator>& operators() const noexcept { return table_.operators(); }
  bool is_non_core(std::size_t op_index) const { return non_core_.at(op_index); }
  const std::vector<bool>& non_core_flags() const noexcept { return non_core_; }

  friend bool operator==(const MSSignature& a, const MSSignature& b);

 private:
  OperatorTable table_;
  std::vector<bool> non_core_;
};

struct OSAlgebra {
  std::string name;
  OSSignature signature;
  std::vector<Equation> equations;
  std::vector<Rule> rules;

  friend bool operator==(const OSAlgebra&, const OSAlgebra&) = default;
};

struct MSAlgebra {
  std::string name;
  MSSignature signature;
  std::vector<Equation> equations;  // translated equations followed by core equations
  std::vector<Rule> rules;
  std::vector<bool> core_equation;  // parallel to `equations`

  std::vector<Equation> core_equations() const;
  std::size_t core_equation_count() const;

  friend bool operator==(const MSAlgebra&, const MSAlgebra&) = default;
};

// ---- order-sorted terms ----

/// Unique least sort of t. Throws Error(ill_formed_term) if no operator admits
/// the children, Error(ambiguous_sort) if admissible targets have no minimum.
Sort least_sort(const OSSignature& sig, const GroundTerm& t);
/// Least sort of a pattern with each variable at its declared sort.
Sort least_sort(const OSSignature& sig, const PatternTerm& p);
std::optional<Sort> try_least_sort(const OSSignature& sig, const GroundTerm& t);
std::optional<Sort> try_least_sort(const OSSignature& sig, const PatternTerm& p);

/// Operators named like the root of t whose argument sorts admit the children's least sorts.
std::vector<std::size_t> admissible_operators(const OSSignature& sig, const std::string& ctor,
                                              const std::vector<Sort>& child_sorts);

bool well_formed_ground(const OSSignature& sig, const GroundTerm& t);
bool well_formed_ground(const MSSignature& sig, const GroundTerm& t);

// ---- many-sorted terms ----

/// Target sort of the operator matching t exactly. Throws Error(ill_formed_term).
Sort term_sort(const MSSignature& sig, const GroundTerm& t);
Sort term_sort(const MSSignature& sig, const PatternTerm& p);
std::optional<Sort> try_term_sort(const MSSignature& sig, const GroundTerm& t);

// ---- patterns and substitutions ----

/// Variables of p with their sorts. Throws Error(inconsistent_annotation) if a
/// name carries two sorts.
std::map<std::string, Sort> variables_of(const PatternTerm& p);
/// Variables of both sides of an equation or rule, checked for consistency together.
std::map<std::string, Sort> variables_of(const PatternTerm& lhs, const PatternTerm& rhs);

/// Order-sorted instantiation: h(x) must have least sort <= the sort of x.
GroundTerm apply_substitution(const OSSignature& sig, const PatternTerm& p, const Substitution& h);
/// Many-sorted instantiation: h(x) must have exactly the sort of x.
GroundTerm apply_substitution(const MSSignature& sig, const PatternTerm& p, const Substitution& h);
/// Plain replacement without sort checks.
GroundTerm instantiate(const PatternTerm& p, const Substitution& h);

}  // namespace ostr
