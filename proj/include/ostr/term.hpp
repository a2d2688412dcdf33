#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ostr {

/// A sort name. Sorts are compared by name only.
class Sort {
 public:
  Sort() = default;
  explicit Sort(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  bool empty() const noexcept { return name_.empty(); }

  friend auto operator<=>(const Sort&, const Sort&) = default;
  friend bool operator==(const Sort&, const Sort&) = default;

 private:
  std::string name_;
};

inline std::ostream& operator<<(std::ostream& os, const Sort& s) { return os << s.name(); }

/// Constructor tree without variables. Constants have an empty argument list.
struct GroundTerm {
  std::string constructor;
  std::vector<GroundTerm> args;

  GroundTerm() = default;
  explicit GroundTerm(std::string ctor, std::vector<GroundTerm> children = {})
      : constructor(std::move(ctor)), args(std::move(children)) {}

  bool is_constant() const noexcept { return args.empty(); }

  friend auto operator<=>(const GroundTerm&, const GroundTerm&) = default;
  friend bool operator==(const GroundTerm&, const GroundTerm&) = default;
};

/// Term with sorted variables. A variable carries its declared sort.
struct PatternTerm {
  enum class Kind { variable, node };

  Kind kind = Kind::node;
  std::string name;  // variable name or constructor
  Sort sort;         // only meaningful for variables
  std::vector<PatternTerm> args;

  static PatternTerm variable(std::string var, Sort var_sort);
  static PatternTerm node(std::string ctor, std::vector<PatternTerm> children = {});

  bool is_variable() const noexcept { return kind == Kind::variable; }

  friend auto operator<=>(const PatternTerm&, const PatternTerm&) = default;
  friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
};

using Substitution = std::map<std::string, GroundTerm>;

/// Path of child indices from the root; the root is the empty path.
using Position = std::vector<std::size_t>;

PatternTerm to_pattern(const GroundTerm& t);
bool is_ground(const PatternTerm& p);
/// Throws Error(unbound_variable) if the pattern contains a variable.
GroundTerm to_ground(const PatternTerm& p);

std::size_t height(const GroundTerm& t);
std::size_t height(const PatternTerm& p);
std::size_t node_count(const GroundTerm& t);

/// All positions of t in pre-order (root first, children left to right).
std::vector<Position> positions(const GroundTerm& t);
const GroundTerm& subterm_at(const GroundTerm& t, const Position& pos);
GroundTerm replace_at(const GroundTerm& t, const Position& pos, GroundTerm replacement);

std::string to_string(const GroundTerm& t);
std::string to_string(const PatternTerm& p);
std::string to_string(const Position& pos);

inline std::ostream& operator<<(std::ostream& os, const GroundTerm& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const PatternTerm& p) { return os << to_string(p); }

}  // namespace ostr

template <>
struct std::hash<ostr::Sort> {
  std::size_t operator()(const ostr::Sort& s) const noexcept { return std::hash<std::string>{}(s.name()); }
};

template <>
struct std::hash<ostr::GroundTerm> {
  std::size_t operator()(const ostr::GroundTerm& t) const noexcept;
};
