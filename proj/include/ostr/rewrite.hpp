#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ostr/algebra.hpp"
#include "ostr/translation.hpp"

namespace ostr {

/// Limits for the bounded equational closure.
struct EClassBudget {
  std::size_t depth = 5;         // breadth-first layers
  std::size_t max_size = 10000;  // members
  /// Members taller or larger than these are not explored; a cap below the
  /// seed's own measure is raised to it. Many-sorted engines do not count cast
  /// nodes. Unset means no cap.
  std::optional<std::size_t> max_height;
  std::optional<std::size_t> max_nodes;
};

struct EClassApprox {
  GroundTerm seed;
  std::vector<GroundTerm> members;  // discovery order, seed first
  std::size_t depth_used = 0;
  bool exhausted = false;

  bool contains(const GroundTerm& t) const;
};

struct RewriteStep {
  std::size_t rule_index = 0;
  Rule rule;
  Position position;
  Substitution substitution;
  GroundTerm bridging_term;  // the class member the rule matched
  GroundTerm result;
};

/// One rewrite environment: equations applied in both directions, rules left to right.
class RewriteTheory {
 public:
  virtual ~RewriteTheory() = default;

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<Equation>& equations() const noexcept { return equations_; }

  /// Equation sides usable as rewrite directions (target variables bound by the source).
  struct Orientation {
    std::size_t equation;
    PatternTerm from;
    PatternTerm to;
  };
  const std::vector<Orientation>& orientations() const noexcept { return oriented_; }

  /// Indices of the orientations and rules whose left side may match at `sub`,
  /// in declaration order.
  const std::vector<std::size_t>& orientations_at(const GroundTerm& sub) const;
  const std::vector<std::size_t>& rules_at(const GroundTerm& sub) const;

  virtual std::optional<Substitution> match(const PatternTerm& p, const GroundTerm& t) const = 0;
  /// t with the subterm at pos replaced by h(out), normalized; nullopt if ill-formed.
  virtual std::optional<GroundTerm> rewrite_at(const GroundTerm& t, const Position& pos, const PatternTerm& out,
                                               const Substitution& h) const = 0;
  virtual GroundTerm normalize(const GroundTerm& t) const { return t; }
  /// Height and node count used for the e-class caps.
  virtual std::size_t height_of(const GroundTerm& t) const { return height(t); }
  virtual std::size_t size_of(const GroundTerm& t) const { return node_count(t); }

 protected:
  RewriteTheory(std::vector<Equation> equations, std::vector<Rule> rules, const std::vector<bool>& skip_equation);

  /// Symbol a left side is indexed under; subclasses matching modulo some
  /// theory map related symbols together. Call build_index() once it is usable.
  virtual std::string head_key(const std::string& ctor) const { return ctor; }
  void build_index();

 private:
  struct Index {
    std::map<std::string, std::vector<std::size_t>> by_head;
    std::vector<std::size_t> any;  // variable left sides
  };
  template <typename Lhs>
  Index make_index(std::size_t n, const Lhs& lhs) const;
  const std::vector<std::size_t>& lookup(const Index& ix, const GroundTerm& sub) const;

  std::vector<Equation> equations_;
  std::vector<Rule> rules_;
  std::vector<Orientation> oriented_;
  Index orientation_index_;
  Index rule_index_;
};

class OrderSortedTheory final : public RewriteTheory {
 public:
  explicit OrderSortedTheory(const OSAlgebra& alg);

  const OSSignature& signature() const noexcept { return sig_; }
  std::optional<Substitution> match(const PatternTerm& p, const GroundTerm& t) const override;
  std::optional<GroundTerm> rewrite_at(const GroundTerm& t, const Position& pos, const PatternTerm& out,
                                       const Substitution& h) const override;

 private:
  OSSignature sig_;
};

/// How the many-sorted engine treats core equality.
enum class CoreMode {
  canonical,  // terms kept in cast-canonical form, matching modulo core equality
  syntactic,  // plain terms; core equations applied like any other equation
};

class ManySortedTheory final : public RewriteTheory {
 public:
  explicit ManySortedTheory(const MSAlgebra& alg, CoreMode mode = CoreMode::canonical,
                            PathTieBreak tie = PathTieBreak::lexicographic_min);

  const MSSignature& signature() const noexcept { return canon_.signature(); }
  const CoreCanonicalizer& canonicalizer() const noexcept { return canon_; }
  CoreMode mode() const noexcept { return mode_; }

  std::optional<Substitution> match(const PatternTerm& p, const GroundTerm& t) const override;
  std::optional<GroundTerm> rewrite_at(const GroundTerm& t, const Position& pos, const PatternTerm& out,
                                       const Substitution& h) const override;
  GroundTerm normalize(const GroundTerm& t) const override;
  std::size_t height_of(const GroundTerm& t) const override { return canon_.core_height(t); }
  std::size_t size_of(const GroundTerm& t) const override { return canon_.core_size(t); }

 protected:
  std::string head_key(const std::string& ctor) const override;

 private:
  bool match_into(const PatternTerm& p, const GroundTerm& t, Substitution& h) const;

  CoreCanonicalizer canon_;
  CoreMode mode_;
};

/// Syntactic matching; order-sorted variables accept terms whose least sort is below theirs.
std::optional<Substitution> match_pattern(const OSSignature& sig, const PatternTerm& p, const GroundTerm& t);
/// Syntactic matching with exact sorts at variables.
std::optional<Substitution> match_pattern(const MSSignature& sig, const PatternTerm& p, const GroundTerm& t);

GroundTerm core_canonicalize(const TranslationMap& tm, const GroundTerm& t);

EClassApprox e_class_bounded(const RewriteTheory& theory, const GroundTerm& t, const EClassBudget& budget = {});

struct StepSet {
  EClassApprox eclass;
  std::vector<RewriteStep> steps;

  /// False when the class search was cut off, so steps may be missing.
  bool complete() const noexcept { return eclass.exhausted; }
};

/// All rule applications at any position of any member of t's bounded class.
StepSet rewrite_step(const RewriteTheory& theory, const GroundTerm& t, const EClassBudget& budget = {});

/// Re-applies a recorded step; nullopt if it no longer applies.
std::optional<GroundTerm> replay_step(const RewriteTheory& theory, const RewriteStep& step);

enum class Strategy { leftmost_innermost, leftmost_outermost, exhaustive_breadth };

std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy s);

struct Trace {
  std::vector<RewriteStep> steps;
  /// False if some class search was cut off along the way.
  bool complete = true;
};

Trace rewrite_trace(const RewriteTheory& theory, const GroundTerm& t, Strategy strategy, std::size_t max_steps,
                    const EClassBudget& budget = {});

/// `<pos>  <rule-index>  <term-before> --> <term-after>`, one step per line.
std::string format_trace(const Trace& trace);

}  // namespace ostr
