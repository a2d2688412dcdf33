#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ostr/algebra.hpp"
#include "ostr/sort_poset.hpp"
#include "ostr/validity.hpp"

namespace ostr {

/// Generated unary coercion Cast_<from>_to_<to> : from -> to, one per subsort pair.
struct CastOperator {
  Sort from;
  Sort to;
  std::string name;

  Operator as_operator() const { return Operator{name, {from}, to}; }
  friend bool operator==(const CastOperator&, const CastOperator&) = default;
};

/// Decides core equality on many-sorted ground terms by rewriting every maximal
/// cast chain to the canonical chain between its end sorts.
class CoreCanonicalizer {
 public:
  CoreCanonicalizer() = default;
  /// Casts are read off the non-core operators of `sig`.
  CoreCanonicalizer(const MSSignature& sig, PathTieBreak tie);

  GroundTerm canonicalize(const GroundTerm& t) const;
  bool is_cast(const std::string& ctor) const { return cast_index_.count(ctor) != 0; }
  const CastOperator& cast(const std::string& ctor) const;
  /// Exact sort of a well-formed term of the signature.
  Sort sort_of(const GroundTerm& t) const;
  /// Sort of a many-sorted pattern (variables at their declared sort).
  Sort sort_of(const PatternTerm& p) const;
  /// Subsort relation generated by the casts.
  const SortPoset& cast_poset() const noexcept { return poset_; }
  const MSSignature& signature() const noexcept { return sig_; }
  const std::vector<CastOperator>& casts() const noexcept { return casts_; }
  const SortPath& path(const Sort& from, const Sort& to) const;
  /// core wrapped in the canonical chain from `from` up to `to` (identity if equal).
  GroundTerm wrap(GroundTerm core, const Sort& from, const Sort& to) const;
  PatternTerm wrap(PatternTerm core, const Sort& from, const Sort& to) const;
  /// Height ignoring cast nodes.
  std::size_t core_height(const GroundTerm& t) const;
  std::size_t core_size(const GroundTerm& t) const;

 private:
  MSSignature sig_;
  SortPoset poset_;
  std::vector<CastOperator> casts_;
  std::map<std::string, std::size_t> cast_index_;
  std::map<SortPair, SortPath> paths_;
};

/// Everything the translation decided, kept so that terms can be translated and
/// translated terms mapped back.
struct TranslationMap {
  OSSignature source;
  PathTieBreak tie_break = PathTieBreak::lexicographic_min;
  std::map<Operator, Operator> representative_of;
  std::map<Operator, std::string> rename_of;  // keyed by representative
  std::vector<CastOperator> casts;            // in the order of the subsort pairs
  std::map<SortPair, SortPath> canonical_path_of;
  CoreCanonicalizer canonicalizer;

  /// Representative operator behind a translated constructor name.
  std::optional<Operator> origin_of(const std::string& translated_ctor) const;

 private:
  friend TranslationMap make_translation_map(const OSAlgebra&, PathTieBreak);
  std::map<std::string, Operator> origin_;
};

struct RepresentativeSelection {
  std::vector<Operator> operators;  // Σ', in declaration order
  std::map<Operator, Operator> representative_of;
};

/// Collapses every argument-compatible group to its maximal operator.
/// Throws Error(not_strictly_sensible).
RepresentativeSelection select_representatives(const OSAlgebra& alg);

/// Distinct names for surviving operators that still share a constructor.
/// Throws Error(rename_collision).
std::map<Operator, std::string> rename_constructors(const std::vector<Operator>& ops, const SortPoset& poset);

/// One cast per base subsort pair. Throws Error(rename_collision) if a name is taken.
std::vector<CastOperator> generate_cast_operators(const SortPoset& poset, const std::vector<std::string>& taken_names = {});

/// Builds the translation map without translating equations or rules.
/// Throws Error(not_strictly_sensible) / Error(invalid_algebra).
TranslationMap make_translation_map(const OSAlgebra& alg, PathTieBreak tie = PathTieBreak::lexicographic_min);

const SortPath& canonical_path(const TranslationMap& tm, const Sort& from, const Sort& to);

/// Translated term and its many-sorted sort.
struct TranslatedPattern {
  PatternTerm term;
  Sort sort;
};

TranslatedPattern tr_term(const TranslationMap& tm, const PatternTerm& p, const std::optional<Sort>& expected = std::nullopt);
GroundTerm tr_term(const TranslationMap& tm, const GroundTerm& t, const std::optional<Sort>& expected = std::nullopt);

/// Core equations: canonical chain = alternative chain, one per diamond.
std::vector<Equation> generate_core_equations(const TranslationMap& tm);
/// Translated equations followed by the core equations.
std::vector<Equation> tr_equations(const TranslationMap& tm, const std::vector<Equation>& equations);
std::vector<Rule> tr_rules(const TranslationMap& tm, const std::vector<Rule>& rules);

struct Translation {
  MSAlgebra algebra;
  TranslationMap map;
};

Translation translate_algebra(const OSAlgebra& alg, PathTieBreak tie = PathTieBreak::lexicographic_min);

/// Maps a many-sorted term back to the order-sorted term it translates: casts are
/// dropped and constructors un-renamed. Throws Error(not_in_image) for unknown constructors.
GroundTerm untranslate(const TranslationMap& tm, const GroundTerm& t);

}  // namespace ostr
