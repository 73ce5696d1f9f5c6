#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orgprof/text.hpp"

namespace orgprof {

enum class UnitType {
  department,
  faculty,
  school,
  research_center,
  research_group,
  unit,
  laboratory,
  hospital,
  other,
};

inline constexpr UnitType kAllUnitTypes[] = {
    UnitType::department,     UnitType::faculty, UnitType::school,
    UnitType::research_center, UnitType::research_group, UnitType::unit,
    UnitType::laboratory,     UnitType::hospital, UnitType::other,
};

std::string_view to_string(UnitType type);
std::optional<UnitType> parse_unit_type(std::string_view name);

struct CanonicalUnit {
  std::string name;
  UnitType type = UnitType::other;

  auto operator<=>(const CanonicalUnit&) const = default;
};

/// Thrown by the loaders when a curated input file has line-level problems.
class CurationError : public std::runtime_error {
 public:
  explicit CurationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Variant spelling -> chosen designation. Idempotent by construction: the
/// loader rejects chains (A->B, B->C) and conflicting targets.
class AliasTable {
 public:
  struct Parsed;

  AliasTable() = default;

  /// TSV `variant<TAB>canonical`, '#' comments. Collects every problem.
  static Parsed parse(std::istream& in, const std::string& source_name);
  /// Throws CurationError when the file is unreadable or has problems.
  static AliasTable load(const std::filesystem::path& path);

  /// Adds one entry; throws std::invalid_argument if it would break
  /// idempotence.
  void add(std::string_view variant, std::string_view canonical);

  const std::string* find(std::string_view variant) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

struct AliasTable::Parsed {
  AliasTable table;
  std::vector<Diagnostic> diagnostics;
};

/// aliases[token] when present, otherwise token itself.
std::string canonicalize(std::string_view token, const AliasTable& aliases);

/// Ordered pattern -> type rules; the first match wins and unmatched names
/// fall back to UnitType::other.
///
/// A pattern matches when its words occur as a consecutive run of words in
/// the name, or when it is a prefix of the name's first word (so "LAB" also
/// catches "LABORATORIO").
class TypeRuleSet {
 public:
  struct Rule {
    std::string pattern;
    UnitType type;
  };

  TypeRuleSet() = default;
  explicit TypeRuleSet(std::vector<Rule> rules);

  static TypeRuleSet defaults();
  /// TSV `pattern<TAB>type`, ordered, '#' comments.
  static TypeRuleSet load(const std::filesystem::path& path);
  static TypeRuleSet parse(std::istream& in, const std::string& source_name);

  UnitType classify(std::string_view name) const;
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

inline UnitType classify_type(std::string_view name, const TypeRuleSet& rules) {
  return rules.classify(name);
}

/// Distinct canonical units of one publication, sorted by name.
std::vector<CanonicalUnit> dedupe_units(std::span<const std::string> canonical_names,
                                        const TypeRuleSet& rules);

/// count/total as a percentage rounded to one decimal; 0 when total is 0.
double percent_share(std::size_t count, std::size_t total);

struct TypeShare {
  UnitType type;
  std::size_t publications = 0;  // records with at least one unit of this type
  double share_percent = 0.0;    // of analyzed records, one decimal
  std::size_t distinct_units = 0;
};

/// One row per UnitType in declaration order. Shares can add up to more
/// than 100 because a record may carry several types.
std::vector<TypeShare> type_distribution(const std::vector<std::vector<CanonicalUnit>>& unit_sets);

struct AliasSuggestion {
  std::string canonical;  // most frequent member
  std::vector<std::pair<std::string, std::size_t>> variants;  // excludes canonical
};

/// Groups raw tokens whose alphanumeric skeletons are equal or within a small
/// edit distance. Output is for human review, never applied automatically.
std::vector<AliasSuggestion> suggest_aliases(const std::map<std::string, std::size_t>& token_counts);

}  // namespace orgprof
