#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orgprof/corpus.hpp"
#include "orgprof/normalize.hpp"
#include "orgprof/orgnet.hpp"

namespace orgprof {

/// A universe of categories, optionally defined as an aggregation of
/// subject-category codes (e.g. disciplines built from journal categories).
class ClassificationSystem {
 public:
  ClassificationSystem() = default;
  /// Throws std::invalid_argument on an empty or duplicated category list.
  ClassificationSystem(std::string name, std::vector<std::string> categories);

  /// One category per line: code, then optionally a TAB (or space) and a
  /// label. '#' comments. Throws CurationError.
  static ClassificationSystem load(const std::filesystem::path& path, std::string name);
  static ClassificationSystem parse(std::istream& in, const std::string& source_name,
                                    std::string name);

  /// CSV `sc_code,discipline`, many-to-many, optional header. Duplicate
  /// pairs and targets outside this system are rejected with CurationError.
  void load_mapping(const std::filesystem::path& path);
  void parse_mapping(std::istream& in, const std::string& source_name);

  /// An aggregation whose universe is the distinct mapping targets, in
  /// first-seen order. Used when no separate category list is supplied.
  static ClassificationSystem from_mapping(const std::filesystem::path& path, std::string name);
  static ClassificationSystem from_mapping(std::istream& in, const std::string& source_name,
                                           std::string name);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::size_t size() const { return categories_.size(); }
  std::optional<std::size_t> index_of(std::string_view code) const;

  bool is_aggregation() const { return !mapping_.empty(); }
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& mapping() const {
    return mapping_;
  }

  /// Distinct category indices a record with these subject categories falls
  /// into, ascending. Codes the system does not know are appended to
  /// `unknown` when given.
  std::vector<std::size_t> categories_of(std::span<const std::string> subject_categories,
                                         std::vector<std::string>* unknown = nullptr) const;

 private:
  std::string name_;
  std::vector<std::string> categories_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> mapping_;
};

/// Base categories with no target in `aggregated`'s mapping.
std::vector<std::string> unmapped_categories(const ClassificationSystem& base,
                                             const ClassificationSystem& aggregated);

/// Publication counts of one unit over the full category universe,
/// zero categories included.
struct ProfileVector {
  std::string unit;
  std::vector<std::int64_t> counts;  // aligned with ClassificationSystem::categories()

  std::size_t universe_size() const { return counts.size(); }
  std::int64_t total() const;
  double mean() const;
};

/// Full counting: each record adds 1 to every category it maps to, once per
/// category even if several of its codes aggregate to the same one.
ProfileVector build_profile(std::string_view unit, std::span<const BibRecord* const> records,
                            const ClassificationSystem& system);

/// Deaton's Gini over the full universe:
///   G = (N+1)/(N-1) - 2/(N(N-1)mu) * sum_i rank_i * x_i,
/// rank 1 going to the largest value. Returns nullopt when the vector is
/// all zero or N < 2; throws std::invalid_argument on negative entries.
std::optional<double> gini(std::span<const std::int64_t> values);
std::optional<double> gini(std::span<const double> values);
inline std::optional<double> gini(const ProfileVector& p) { return gini(std::span(p.counts)); }

/// Number of categories with a non-zero count.
std::size_t field_count(const ProfileVector& profile);

struct UnitIndicators {
  std::string unit;
  UnitType type = UnitType::other;
  std::size_t publications = 0;
  double betweenness = 0.0;
  std::optional<double> gini_sc;
  std::size_t n_sc = 0;
  std::optional<double> gini_disc;
  std::size_t n_disc = 0;

  bool operator==(const UnitIndicators&) const = default;
};

/// Rendering marks for a Gini value: bold below 0.5, asterisk above 0.8.
inline bool bold_flag(std::optional<double> g) { return g && *g < 0.5; }
inline bool asterisk_flag(std::optional<double> g) { return g && *g > 0.8; }

struct IndicatorOptions {
  std::size_t min_pubs = 50;          // keep rows with P > min_pubs
  std::optional<UnitType> only_type;  // e.g. departments only
};

using RecordsByUnit = std::map<std::string, std::vector<const BibRecord*>, std::less<>>;

/// One row per network node with P > min_pubs, sorted by P descending then
/// name.
std::vector<UnitIndicators> indicator_table(const OrgNetwork& net, const RecordsByUnit& records,
                                            const ClassificationSystem& subject_categories,
                                            const ClassificationSystem& disciplines,
                                            const IndicatorOptions& options);

/// The row filter and ordering of indicator_table, on precomputed rows.
std::vector<UnitIndicators> select_rows(std::vector<UnitIndicators> rows,
                                        const IndicatorOptions& options);

/// "NA" for a missing value, otherwise two decimals.
std::string format_gini(std::optional<double> g);

void write_indicator_csv(const std::vector<UnitIndicators>& rows, std::size_t sc_universe,
                         std::size_t disc_universe, std::ostream& out);
void write_indicator_markdown(const std::vector<UnitIndicators>& rows, std::size_t sc_universe,
                              std::size_t disc_universe, std::ostream& out);

}  // namespace orgprof
