#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "orgprof/corpus.hpp"
#include "orgprof/normalize.hpp"
#include "orgprof/orgnet.hpp"
#include "orgprof/profiles.hpp"

namespace orgprof {

struct PipelineConfig {
  std::filesystem::path corpus;
  std::optional<CorpusFormat> corpus_format;  // guessed from the extension when unset
  std::filesystem::path institution_variants;
  std::filesystem::path aliases;
  std::optional<std::filesystem::path> type_rules;
  std::filesystem::path subject_categories;
  std::optional<std::filesystem::path> disciplines;  // defaults to the mapping targets
  std::filesystem::path discipline_mapping;
  std::set<DocType> doc_types = default_doc_types();
  std::optional<std::pair<int, int>> years;
  std::int64_t min_cooc = 5;
  bool drop_isolated = true;
  std::int64_t min_pubs = 50;
  std::optional<UnitType> table_unit_type;  // unset lists every type
  std::filesystem::path out_dir = "out";

  /// Every field, paths as given. Embedded in each run report.
  nlohmann::ordered_json to_json() const;
};

struct ConfigParse {
  PipelineConfig config;
  std::vector<Diagnostic> diagnostics;
};

/// TOML subset: `key = value` lines with quoted strings, integers,
/// booleans and one-line arrays; '#' comments. Relative paths resolve
/// against `base_dir`.
ConfigParse parse_config(std::istream& in, const std::string& source_name,
                         const std::filesystem::path& base_dir);
ConfigParse load_config(const std::filesystem::path& path);

/// Every problem that would stop a run, empty iff the config is runnable.
std::vector<Diagnostic> validate_config(const PipelineConfig& config);

/// "2006-2010" or a single year.
std::optional<std::pair<int, int>> parse_year_range(std::string_view s);

/// A stage failure; the message names the stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Counts that partition the loaded corpus:
/// total = analyzed + university_only + doc_type_filtered + year_filtered
///         + no_target_address.
struct RecordCounts {
  std::size_t total = 0;
  std::size_t malformed_lines = 0;  // skipped before counting
  std::size_t doc_type_filtered = 0;
  std::size_t year_filtered = 0;
  std::size_t no_target_address = 0;
  std::size_t university_only = 0;
  std::size_t analyzed = 0;
};

/// Ingest, address parsing and normalization, shared by every subcommand.
struct Analysis {
  std::vector<BibRecord> records;                   // analyzed records only
  std::vector<std::vector<CanonicalUnit>> unit_sets;  // parallel to records
  RecordCounts counts;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, std::size_t> raw_token_counts;  // pre-alias tokens

  RecordsByUnit records_by_unit() const;
};

Analysis analyze(const PipelineConfig& config);

enum class OutputSet { all, network, profiles };

struct RunReport {
  RecordCounts counts;
  std::size_t units = 0;
  std::size_t edges = 0;
  std::size_t display_nodes = 0;
  std::size_t display_edges = 0;
  std::vector<std::size_t> component_sizes;  // display network
  std::vector<TypeShare> type_distribution;
  std::size_t sc_universe = 0;
  std::size_t disc_universe = 0;
  std::size_t records_without_categories = 0;
  std::size_t indicator_rows = 0;
  std::vector<std::string> unmapped_subject_categories;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> digests;  // output file -> SHA-256 hex
  nlohmann::ordered_json config;

  nlohmann::ordered_json to_json() const;
};

/// Runs the selected stages and writes their outputs plus run_report.json
/// into config.out_dir. Files are staged and moved in only after every
/// stage succeeded. Throws StageError.
RunReport run_pipeline(const PipelineConfig& config, OutputSet outputs = OutputSet::all,
                       std::ostream* log = nullptr);

std::string sha256_hex(const std::filesystem::path& path);

}  // namespace orgprof
