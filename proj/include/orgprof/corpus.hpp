#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orgprof/text.hpp"

namespace orgprof {

enum class DocType { article, review, letter, proceedings_paper, other };

std::string_view to_string(DocType type);

/// Case-insensitive; spaces, hyphens and underscores are interchangeable, so
/// "Proceedings Paper" and "proceedings_paper" both parse. Anything outside
/// the four citable types becomes DocType::other.
DocType parse_doc_type(std::string_view label);

/// Letters, articles, reviews and proceedings papers.
std::set<DocType> default_doc_types();

std::optional<std::set<DocType>> parse_doc_type_list(std::string_view csv_list);

struct BibRecord {
  std::string record_id;
  DocType doc_type = DocType::other;
  int year = 0;
  std::vector<std::string> addresses;
  std::vector<std::string> subject_categories;  // distinct, first-seen order
};

enum class CorpusFormat { jsonl, csv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

/// Guesses from the extension; anything but ".csv" is treated as JSONL.
CorpusFormat format_from_path(const std::filesystem::path& path);

/// Fatal corpus problems: unreadable file, duplicate record ids.
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadResult {
  std::vector<BibRecord> records;
  std::vector<Diagnostic> diagnostics;  // one per skipped line
};

/// Reads records in file order. Malformed lines are skipped and reported;
/// an unreadable file or a repeated record id throws CorpusError.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format);
LoadResult parse_corpus(std::istream& in, CorpusFormat format,
                        const std::string& source_name);

std::vector<BibRecord> filter_doc_types(const std::vector<BibRecord>& records,
                                        const std::set<DocType>& allowed);

/// The set of head-segment spellings that identify one institution.
class InstitutionMatcher {
 public:
  /// Throws std::invalid_argument when empty or when an entry is not an
  /// uppercase, comma-free name.
  explicit InstitutionMatcher(std::set<std::string> variant_names);

  /// Plain text, one variant per line, '#' starts a comment.
  static InstitutionMatcher load(const std::filesystem::path& path);
  static InstitutionMatcher parse(std::istream& in, const std::string& source_name);

  bool matches_head(std::string_view head) const;
  const std::set<std::string>& variant_names() const { return variants_; }

 private:
  std::set<std::string> variants_;
};

/// First comma-delimited segment, whitespace-collapsed and uppercased.
std::string address_head(std::string_view address);

/// Addresses of `record` that belong to the target institution, in order.
std::vector<std::string> select_institution_addresses(const BibRecord& record,
                                                      const InstitutionMatcher& matcher);

}  // namespace orgprof
