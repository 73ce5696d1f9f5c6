#include "orgprof/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "orgprof/address.hpp"
#include "orgprof/csv.hpp"

namespace orgprof {

namespace {

using nlohmann::json;

void push_distinct(std::vector<std::string>& into, std::string value) {
  if (value.empty()) return;
  if (std::find(into.begin(), into.end(), value) == into.end()) {
    into.push_back(std::move(value));
  }
}

std::vector<std::string> split_cell(std::string_view cell) {
  std::vector<std::string> out;
  for (auto& part : text::split(cell, '|')) {
    auto t = text::trim(part);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

BibRecord record_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("line is not a JSON object");
  BibRecord r;
  const auto& id = j.at("id");
  if (!id.is_string() || id.get<std::string>().empty()) {
    throw std::invalid_argument("\"id\" must be a non-empty string");
  }
  r.record_id = id.get<std::string>();
  r.doc_type = parse_doc_type(j.at("doc_type").get<std::string>());
  r.year = j.at("year").get<int>();
  for (const auto& a : j.at("addresses")) {
    auto t = text::trim(a.get<std::string>());
    if (!t.empty()) r.addresses.push_back(std::move(t));
  }
  for (const auto& sc : j.at("subject_categories")) {
    push_distinct(r.subject_categories, text::trim(sc.get<std::string>()));
  }
  return r;
}

BibRecord record_from_csv(const std::vector<std::string>& f) {
  if (f.size() != 5) {
    throw std::invalid_argument("expected 5 columns, found " + std::to_string(f.size()));
  }
  BibRecord r;
  r.record_id = text::trim(f[0]);
  if (r.record_id.empty()) throw std::invalid_argument("empty id");
  r.doc_type = parse_doc_type(f[1]);
  auto year = text::trim(f[2]);
  std::size_t used = 0;
  try {
    r.year = std::stoi(year, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != year.size()) {
    throw std::invalid_argument("year is not an integer: '" + year + "'");
  }
  r.addresses = split_cell(f[3]);
  for (auto& sc : split_cell(f[4])) push_distinct(r.subject_categories, std::move(sc));
  return r;
}

void add_record(LoadResult& result, std::unordered_set<std::string>& seen,
                BibRecord record, const std::string& source, std::size_t line) {
  if (!seen.insert(record.record_id).second) {
    throw CorpusError(source + ":" + std::to_string(line) + ": duplicate record id '" +
                      record.record_id + "'");
  }
  result.records.push_back(std::move(record));
}

}  // namespace

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::proceedings_paper: return "proceedings_paper";
    case DocType::other: return "other";
  }
  return "other";
}

DocType parse_doc_type(std::string_view label) {
  std::string key;
  for (char c : text::trim(label)) {
    if (c == ' ' || c == '-' || c == '_') {
      if (!key.empty() && key.back() != '_') key.push_back('_');
    } else {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "article") return DocType::article;
  if (key == "review") return DocType::review;
  if (key == "letter") return DocType::letter;
  if (key == "proceedings_paper") return DocType::proceedings_paper;
  return DocType::other;
}

std::set<DocType> default_doc_types() {
  return {DocType::article, DocType::review, DocType::letter, DocType::proceedings_paper};
}

std::optional<std::set<DocType>> parse_doc_type_list(std::string_view csv_list) {
  std::set<DocType> out;
  for (const auto& part : text::split(csv_list, ',')) {
    auto t = text::trim(part);
    if (t.empty()) continue;
    auto type = parse_doc_type(t);
    if (type == DocType::other && text::to_upper(t) != "OTHER") return std::nullopt;
    out.insert(type);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  auto n = text::to_upper(text::trim(name));
  if (n == "JSONL") return CorpusFormat::jsonl;
  if (n == "CSV") return CorpusFormat::csv;
  return std::nullopt;
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  return text::to_upper(path.extension().string()) == ".CSV" ? CorpusFormat::csv
                                                              : CorpusFormat::jsonl;
}

LoadResult parse_corpus(std::istream& in, CorpusFormat format, const std::string& source_name) {
  LoadResult result;
  std::unordered_set<std::string> seen;

  if (format == CorpusFormat::jsonl) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      BibRecord record;
      try {
        record = record_from_json(json::parse(line));
      } catch (const std::exception& e) {
        result.diagnostics.push_back({source_name, line_no, e.what()});
        continue;
      }
      add_record(result, seen, std::move(record), source_name, line_no);
    }
    return result;
  }

  auto rows = csv::read_rows(in);
  bool header_seen = false;
  for (auto& row : rows) {
    if (row.error) {
      result.diagnostics.push_back({source_name, row.line, *row.error});
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      std::vector<std::string> names;
      for (const auto& f : row.fields) names.push_back(text::trim(f));
      const std::vector<std::string> expected{"id", "doc_type", "year", "addresses",
                                              "subject_categories"};
      if (names != expected) {
        throw CorpusError(source_name + ":" + std::to_string(row.line) +
                          ": CSV header must be id,doc_type,year,addresses,subject_categories");
      }
      continue;
    }
    BibRecord record;
    try {
      record = record_from_csv(row.fields);
    } catch (const std::exception& e) {
      result.diagnostics.push_back({source_name, row.line, e.what()});
      continue;
    }
    add_record(result, seen, std::move(record), source_name, row.line);
  }
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus file " + path.string());
  return parse_corpus(in, format, path.string());
}

std::vector<BibRecord> filter_doc_types(const std::vector<BibRecord>& records,
                                        const std::set<DocType>& allowed) {
  std::vector<BibRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const BibRecord& r) { return allowed.count(r.doc_type) > 0; });
  return out;
}

InstitutionMatcher::InstitutionMatcher(std::set<std::string> variant_names)
    : variants_(std::move(variant_names)) {
  if (variants_.empty()) {
    throw std::invalid_argument("institution variant list is empty");
  }
  for (const auto& v : variants_) {
    if (v.empty() || v != text::normalize(v) || v.find(',') != std::string::npos) {
      throw std::invalid_argument("institution variant '" + v +
                                  "' must be uppercase, single-spaced and comma-free");
    }
  }
}

InstitutionMatcher InstitutionMatcher::parse(std::istream& in, const std::string& source_name) {
  std::set<std::string> variants;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto t = text::trim(line);
    if (t.empty()) continue;
    if (t != text::normalize(t) || t.find(',') != std::string::npos) {
      throw std::invalid_argument(source_name + ":" + std::to_string(line_no) +
                                  ": variant must be uppercase and comma-free: '" + t + "'");
    }
    variants.insert(std::move(t));
  }
  if (variants.empty()) {
    throw std::invalid_argument(source_name + ": no institution variants");
  }
  return InstitutionMatcher(std::move(variants));
}

InstitutionMatcher InstitutionMatcher::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read institution variants " + path.string());
  return parse(in, path.string());
}

bool InstitutionMatcher::matches_head(std::string_view head) const {
  return variants_.count(std::string(head)) > 0;
}

std::string address_head(std::string_view address) {
  auto normalized = normalize_address(address);
  return normalized.substr(0, normalized.find(','));
}

std::vector<std::string> select_institution_addresses(const BibRecord& record,
                                                      const InstitutionMatcher& matcher) {
  std::vector<std::string> out;
  for (const auto& address : record.addresses) {
    if (matcher.matches_head(address_head(address))) out.push_back(address);
  }
  return out;
}

}  // namespace orgprof
