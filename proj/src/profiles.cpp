#include "orgprof/profiles.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "orgprof/csv.hpp"

namespace orgprof {

namespace {

// Anything farther than this outside [0, 1] would be a bug, not rounding.
constexpr double kClampSlack = 1e-12;

double clamp_unit(double g) {
  if (g < 0.0 && g >= -kClampSlack) return 0.0;
  if (g > 1.0 && g <= 1.0 + kClampSlack) return 1.0;
  return g;
}

std::string flagged(std::optional<double> g) {
  auto s = format_gini(g);
  if (bold_flag(g)) return "<b>" + s + "</b>";
  if (asterisk_flag(g)) return s + "*";
  return s;
}

std::string_view flag_name(std::optional<double> g) {
  if (bold_flag(g)) return "bold";
  if (asterisk_flag(g)) return "asterisk";
  return "";
}

}  // namespace

ClassificationSystem::ClassificationSystem(std::string name, std::vector<std::string> categories)
    : name_(std::move(name)), categories_(std::move(categories)) {
  if (categories_.empty()) throw std::invalid_argument("classification '" + name_ + "' is empty");
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    categories_[i] = text::trim(categories_[i]);
    if (!index_.emplace(categories_[i], i).second) {
      throw std::invalid_argument("duplicate category '" + categories_[i] + "'");
    }
  }
  labels_ = categories_;
}

ClassificationSystem ClassificationSystem::parse(std::istream& in, const std::string& source_name,
                                                 std::string name) {
  std::vector<std::string> codes;
  std::vector<std::string> labels;
  std::vector<Diagnostic> problems;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto line = text::trim(raw);
    if (line.empty()) continue;
    auto cut = line.find('\t');
    if (cut == std::string::npos) cut = line.find(' ');
    auto code = text::trim(line.substr(0, cut));
    auto label = cut == std::string::npos ? code : text::trim(line.substr(cut + 1));
    if (!seen.insert(code).second) {
      problems.push_back({source_name, line_no, "duplicate category '" + code + "'"});
      continue;
    }
    codes.push_back(code);
    labels.push_back(label.empty() ? code : label);
  }
  if (codes.empty()) problems.push_back({source_name, 0, "no categories"});
  if (!problems.empty()) throw CurationError(std::move(problems));

  ClassificationSystem system(std::move(name), std::move(codes));
  system.labels_ = std::move(labels);
  return system;
}

ClassificationSystem ClassificationSystem::load(const std::filesystem::path& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw CurationError({{path.string(), 0, "cannot read categories file"}});
  return parse(in, path.string(), std::move(name));
}

void ClassificationSystem::parse_mapping(std::istream& in, const std::string& source_name) {
  std::map<std::string, std::vector<std::size_t>, std::less<>> mapping;
  std::vector<Diagnostic> problems;
  bool first = true;
  for (const auto& row : csv::read_rows(in)) {
    if (row.error) {
      problems.push_back({source_name, row.line, *row.error});
      continue;
    }
    if (row.fields.size() != 2) {
      problems.push_back({source_name, row.line, "expected sc_code,discipline"});
      continue;
    }
    auto sc = text::trim(row.fields[0]);
    auto target = text::trim(row.fields[1]);
    if (first && sc == "sc_code" && target == "discipline") {
      first = false;
      continue;
    }
    first = false;
    auto idx = index_of(target);
    if (!idx) {
      problems.push_back({source_name, row.line,
                          "discipline '" + target + "' is not in " + name_});
      continue;
    }
    auto& targets = mapping[sc];
    if (std::find(targets.begin(), targets.end(), *idx) != targets.end()) {
      problems.push_back({source_name, row.line, "duplicate mapping " + sc + " -> " + target});
      continue;
    }
    targets.push_back(*idx);
  }
  if (mapping.empty() && problems.empty()) problems.push_back({source_name, 0, "mapping is empty"});
  if (!problems.empty()) throw CurationError(std::move(problems));
  for (auto& [_, targets] : mapping) std::sort(targets.begin(), targets.end());
  mapping_ = std::move(mapping);
}

void ClassificationSystem::load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CurationError({{path.string(), 0, "cannot read mapping file"}});
  parse_mapping(in, path.string());
}

ClassificationSystem ClassificationSystem::from_mapping(std::istream& in,
                                                        const std::string& source_name,
                                                        std::string name) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::vector<std::string> targets;
  std::set<std::string> seen;
  bool first = true;
  for (const auto& row : csv::read_rows(buffer)) {
    if (row.error || row.fields.size() != 2) continue;  // reported by parse_mapping
    auto sc = text::trim(row.fields[0]);
    auto target = text::trim(row.fields[1]);
    bool header = first && sc == "sc_code" && target == "discipline";
    first = false;
    if (header || target.empty()) continue;
    if (seen.insert(target).second) targets.push_back(target);
  }
  if (targets.empty()) throw CurationError({{source_name, 0, "mapping is empty"}});
  ClassificationSystem system(std::move(name), std::move(targets));
  buffer.clear();
  buffer.seekg(0);
  system.parse_mapping(buffer, source_name);
  return system;
}

ClassificationSystem ClassificationSystem::from_mapping(const std::filesystem::path& path,
                                                        std::string name) {
  std::ifstream in(path);
  if (!in) throw CurationError({{path.string(), 0, "cannot read mapping file"}});
  return from_mapping(in, path.string(), std::move(name));
}

std::optional<std::size_t> ClassificationSystem::index_of(std::string_view code) const {
  auto it = index_.find(code);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ClassificationSystem::categories_of(
    std::span<const std::string> subject_categories, std::vector<std::string>* unknown) const {
  std::set<std::size_t> hits;
  for (const auto& code : subject_categories) {
    if (is_aggregation()) {
      auto it = mapping_.find(code);
      if (it == mapping_.end()) {
        if (unknown) unknown->push_back(code);
        continue;
      }
      hits.insert(it->second.begin(), it->second.end());
    } else if (auto idx = index_of(code)) {
      hits.insert(*idx);
    } else if (unknown) {
      unknown->push_back(code);
    }
  }
  return {hits.begin(), hits.end()};
}

std::vector<std::string> unmapped_categories(const ClassificationSystem& base,
                                             const ClassificationSystem& aggregated) {
  std::vector<std::string> out;
  for (const auto& code : base.categories()) {
    if (!aggregated.mapping().count(code)) out.push_back(code);
  }
  return out;
}

std::int64_t ProfileVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

double ProfileVector::mean() const {
  if (counts.empty()) return 0.0;
  return static_cast<double>(total()) / static_cast<double>(counts.size());
}

ProfileVector build_profile(std::string_view unit, std::span<const BibRecord* const> records,
                            const ClassificationSystem& system) {
  ProfileVector p{std::string(unit), std::vector<std::int64_t>(system.size(), 0)};
  for (const auto* r : records) {
    for (auto idx : system.categories_of(r->subject_categories)) ++p.counts[idx];
  }
  return p;
}

std::optional<double> gini(std::span<const std::int64_t> values) {
  const std::size_t n = values.size();
  if (std::any_of(values.begin(), values.end(), [](auto v) { return v < 0; })) {
    throw std::invalid_argument("gini: negative count");
  }
  std::vector<std::int64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  long double total = 0;
  long double ranked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += static_cast<long double>(sorted[i]);
    ranked += static_cast<long double>(i + 1) * static_cast<long double>(sorted[i]);
  }
  if (n < 2 || total == 0) return std::nullopt;
  // (N+1)/(N-1) - 2*ranked/((N-1)*total), over one common denominator so the
  // single-category and uniform cases come out exact.
  const long double nn = static_cast<long double>(n);
  long double numerator = (nn + 1) * total - 2 * ranked;
  long double denominator = (nn - 1) * total;
  return clamp_unit(static_cast<double>(numerator / denominator));
}

std::optional<double> gini(std::span<const double> values) {
  const std::size_t n = values.size();
  if (std::any_of(values.begin(), values.end(), [](auto v) { return v < 0; })) {
    throw std::invalid_argument("gini: negative value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double total = 0;
  double ranked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += sorted[i];
    ranked += static_cast<double>(i + 1) * sorted[i];
  }
  if (n < 2 || total <= 0) return std::nullopt;
  const double nn = static_cast<double>(n);
  return clamp_unit(((nn + 1) * total - 2 * ranked) / ((nn - 1) * total));
}

std::size_t field_count(const ProfileVector& profile) {
  return static_cast<std::size_t>(
      std::count_if(profile.counts.begin(), profile.counts.end(), [](auto c) { return c > 0; }));
}

std::vector<UnitIndicators> select_rows(std::vector<UnitIndicators> rows,
                                        const IndicatorOptions& options) {
  std::erase_if(rows, [&](const UnitIndicators& r) {
    return r.publications <= options.min_pubs || (options.only_type && r.type != *options.only_type);
  });
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.publications != b.publications) return a.publications > b.publications;
    return a.unit < b.unit;
  });
  return rows;
}

std::vector<UnitIndicators> indicator_table(const OrgNetwork& net, const RecordsByUnit& records,
                                            const ClassificationSystem& subject_categories,
                                            const ClassificationSystem& disciplines,
                                            const IndicatorOptions& options) {
  std::vector<UnitIndicators> rows;
  for (const auto& node : net.nodes()) {
    if (node.publications <= options.min_pubs) continue;
    if (options.only_type && node.type != *options.only_type) continue;
    std::span<const BibRecord* const> mine;
    if (auto it = records.find(node.name); it != records.end()) mine = it->second;
    auto sc = build_profile(node.name, mine, subject_categories);
    auto disc = build_profile(node.name, mine, disciplines);
    rows.push_back({node.name, node.type, node.publications, node.betweenness, gini(sc),
                    field_count(sc), gini(disc), field_count(disc)});
  }
  return select_rows(std::move(rows), options);
}

std::string format_gini(std::optional<double> g) {
  return g ? fmt::format("{:.2f}", *g) : std::string("NA");
}

void write_indicator_csv(const std::vector<UnitIndicators>& rows, std::size_t sc_universe,
                         std::size_t disc_universe, std::ostream& out) {
  out << "unit,type,P,B,G_sc,n_sc,N_sc,flag_sc,G_disc,n_disc,N_disc,flag_disc\n";
  for (const auto& r : rows) {
    out << csv::escape(r.unit) << ',' << to_string(r.type) << ',' << r.publications << ','
        << fmt::format("{:.2f}", r.betweenness) << ',' << format_gini(r.gini_sc) << ',' << r.n_sc
        << ',' << sc_universe << ',' << flag_name(r.gini_sc) << ',' << format_gini(r.gini_disc)
        << ',' << r.n_disc << ',' << disc_universe << ',' << flag_name(r.gini_disc) << '\n';
  }
}

void write_indicator_markdown(const std::vector<UnitIndicators>& rows, std::size_t sc_universe,
                              std::size_t disc_universe, std::ostream& out) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Unit", "P", "B", "G (SC)", "No SC", "G (disc)", "No disc"});
  for (const auto& r : rows) {
    cells.push_back({r.unit, std::to_string(r.publications), fmt::format("{:.2f}", r.betweenness),
                     flagged(r.gini_sc), std::to_string(r.n_sc), flagged(r.gini_disc),
                     std::to_string(r.n_disc)});
  }
  std::vector<std::size_t> width(cells.front().size(), 3);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }

  out << "Subject categories: N = " << sc_universe << "; disciplines: N = " << disc_universe
      << ". G in bold when < 0.5, with * when > 0.8.\n\n";
  auto emit = [&](const std::vector<std::string>& row) {
    out << '|';
    for (std::size_t c = 0; c < row.size(); ++c) {
      // Unit names left-aligned, numbers right-aligned.
      if (c == 0) {
        out << ' ' << row[c] << std::string(width[c] - row[c].size(), ' ') << " |";
      } else {
        out << ' ' << std::string(width[c] - row[c].size(), ' ') << row[c] << " |";
      }
    }
    out << '\n';
  };
  emit(cells.front());
  out << '|';
  for (std::size_t c = 0; c < width.size(); ++c) {
    auto dashes = std::string(width[c] - 1, '-');
    out << ' ' << (c == 0 ? ":" + dashes : dashes + ":") << " |";
  }
  out << '\n';
  for (std::size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
}

}  // namespace orgprof
