#include "orgprof/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "orgprof/address.hpp"

namespace orgprof {

namespace {

using nlohmann::ordered_json;

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::filesystem::path clean_dir(const std::filesystem::path& p) {
  auto out = p.lexically_normal();
  if (out.filename().empty()) out = out.parent_path();
  return out;
}

void note(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << '\n';
}

// Collects output files in a staging directory next to the target and moves
// them into place only when commit() is reached.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path target)
      : target_(clean_dir(target)), staging_(target_.string() + ".partial") {
    std::filesystem::remove_all(staging_);
    std::filesystem::create_directories(staging_);
  }
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;
  ~StagedOutput() {
    std::error_code ec;
    std::filesystem::remove_all(staging_, ec);
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    auto path = staging_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("error while writing " + path.string());
    files_.push_back(name);
  }

  std::filesystem::path staged(const std::string& name) const { return staging_ / name; }
  const std::vector<std::string>& files() const { return files_; }

  void commit() {
    std::filesystem::create_directories(target_);
    for (const auto& name : files_) {
      std::filesystem::rename(staging_ / name, target_ / name);
    }
  }

 private:
  std::filesystem::path target_;
  std::filesystem::path staging_;
  std::vector<std::string> files_;
};

ordered_json counts_json(const RecordCounts& c) {
  ordered_json j;
  j["total_records"] = c.total;
  j["malformed_lines"] = c.malformed_lines;
  j["doc_type_filtered"] = c.doc_type_filtered;
  j["year_filtered"] = c.year_filtered;
  j["no_target_address"] = c.no_target_address;
  j["university_only"] = c.university_only;
  j["analyzed"] = c.analyzed;
  return j;
}

}  // namespace

StageError::StageError(std::string stage, const std::string& cause)
    : std::runtime_error(stage + ": " + cause), stage_(std::move(stage)) {}

RecordsByUnit Analysis::records_by_unit() const {
  RecordsByUnit out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& u : unit_sets[i]) out[u.name].push_back(&records[i]);
  }
  return out;
}

Analysis analyze(const PipelineConfig& config) {
  Analysis a;

  auto loaded = in_stage("ingest", [&] {
    auto format = config.corpus_format.value_or(format_from_path(config.corpus));
    return load_corpus(config.corpus, format);
  });
  a.diagnostics = std::move(loaded.diagnostics);
  a.counts.total = loaded.records.size();
  a.counts.malformed_lines = a.diagnostics.size();

  auto matcher = in_stage("ingest", [&] { return InstitutionMatcher::load(config.institution_variants); });
  auto aliases = in_stage("normalize", [&] { return AliasTable::load(config.aliases); });
  auto rules = in_stage("normalize", [&] {
    return config.type_rules ? TypeRuleSet::load(*config.type_rules) : TypeRuleSet::defaults();
  });

  auto kept = filter_doc_types(loaded.records, config.doc_types);
  a.counts.doc_type_filtered = loaded.records.size() - kept.size();

  for (auto& record : kept) {
    if (config.years && (record.year < config.years->first || record.year > config.years->second)) {
      ++a.counts.year_filtered;
      continue;
    }
    auto addresses = select_institution_addresses(record, matcher);
    if (addresses.empty()) {
      ++a.counts.no_target_address;
      continue;
    }
    std::vector<std::string> names;
    for (const auto& address : addresses) {
      auto parse = parse_address(address);
      for (const auto& token : parse.unit_tokens) {
        ++a.raw_token_counts[token];
        names.push_back(canonicalize(token, aliases));
      }
    }
    if (names.empty()) {
      ++a.counts.university_only;
      continue;
    }
    a.unit_sets.push_back(dedupe_units(names, rules));
    a.records.push_back(std::move(record));
  }
  a.counts.analyzed = a.records.size();
  return a;
}

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

ordered_json RunReport::to_json() const {
  ordered_json j;
  j["config"] = config;
  j["counts"] = counts_json(counts);
  ordered_json net;
  net["units"] = units;
  net["edges"] = edges;
  net["display_nodes"] = display_nodes;
  net["display_edges"] = display_edges;
  net["display_component_sizes"] = component_sizes;
  j["network"] = net;
  auto dist = ordered_json::array();
  for (const auto& t : type_distribution) {
    ordered_json row;
    row["type"] = std::string(to_string(t.type));
    row["publications"] = t.publications;
    row["share_percent"] = fmt::format("{:.1f}", t.share_percent);
    row["distinct_units"] = t.distinct_units;
    dist.push_back(row);
  }
  j["type_distribution"] = dist;
  ordered_json prof;
  prof["sc_universe"] = sc_universe;
  prof["disc_universe"] = disc_universe;
  prof["records_without_categories"] = records_without_categories;
  prof["unmapped_subject_categories"] = unmapped_subject_categories;
  prof["indicator_rows"] = indicator_rows;
  j["profiles"] = prof;
  j["warnings"] = warnings;
  j["digests"] = digests;
  return j;
}

RunReport run_pipeline(const PipelineConfig& config, OutputSet outputs, std::ostream* log) {
  RunReport report;
  report.config = config.to_json();

  auto analysis = analyze(config);
  report.counts = analysis.counts;
  for (const auto& d : analysis.diagnostics) note(log, "warning: " + d.to_string());
  note(log, fmt::format("ingest: {} records, {} analyzed, {} university-only discarded",
                        report.counts.total, report.counts.analyzed, report.counts.university_only));
  if (analysis.counts.analyzed == 0) {
    report.warnings.push_back("no records left for analysis");
    note(log, "warning: no records left for analysis");
  }
  report.type_distribution = type_distribution(analysis.unit_sets);

  auto net = in_stage("network", [&] {
    auto n = build_network(analysis.unit_sets);
    n.set_betweenness(betweenness(n));
    return n;
  });
  auto display = apply_threshold(net, static_cast<std::size_t>(config.min_cooc), config.drop_isolated);
  report.units = net.node_count();
  report.edges = net.edge_count();
  report.display_nodes = display.node_count();
  report.display_edges = display.edge_count();
  for (const auto& c : connected_components(display)) report.component_sizes.push_back(c.size());

  std::vector<UnitIndicators> rows;
  if (outputs != OutputSet::network) {
    rows = in_stage("profiles", [&] {
      auto sc = ClassificationSystem::load(config.subject_categories, "subject categories");
      auto disc = config.disciplines ? ClassificationSystem::load(*config.disciplines, "disciplines")
                                     : ClassificationSystem::from_mapping(config.discipline_mapping,
                                                                          "disciplines");
      if (config.disciplines) disc.load_mapping(config.discipline_mapping);
      report.sc_universe = sc.size();
      report.disc_universe = disc.size();
      report.unmapped_subject_categories = unmapped_categories(sc, disc);

      for (const auto& r : analysis.records) {
        if (r.subject_categories.empty()) ++report.records_without_categories;
      }
      if (report.records_without_categories > 0) {
        report.warnings.push_back(fmt::format("{} analyzed records have no subject categories",
                                              report.records_without_categories));
        note(log, "warning: " + report.warnings.back());
      }

      IndicatorOptions options{static_cast<std::size_t>(config.min_pubs), config.table_unit_type};
      return indicator_table(net, analysis.records_by_unit(), sc, disc, options);
    });
    report.indicator_rows = rows.size();
  }

  in_stage("write", [&] {
    StagedOutput staged(config.out_dir);
    staged.write("summary.csv", [&](std::ostream& out) {
      out << "metric,value\n";
      auto counts = counts_json(report.counts);
      for (const auto& [k, v] : counts.items()) out << k << ',' << v << '\n';
    });
    if (outputs != OutputSet::profiles) {
      staged.write("type_distribution.csv", [&](std::ostream& out) {
        out << "type,publications,share_percent,distinct_units\n";
        for (const auto& t : report.type_distribution) {
          out << to_string(t.type) << ',' << t.publications << ','
              << fmt::format("{:.1f}", t.share_percent) << ',' << t.distinct_units << '\n';
        }
      });
      staged.write("nodes.csv", [&](std::ostream& out) { write_node_table(net, out); });
      staged.write("edges.csv", [&](std::ostream& out) { write_graph(net, GraphFormat::edge_csv, out); });
      staged.write("network.graphml",
                   [&](std::ostream& out) { write_graph(display, GraphFormat::graphml, out); });
      staged.write("network.dot", [&](std::ostream& out) { write_graph(display, GraphFormat::dot, out); });
    }
    if (outputs != OutputSet::network) {
      staged.write("indicators.csv", [&](std::ostream& out) {
        write_indicator_csv(rows, report.sc_universe, report.disc_universe, out);
      });
      staged.write("indicators.md", [&](std::ostream& out) {
        write_indicator_markdown(rows, report.sc_universe, report.disc_universe, out);
      });
    }
    for (const auto& name : staged.files()) report.digests[name] = sha256_hex(staged.staged(name));
    staged.write("run_report.json",
                 [&](std::ostream& out) { out << report.to_json().dump(2) << '\n'; });
    staged.commit();
    return 0;
  });
  note(log, fmt::format("network: {} units, {} edges ({} nodes / {} edges after threshold)",
                        report.units, report.edges, report.display_nodes, report.display_edges));
  return report;
}

}  // namespace orgprof
