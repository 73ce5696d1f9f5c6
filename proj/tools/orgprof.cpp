// orgprof: organizational-unit profiles from publication address data.
//
//   orgprof run --config study.toml
//   orgprof parse-debug "UNIV GRANADA, FAC SCI, DEPT ALGEBRA, E-18071 GRANADA, SPAIN"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "orgprof/address.hpp"
#include "orgprof/corpus.hpp"
#include "orgprof/normalize.hpp"
#include "orgprof/pipeline.hpp"

namespace fs = std::filesystem;
using namespace orgprof;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::string config;
  std::optional<std::int64_t> min_cooc;
  std::optional<std::int64_t> min_pubs;
  std::optional<std::string> doc_types;
  std::optional<std::string> years;
  std::optional<std::string> out;
};

void add_pipeline_flags(CLI::App* cmd, Overrides& o, bool config_required = true) {
  auto* cfg = cmd->add_option("--config", o.config, "pipeline config file (TOML subset)");
  if (config_required) cfg->required();
  cmd->add_option("--min-cooc", o.min_cooc, "drop display edges with weight <= N");
  cmd->add_option("--min-pubs", o.min_pubs, "list units with more than N publications");
  cmd->add_option("--doc-types", o.doc_types, "comma-separated document types to keep");
  cmd->add_option("--years", o.years, "publication year range, e.g. 2006-2010");
  cmd->add_option("--out", o.out, "output directory");
}

void print_diagnostics(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << "error: " << d.to_string() << '\n';
}

// Loads the config and applies flag overrides. Returns nullopt after printing
// the problems when the result is not runnable.
std::optional<PipelineConfig> resolve_config(const Overrides& o) {
  auto parsed = load_config(o.config);
  auto& cfg = parsed.config;
  auto& problems = parsed.diagnostics;
  if (o.min_cooc) cfg.min_cooc = *o.min_cooc;
  if (o.min_pubs) cfg.min_pubs = *o.min_pubs;
  if (o.doc_types) {
    if (auto t = parse_doc_type_list(*o.doc_types)) {
      cfg.doc_types = *t;
    } else {
      problems.push_back({"--doc-types", 0, "unknown document type in '" + *o.doc_types + "'"});
    }
  }
  if (o.years) {
    if (auto y = parse_year_range(*o.years)) {
      cfg.years = y;
    } else {
      problems.push_back({"--years", 0, "expected START-END, got '" + *o.years + "'"});
    }
  }
  if (o.out) cfg.out_dir = *o.out;
  if (problems.empty()) problems = validate_config(cfg);
  if (!problems.empty()) {
    print_diagnostics(problems);
    return std::nullopt;
  }
  return cfg;
}

int run_stages(const Overrides& o, OutputSet outputs) {
  auto cfg = resolve_config(o);
  if (!cfg) return kExitInvalid;
  try {
    auto report = run_pipeline(*cfg, outputs, &std::cerr);
    std::cout << "wrote " << report.digests.size() + 1 << " files to " << cfg->out_dir.string()
              << '\n';
  } catch (const StageError& e) {
    std::cerr << "error: stage " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_ingest(const Overrides& o, const std::string& corpus, const std::string& format_name) {
  PipelineConfig cfg;
  if (!o.config.empty()) {
    auto parsed = load_config(o.config);
    if (!parsed.diagnostics.empty()) {
      print_diagnostics(parsed.diagnostics);
      return kExitInvalid;
    }
    cfg = parsed.config;
  }
  if (!corpus.empty()) cfg.corpus = corpus;
  if (!format_name.empty()) {
    cfg.corpus_format = parse_corpus_format(format_name);
    if (!cfg.corpus_format) {
      std::cerr << "error: --format must be jsonl or csv\n";
      return kExitInvalid;
    }
  }
  if (o.doc_types) {
    auto t = parse_doc_type_list(*o.doc_types);
    if (!t) {
      std::cerr << "error: unknown document type in '" << *o.doc_types << "'\n";
      return kExitInvalid;
    }
    cfg.doc_types = *t;
  }
  if (o.years) {
    cfg.years = parse_year_range(*o.years);
    if (!cfg.years || cfg.years->first > cfg.years->second) {
      std::cerr << "error: bad --years '" << *o.years << "'\n";
      return kExitInvalid;
    }
  }
  if (cfg.corpus.empty()) {
    std::cerr << "error: give --corpus or --config\n";
    return kExitInvalid;
  }

  LoadResult loaded;
  try {
    loaded = load_corpus(cfg.corpus, cfg.corpus_format.value_or(format_from_path(cfg.corpus)));
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  for (const auto& d : loaded.diagnostics) std::cerr << "warning: " << d.to_string() << '\n';
  auto kept = filter_doc_types(loaded.records, cfg.doc_types);
  std::size_t in_years = 0;
  for (const auto& r : kept) {
    if (!cfg.years || (r.year >= cfg.years->first && r.year <= cfg.years->second)) ++in_years;
  }
  std::cout << "records\t" << loaded.records.size() << '\n'
            << "malformed_lines\t" << loaded.diagnostics.size() << '\n'
            << "doc_type_filtered\t" << loaded.records.size() - kept.size() << '\n'
            << "year_filtered\t" << kept.size() - in_years << '\n'
            << "kept\t" << in_years << '\n';
  return kExitOk;
}

int cmd_parse_debug(const std::vector<std::string>& inputs, bool as_field,
                    const std::string& alias_path, const std::string& rules_path) {
  AliasTable aliases;
  TypeRuleSet rules = TypeRuleSet::defaults();
  try {
    if (!alias_path.empty()) aliases = AliasTable::load(alias_path);
    if (!rules_path.empty()) rules = TypeRuleSet::load(rules_path);
  } catch (const CurationError& e) {
    print_diagnostics(e.diagnostics());
    return kExitInvalid;
  }

  std::vector<std::string> addresses;
  for (const auto& in : inputs) {
    if (!as_field) {
      addresses.push_back(in);
      continue;
    }
    auto split = split_addresses(in);
    if (split.diagnostic) std::cerr << "warning: " << *split.diagnostic << '\n';
    addresses.insert(addresses.end(), split.addresses.begin(), split.addresses.end());
  }

  for (const auto& address : addresses) {
    if (normalize_address(address).empty()) {
      std::cerr << "warning: empty address skipped\n";
      continue;
    }
    auto parse = parse_address(address);
    nlohmann::ordered_json j;
    j["normalized"] = normalize_address(address);
    j["head"] = parse.head;
    auto units = nlohmann::ordered_json::array();
    for (const auto& token : parse.unit_tokens) {
      auto canonical = canonicalize(token, aliases);
      units.push_back({{"token", token},
                       {"canonical", canonical},
                       {"type", std::string(to_string(rules.classify(canonical)))}});
    }
    j["unit_tokens"] = units;
    j["tail"] = parse.tail;
    j["university_only"] = is_university_only(parse);
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_suggest_aliases(const Overrides& o, const std::string& out_path) {
  auto cfg = resolve_config(o);
  if (!cfg) return kExitInvalid;
  Analysis analysis;
  try {
    analysis = analyze(*cfg);
  } catch (const StageError& e) {
    std::cerr << "error: stage " << e.what() << '\n';
    return kExitRuntime;
  }

  std::ostringstream body;
  body << "# Suggested aliases, variant<TAB>canonical. Review before use.\n";
  for (const auto& s : suggest_aliases(analysis.raw_token_counts)) {
    body << "\n# " << s.canonical << " (" << analysis.raw_token_counts.at(s.canonical) << ")\n";
    for (const auto& [variant, count] : s.variants) {
      body << "# " << count << "\n" << variant << '\t' << s.canonical << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << body.str())) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_report(const Overrides& o) {
  fs::path dir;
  if (o.out) {
    dir = *o.out;
  } else if (!o.config.empty()) {
    auto parsed = load_config(o.config);
    if (!parsed.diagnostics.empty()) {
      print_diagnostics(parsed.diagnostics);
      return kExitInvalid;
    }
    dir = parsed.config.out_dir;
  } else {
    std::cerr << "error: give --out or --config\n";
    return kExitInvalid;
  }

  std::ifstream in(dir / "run_report.json");
  if (!in) {
    std::cerr << "error: no run_report.json in " << dir.string() << "; run the pipeline first\n";
    return kExitInvalid;
  }
  nlohmann::ordered_json report;
  try {
    report = nlohmann::ordered_json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  std::cout << "# Run report\n\n## Records\n\n";
  for (const auto& [k, v] : report["counts"].items()) std::cout << "- " << k << ": " << v << '\n';
  std::cout << "\n## Unit types (share of analyzed records)\n\n";
  for (const auto& row : report["type_distribution"]) {
    std::cout << "- " << row["type"].get<std::string>() << ": " << row["publications"] << " ("
              << row["share_percent"].get<std::string>() << "%), " << row["distinct_units"]
              << " units\n";
  }
  std::cout << "\n## Network\n\n";
  for (const auto& [k, v] : report["network"].items()) std::cout << "- " << k << ": " << v.dump() << '\n';
  for (const auto& w : report["warnings"]) std::cout << "\nwarning: " << w.get<std::string>() << '\n';

  std::ifstream table(dir / "indicators.md");
  if (table) std::cout << "\n## Indicators\n\n" << table.rdbuf();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Organizational-unit profiles and co-occurrence networks from address data"};
  app.require_subcommand(1);

  Overrides o;

  auto* ingest = app.add_subcommand("ingest", "load a corpus and report record counts");
  std::string corpus;
  std::string format;
  ingest->add_option("--config", o.config, "pipeline config file");
  ingest->add_option("--corpus", corpus, "corpus file (overrides the config)");
  ingest->add_option("--format", format, "jsonl or csv");
  ingest->add_option("--doc-types", o.doc_types, "comma-separated document types to keep");
  ingest->add_option("--years", o.years, "publication year range, e.g. 2006-2010");

  auto* parse_debug = app.add_subcommand("parse-debug", "show how addresses are decomposed");
  std::vector<std::string> addresses;
  bool as_field = false;
  std::string alias_path;
  std::string rules_path;
  parse_debug->add_option("address", addresses, "address strings")->required();
  parse_debug->add_flag("--field", as_field, "split each argument on '.' address delimiters first");
  parse_debug->add_option("--aliases", alias_path, "alias table to apply");
  parse_debug->add_option("--type-rules", rules_path, "type rules to apply");

  auto* suggest = app.add_subcommand("suggest-aliases", "group similar unit names for curation");
  std::string suggest_out;
  add_pipeline_flags(suggest, o);
  suggest->add_option("--output", suggest_out, "write suggestions here instead of stdout");

  auto* network = app.add_subcommand("network", "build and export the co-occurrence network");
  add_pipeline_flags(network, o);
  auto* profiles = app.add_subcommand("profiles", "write unit indicator tables");
  add_pipeline_flags(profiles, o);
  auto* report = app.add_subcommand("report", "summarize a finished run");
  report->add_option("--config", o.config, "pipeline config file");
  report->add_option("--out", o.out, "output directory of the run");
  auto* run = app.add_subcommand("run", "run the full pipeline");
  add_pipeline_flags(run, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*ingest) return cmd_ingest(o, corpus, format);
    if (*parse_debug) return cmd_parse_debug(addresses, as_field, alias_path, rules_path);
    if (*suggest) return cmd_suggest_aliases(o, suggest_out);
    if (*network) return run_stages(o, OutputSet::network);
    if (*profiles) return run_stages(o, OutputSet::profiles);
    if (*report) return cmd_report(o);
    if (*run) return run_stages(o, OutputSet::all);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}
