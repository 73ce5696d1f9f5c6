#include <charconv>
#include <fstream>

#include "orgprof/pipeline.hpp"

namespace orgprof {

namespace {

using nlohmann::json;

// Strips a '#' comment that is not inside a double-quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted && c == '\\') {
      ++i;
    } else if (c == '"') {
      quoted = !quoted;
    } else if (c == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

}  // namespace

std::optional<std::pair<int, int>> parse_year_range(std::string_view s) {
  auto t = text::trim(s);
  auto dash = t.find('-', 1);
  auto parse_int = [](std::string_view v) -> std::optional<int> {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) return std::nullopt;
    return out;
  };
  if (dash == std::string::npos) {
    auto y = parse_int(t);
    if (!y) return std::nullopt;
    return std::pair{*y, *y};
  }
  auto a = parse_int(text::trim(t.substr(0, dash)));
  auto b = parse_int(text::trim(t.substr(dash + 1)));
  if (!a || !b) return std::nullopt;
  return std::pair{*a, *b};
}

nlohmann::ordered_json PipelineConfig::to_json() const {
  nlohmann::ordered_json j;
  j["corpus"] = corpus.generic_string();
  j["corpus_format"] = corpus_format ? (*corpus_format == CorpusFormat::csv ? "csv" : "jsonl")
                                     : (format_from_path(corpus) == CorpusFormat::csv ? "csv" : "jsonl");
  j["institution_variants"] = institution_variants.generic_string();
  j["aliases"] = aliases.generic_string();
  j["type_rules"] = type_rules ? json(type_rules->generic_string()) : json(nullptr);
  j["subject_categories"] = subject_categories.generic_string();
  j["disciplines"] = disciplines ? json(disciplines->generic_string()) : json(nullptr);
  j["discipline_mapping"] = discipline_mapping.generic_string();
  auto types = json::array();
  for (auto t : doc_types) types.push_back(std::string(to_string(t)));
  j["doc_types"] = types;
  j["years"] = years ? json::array({years->first, years->second}) : json(nullptr);
  j["min_cooc"] = min_cooc;
  j["drop_isolated"] = drop_isolated;
  j["min_pubs"] = min_pubs;
  j["table_unit_type"] = table_unit_type ? std::string(to_string(*table_unit_type)) : "all";
  j["out"] = out_dir.generic_string();
  return j;
}

ConfigParse parse_config(std::istream& in, const std::string& source_name,
                         const std::filesystem::path& base_dir) {
  ConfigParse out;
  auto& cfg = out.config;
  auto problem = [&](std::size_t line, std::string msg) {
    out.diagnostics.push_back({source_name, line, std::move(msg)});
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = text::trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      problem(line_no, "tables are not supported; use top-level keys");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      problem(line_no, "expected key = value");
      continue;
    }
    auto key = text::trim(line.substr(0, eq));
    json value;
    try {
      value = json::parse(text::trim(line.substr(eq + 1)));
    } catch (const json::exception&) {
      problem(line_no, "cannot parse value of '" + key + "'");
      continue;
    }

    auto want_string = [&]() -> std::optional<std::string> {
      if (value.is_string()) return value.get<std::string>();
      problem(line_no, "'" + key + "' must be a string");
      return std::nullopt;
    };
    auto want_int = [&]() -> std::optional<std::int64_t> {
      if (value.is_number_integer()) return value.get<std::int64_t>();
      problem(line_no, "'" + key + "' must be an integer");
      return std::nullopt;
    };

    if (key == "corpus") {
      if (auto s = want_string()) cfg.corpus = resolve(base_dir, *s);
    } else if (key == "corpus_format") {
      if (auto s = want_string()) {
        cfg.corpus_format = parse_corpus_format(*s);
        if (!cfg.corpus_format) problem(line_no, "corpus_format must be jsonl or csv");
      }
    } else if (key == "institution_variants") {
      if (auto s = want_string()) cfg.institution_variants = resolve(base_dir, *s);
    } else if (key == "aliases") {
      if (auto s = want_string()) cfg.aliases = resolve(base_dir, *s);
    } else if (key == "type_rules") {
      if (auto s = want_string()) cfg.type_rules = resolve(base_dir, *s);
    } else if (key == "subject_categories") {
      if (auto s = want_string()) cfg.subject_categories = resolve(base_dir, *s);
    } else if (key == "disciplines") {
      if (auto s = want_string()) cfg.disciplines = resolve(base_dir, *s);
    } else if (key == "discipline_mapping") {
      if (auto s = want_string()) cfg.discipline_mapping = resolve(base_dir, *s);
    } else if (key == "doc_types") {
      std::string joined;
      if (value.is_array()) {
        for (const auto& v : value) joined += (v.is_string() ? v.get<std::string>() : "?") + ",";
      } else if (value.is_string()) {
        joined = value.get<std::string>();
      }
      auto types = parse_doc_type_list(joined);
      if (types) {
        cfg.doc_types = *types;
      } else {
        problem(line_no, "doc_types must list article, review, letter, proceedings_paper or other");
      }
    } else if (key == "years") {
      std::optional<std::pair<int, int>> range;
      if (value.is_string()) {
        range = parse_year_range(value.get<std::string>());
      } else if (value.is_array() && value.size() == 2 && value[0].is_number_integer() &&
                 value[1].is_number_integer()) {
        range = std::pair{value[0].get<int>(), value[1].get<int>()};
      }
      if (range) {
        cfg.years = range;
      } else {
        problem(line_no, "years must be \"START-END\" or [START, END]");
      }
    } else if (key == "min_cooc") {
      if (auto v = want_int()) cfg.min_cooc = *v;
    } else if (key == "min_pubs") {
      if (auto v = want_int()) cfg.min_pubs = *v;
    } else if (key == "drop_isolated") {
      if (value.is_boolean()) {
        cfg.drop_isolated = value.get<bool>();
      } else {
        problem(line_no, "'drop_isolated' must be true or false");
      }
    } else if (key == "table_unit_type") {
      if (auto s = want_string()) {
        if (*s == "all") {
          cfg.table_unit_type.reset();
        } else if (auto t = parse_unit_type(*s)) {
          cfg.table_unit_type = t;
        } else {
          problem(line_no, "unknown unit type '" + *s + "'");
        }
      }
    } else if (key == "out") {
      if (auto s = want_string()) cfg.out_dir = resolve(base_dir, *s);
    } else {
      problem(line_no, "unknown key '" + key + "'");
    }
  }
  return out;
}

ConfigParse load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigParse out;
    out.diagnostics.push_back({path.string(), 0, "cannot read config file"});
    return out;
  }
  return parse_config(in, path.string(), path.parent_path());
}

std::vector<Diagnostic> validate_config(const PipelineConfig& config) {
  std::vector<Diagnostic> out;
  auto fail = [&](std::string msg) { out.push_back({"config", 0, std::move(msg)}); };
  auto keep = [&](const std::vector<Diagnostic>& ds) { out.insert(out.end(), ds.begin(), ds.end()); };

  auto check_file = [&](const std::filesystem::path& p, const char* what) {
    if (p.empty()) {
      fail(std::string(what) + " is not set");
      return false;
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) {
      fail(std::string(what) + " not found: " + p.string());
      return false;
    }
    return true;
  };

  check_file(config.corpus, "corpus");

  if (check_file(config.institution_variants, "institution variants file")) {
    try {
      InstitutionMatcher::load(config.institution_variants);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  if (check_file(config.aliases, "alias file")) {
    std::ifstream in(config.aliases);
    keep(AliasTable::parse(in, config.aliases.string()).diagnostics);
  }

  if (config.type_rules && check_file(*config.type_rules, "type rules file")) {
    try {
      TypeRuleSet::load(*config.type_rules);
    } catch (const CurationError& e) {
      keep(e.diagnostics());
    }
  }

  if (check_file(config.subject_categories, "subject categories file")) {
    try {
      ClassificationSystem::load(config.subject_categories, "subject categories");
    } catch (const CurationError& e) {
      keep(e.diagnostics());
    }
  }

  bool disciplines_ok = !config.disciplines || check_file(*config.disciplines, "disciplines file");
  if (check_file(config.discipline_mapping, "discipline mapping file") && disciplines_ok) {
    try {
      if (config.disciplines) {
        auto disc = ClassificationSystem::load(*config.disciplines, "disciplines");
        disc.load_mapping(config.discipline_mapping);
      } else {
        ClassificationSystem::from_mapping(config.discipline_mapping, "disciplines");
      }
    } catch (const CurationError& e) {
      keep(e.diagnostics());
    }
  }

  if (config.min_cooc < 0) fail("min_cooc must be >= 0");
  if (config.min_pubs < 0) fail("min_pubs must be >= 0");
  if (config.years && config.years->first > config.years->second) {
    fail("year range start " + std::to_string(config.years->first) + " is after end " +
         std::to_string(config.years->second));
  }
  if (config.doc_types.empty()) fail("doc_types is empty");
  if (config.out_dir.empty()) fail("output directory is not set");
  return out;
}

}  // namespace orgprof
