#include "orgprof/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

namespace orgprof {

namespace {

std::string strip_comment(std::string line) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string line_ref(std::size_t line) { return "line " + std::to_string(line); }

bool rule_matches(const std::vector<std::string>& pattern,
                  const std::vector<std::string>& name_words) {
  if (pattern.empty() || name_words.empty()) return false;
  if (pattern.size() == 1 && name_words.front().rfind(pattern.front(), 0) == 0) return true;
  if (pattern.size() > name_words.size()) return false;
  for (std::size_t i = 0; i + pattern.size() <= name_words.size(); ++i) {
    if (std::equal(pattern.begin(), pattern.end(), name_words.begin() + static_cast<long>(i))) {
      return true;
    }
  }
  return false;
}

std::string skeleton(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::string_view to_string(UnitType type) {
  switch (type) {
    case UnitType::department: return "department";
    case UnitType::faculty: return "faculty";
    case UnitType::school: return "school";
    case UnitType::research_center: return "research_center";
    case UnitType::research_group: return "research_group";
    case UnitType::unit: return "unit";
    case UnitType::laboratory: return "laboratory";
    case UnitType::hospital: return "hospital";
    case UnitType::other: return "other";
  }
  return "other";
}

std::optional<UnitType> parse_unit_type(std::string_view name) {
  auto key = text::trim(name);
  for (auto t : kAllUnitTypes) {
    if (to_string(t) == key) return t;
  }
  return std::nullopt;
}

CurationError::CurationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
        std::string msg;
        for (const auto& d : diagnostics) {
          if (!msg.empty()) msg += "\n";
          msg += d.to_string();
        }
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

// ---------------------------------------------------------------------------
// AliasTable

AliasTable::Parsed AliasTable::parse(std::istream& in, const std::string& source_name) {
  Parsed out;
  struct Entry {
    std::string canonical;
    std::size_t line;
  };
  std::map<std::string, Entry> entries;
  std::vector<std::pair<std::string, std::size_t>> order;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 2) {
      out.diagnostics.push_back({source_name, line_no, "expected variant<TAB>canonical"});
      continue;
    }
    auto variant = text::normalize(cols[0]);
    auto canonical = text::normalize(cols[1]);
    if (variant.empty() || canonical.empty()) {
      out.diagnostics.push_back({source_name, line_no, "empty variant or canonical name"});
      continue;
    }
    auto [it, inserted] = entries.try_emplace(variant, Entry{canonical, line_no});
    if (!inserted) {
      if (it->second.canonical != canonical) {
        out.diagnostics.push_back(
            {source_name, line_no,
             "conflicting alias: '" + variant + "' -> '" + canonical + "' but " +
                 line_ref(it->second.line) + " maps it to '" + it->second.canonical + "'"});
      }
      continue;
    }
    order.emplace_back(variant, line_no);
  }

  // A target that is itself a variant of something else makes a chain.
  for (const auto& [variant, line] : order) {
    const auto& target = entries.at(variant);
    auto next = entries.find(target.canonical);
    if (next != entries.end() && next->second.canonical != target.canonical) {
      out.diagnostics.push_back(
          {source_name, line,
           "alias chain: '" + variant + "' -> '" + target.canonical + "' (" + line_ref(line) +
               ") and '" + next->first + "' -> '" + next->second.canonical + "' (" +
               line_ref(next->second.line) + ")"});
    }
  }

  if (out.diagnostics.empty()) {
    for (const auto& [variant, entry] : entries) out.table.entries_.emplace(variant, entry.canonical);
  }
  return out;
}

AliasTable AliasTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CurationError({{path.string(), 0, "cannot read alias file"}});
  auto parsed = parse(in, path.string());
  if (!parsed.diagnostics.empty()) throw CurationError(std::move(parsed.diagnostics));
  return std::move(parsed.table);
}

void AliasTable::add(std::string_view variant_in, std::string_view canonical_in) {
  auto variant = text::normalize(variant_in);
  auto canonical = text::normalize(canonical_in);
  if (variant.empty() || canonical.empty()) {
    throw std::invalid_argument("alias entries must be non-empty");
  }
  if (auto it = entries_.find(variant); it != entries_.end() && it->second != canonical) {
    throw std::invalid_argument("conflicting alias for '" + variant + "'");
  }
  if (auto it = entries_.find(canonical); it != entries_.end() && it->second != canonical) {
    throw std::invalid_argument("alias chain through '" + canonical + "'");
  }
  if (variant != canonical) {
    for (const auto& [k, v] : entries_) {
      if (v == variant && k != variant) {
        throw std::invalid_argument("alias chain through '" + variant + "'");
      }
    }
  }
  entries_[variant] = canonical;
}

const std::string* AliasTable::find(std::string_view variant) const {
  auto it = entries_.find(variant);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string canonicalize(std::string_view token, const AliasTable& aliases) {
  if (const auto* hit = aliases.find(token)) return *hit;
  return std::string(token);
}

// ---------------------------------------------------------------------------
// TypeRuleSet

TypeRuleSet::TypeRuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (auto& r : rules_) {
    r.pattern = text::normalize(r.pattern);
    if (r.pattern.empty()) throw std::invalid_argument("empty type rule pattern");
  }
}

TypeRuleSet TypeRuleSet::defaults() {
  return TypeRuleSet({
      {"DEPT", UnitType::department},
      {"DPTO", UnitType::department},
      {"FAC", UnitType::faculty},
      {"SCH", UnitType::school},
      {"ESCUELA", UnitType::school},
      {"INST", UnitType::research_center},
      {"CTR", UnitType::research_center},
      {"CENTRO", UnitType::research_center},
      {"RES GRP", UnitType::research_group},
      {"GRP", UnitType::research_group},
      {"GRUPO", UnitType::research_group},
      {"UNIT", UnitType::unit},
      {"UNIDAD", UnitType::unit},
      {"LAB", UnitType::laboratory},
      {"HOSP", UnitType::hospital},
  });
}

TypeRuleSet TypeRuleSet::parse(std::istream& in, const std::string& source_name) {
  std::vector<Rule> rules;
  std::vector<Diagnostic> problems;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = strip_comment(raw);
    if (text::trim(line).empty()) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 2 || text::normalize(cols[0]).empty()) {
      problems.push_back({source_name, line_no, "expected pattern<TAB>type"});
      continue;
    }
    auto type = parse_unit_type(cols[1]);
    if (!type) {
      problems.push_back({source_name, line_no, "unknown unit type '" + text::trim(cols[1]) + "'"});
      continue;
    }
    rules.push_back({cols[0], *type});
  }
  if (!problems.empty()) throw CurationError(std::move(problems));
  return TypeRuleSet(std::move(rules));
}

TypeRuleSet TypeRuleSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CurationError({{path.string(), 0, "cannot read type rules file"}});
  return parse(in, path.string());
}

UnitType TypeRuleSet::classify(std::string_view name) const {
  auto name_words = text::words(text::normalize(name));
  for (const auto& rule : rules_) {
    if (rule_matches(text::words(rule.pattern), name_words)) return rule.type;
  }
  return UnitType::other;
}

// ---------------------------------------------------------------------------

std::vector<CanonicalUnit> dedupe_units(std::span<const std::string> canonical_names,
                                        const TypeRuleSet& rules) {
  std::set<std::string> names(canonical_names.begin(), canonical_names.end());
  std::vector<CanonicalUnit> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    if (n.empty()) continue;
    out.push_back({n, rules.classify(n)});
  }
  return out;
}

double percent_share(std::size_t count, std::size_t total) {
  if (total == 0) return 0.0;
  return std::round(1000.0 * static_cast<double>(count) / static_cast<double>(total)) / 10.0;
}

std::vector<TypeShare> type_distribution(const std::vector<std::vector<CanonicalUnit>>& unit_sets) {
  constexpr std::size_t kTypes = std::size(kAllUnitTypes);
  std::vector<std::size_t> pubs(kTypes, 0);
  std::vector<std::set<std::string>> names(kTypes);

  for (const auto& units : unit_sets) {
    std::vector<bool> present(kTypes, false);
    for (const auto& u : units) {
      auto idx = static_cast<std::size_t>(u.type);
      present[idx] = true;
      names[idx].insert(u.name);
    }
    for (std::size_t i = 0; i < kTypes; ++i) pubs[i] += present[i] ? 1 : 0;
  }

  std::vector<TypeShare> out;
  for (std::size_t i = 0; i < kTypes; ++i) {
    out.push_back({kAllUnitTypes[i], pubs[i], percent_share(pubs[i], unit_sets.size()),
                   names[i].size()});
  }
  return out;
}

std::vector<AliasSuggestion> suggest_aliases(const std::map<std::string, std::size_t>& token_counts) {
  std::vector<std::pair<std::string, std::size_t>> tokens(token_counts.begin(), token_counts.end());
  std::vector<std::string> skeletons;
  for (const auto& [t, _] : tokens) skeletons.push_back(skeleton(t));

  DisjointSets sets(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size(); ++j) {
      const auto& a = skeletons[i];
      const auto& b = skeletons[j];
      auto shorter = std::min(a.size(), b.size());
      std::size_t budget = shorter >= 12 ? 2 : shorter >= 6 ? 1 : 0;
      auto gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
      if (gap > budget) continue;
      if (a == b || text::edit_distance(a, b) <= budget) sets.unite(i, j);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < tokens.size(); ++i) groups[sets.find(i)].push_back(i);

  std::vector<AliasSuggestion> out;
  for (const auto& [_, members] : groups) {
    if (members.size() < 2) continue;
    auto best = *std::min_element(members.begin(), members.end(), [&](auto x, auto y) {
      if (tokens[x].second != tokens[y].second) return tokens[x].second > tokens[y].second;
      return tokens[x].first < tokens[y].first;
    });
    AliasSuggestion s{tokens[best].first, {}};
    for (auto m : members) {
      if (m != best) s.variants.push_back(tokens[m]);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.canonical < b.canonical; });
  return out;
}

}  // namespace orgprof
