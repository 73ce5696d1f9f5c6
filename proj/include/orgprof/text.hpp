#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orgprof {

/// A located problem found while reading an input file. `line` is 1-based;
/// 0 means the diagnostic refers to the whole source.
struct Diagnostic {
  std::string source;
  std::size_t line = 0;
  std::string message;

  std::string to_string() const;
};

namespace text {

std::string trim(std::string_view s);
std::string to_upper(std::string_view s);

/// Uppercases, collapses every whitespace run to one space and trims.
std::string normalize(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

bool contains_digit(std::string_view s);

/// Whitespace-delimited words.
std::vector<std::string> words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Levenshtein distance, byte-wise.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace text
}  // namespace orgprof
