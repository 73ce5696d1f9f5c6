#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orgprof::csv {

struct Row {
  std::size_t line = 0;  // line on which the row starts
  std::vector<std::string> fields;
  std::optional<std::string> error;  // set when the row could not be tokenized
};

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
/// line breaks. Blank lines are skipped.
std::vector<Row> read_rows(std::istream& in);

/// Quotes the field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

}  // namespace orgprof::csv
