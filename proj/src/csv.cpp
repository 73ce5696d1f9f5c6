#include "orgprof/csv.hpp"

namespace orgprof::csv {

std::vector<Row> read_rows(std::istream& in) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    Row row;
    row.line = line_no;
    std::string field;
    bool in_quotes = false;
    bool after_quote = false;
    std::size_t i = 0;
    while (true) {
      if (i == line.size()) {
        if (!in_quotes) break;
        // Quoted field spans a line break.
        std::string next;
        if (!std::getline(in, next)) {
          row.error = "unterminated quoted field";
          break;
        }
        ++line_no;
        if (!next.empty() && next.back() == '\r') next.pop_back();
        field.push_back('\n');
        line = std::move(next);
        i = 0;
        continue;
      }
      char c = line[i++];
      if (in_quotes) {
        if (c == '"') {
          if (i < line.size() && line[i] == '"') {
            field.push_back('"');
            ++i;
          } else {
            in_quotes = false;
            after_quote = true;
          }
        } else {
          field.push_back(c);
        }
      } else if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        after_quote = false;
      } else if (c == '"' && field.empty() && !after_quote) {
        in_quotes = true;
      } else if (after_quote) {
        row.error = "unexpected character after closing quote";
        break;
      } else {
        field.push_back(c);
      }
    }
    if (!row.error) row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace orgprof::csv
