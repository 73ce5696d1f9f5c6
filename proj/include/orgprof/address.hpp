#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orgprof {

/// One affiliation address broken into its organizational levels.
///
/// `head` is the institution (first comma segment), `tail` holds the
/// stripped location segments (postcode+city, country) and `unit_tokens`
/// everything in between. Joining head, unit_tokens and tail with ", "
/// gives back normalize_address() of the source string.
struct AddressParse {
  std::string head;
  std::vector<std::string> unit_tokens;
  std::vector<std::string> tail;

  bool operator==(const AddressParse&) const = default;
};

struct SplitResult {
  std::vector<std::string> addresses;
  std::optional<std::string> diagnostic;
};

/// Splits a raw address field holding several dot-terminated addresses.
/// A '.' ends an address when it is followed by the end of the field or by
/// whitespace, and the text accumulated since the previous split already
/// contains a comma (so abbreviations such as "ST. JOHNS" in a head survive).
SplitResult split_addresses(std::string_view address_field);

/// Semicolons become commas, whitespace is collapsed, text is uppercased,
/// segments are trimmed and rejoined with ", ", empty segments are dropped.
std::string normalize_address(std::string_view address);

/// Postcode-like (contains a digit) or a known country name.
bool looks_like_location(std::string_view segment);

bool is_country_name(std::string_view segment);

/// Throws std::invalid_argument when `address` normalizes to nothing.
AddressParse parse_address(std::string_view address);

inline bool is_university_only(const AddressParse& parse) { return parse.unit_tokens.empty(); }

}  // namespace orgprof
