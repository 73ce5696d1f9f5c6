#include "orgprof/address.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <stdexcept>

#include "orgprof/text.hpp"

namespace orgprof {

namespace {

// Country spellings as they appear in Web of Science style address fields.
constexpr std::string_view kCountries[] = {
    "ALGERIA",      "ARGENTINA",     "AUSTRALIA",      "AUSTRIA",
    "BANGLADESH",   "BELARUS",       "BELGIUM",        "BOLIVIA",
    "BRAZIL",       "BULGARIA",      "CAMEROON",       "CANADA",
    "CHILE",        "COLOMBIA",      "COSTA RICA",     "CROATIA",
    "CUBA",         "CYPRUS",        "CZECH REPUBLIC", "DENMARK",
    "ECUADOR",      "EGYPT",         "ENGLAND",        "ESTONIA",
    "ETHIOPIA",     "FINLAND",       "FRANCE",         "GERMANY",
    "GHANA",        "GREECE",        "HUNGARY",        "ICELAND",
    "INDIA",        "INDONESIA",     "IRAN",           "IRAQ",
    "IRELAND",      "ISRAEL",        "ITALY",          "JAPAN",
    "JORDAN",       "KENYA",         "LATVIA",         "LEBANON",
    "LITHUANIA",    "LUXEMBOURG",    "MALAYSIA",       "MALTA",
    "MEXICO",       "MOROCCO",       "NETHERLANDS",    "NEW ZEALAND",
    "NIGERIA",      "NORTH IRELAND", "NORWAY",         "PAKISTAN",
    "PANAMA",       "PEOPLES R CHINA", "PERU",         "PHILIPPINES",
    "POLAND",       "PORTUGAL",      "QATAR",          "ROMANIA",
    "RUSSIA",       "SAUDI ARABIA",  "SCOTLAND",       "SENEGAL",
    "SERBIA",       "SINGAPORE",     "SLOVAKIA",       "SLOVENIA",
    "SOUTH AFRICA", "SOUTH KOREA",   "SPAIN",          "SWEDEN",
    "SWITZERLAND",  "TAIWAN",        "THAILAND",       "TUNISIA",
    "TURKEY",       "U ARAB EMIRATES", "UK",           "UKRAINE",
    "URUGUAY",      "USA",           "VENEZUELA",      "VIETNAM",
    "WALES",        "KOREA",         "CHINA",          "UNITED KINGDOM",
};

std::vector<std::string> segments_of(std::string_view normalized) {
  if (normalized.empty()) return {};
  std::vector<std::string> out;
  for (auto& part : text::split(normalized, ',')) out.push_back(text::trim(part));
  return out;
}

}  // namespace

bool is_country_name(std::string_view segment) {
  auto n = text::normalize(segment);
  return std::find(std::begin(kCountries), std::end(kCountries), n) != std::end(kCountries);
}

bool looks_like_location(std::string_view segment) {
  return text::contains_digit(segment) || is_country_name(segment);
}

std::string normalize_address(std::string_view address) {
  std::string s(address);
  std::replace(s.begin(), s.end(), ';', ',');
  std::vector<std::string> kept;
  for (auto& part : text::split(s, ',')) {
    auto seg = text::normalize(part);
    if (!seg.empty()) kept.push_back(std::move(seg));
  }
  return text::join(kept, ", ");
}

SplitResult split_addresses(std::string_view address_field) {
  SplitResult result;
  std::string current;
  auto flush = [&] {
    auto t = text::trim(current);
    // A lone run of dots or spaces is not an address.
    if (t.find_first_not_of(". ") != std::string::npos) result.addresses.push_back(std::move(t));
    current.clear();
  };

  for (std::size_t i = 0; i < address_field.size(); ++i) {
    char c = address_field[i];
    bool at_end = i + 1 == address_field.size();
    bool before_space = !at_end && std::isspace(static_cast<unsigned char>(address_field[i + 1]));
    if (c == '.' && (at_end || before_space) && current.find(',') != std::string::npos) {
      flush();
      continue;
    }
    current.push_back(c);
  }
  flush();

  if (result.addresses.empty() && !text::trim(address_field).empty()) {
    result.diagnostic = "no address found in field '" + std::string(address_field) + "'";
  }
  return result;
}

AddressParse parse_address(std::string_view address) {
  auto segments = segments_of(normalize_address(address));
  if (segments.empty()) throw std::invalid_argument("empty address");

  AddressParse parse;
  parse.head = segments.front();
  const std::size_t n = segments.size();

  std::size_t tail_len = 0;
  if (n >= 4) {
    tail_len = 2;
  } else if (n == 3) {
    tail_len = looks_like_location(segments[1]) ? 2 : 1;
  } else if (n == 2) {
    tail_len = 1;
  }

  parse.unit_tokens.assign(segments.begin() + 1, segments.end() - static_cast<long>(tail_len));
  parse.tail.assign(segments.end() - static_cast<long>(tail_len), segments.end());
  return parse;
}

}  // namespace orgprof
