#include <doctest.h>

#include <random>
#include <stdexcept>

#include "golden_addresses.hpp"
#include "orgprof/address.hpp"
#include "orgprof/text.hpp"

using namespace orgprof;

namespace {

std::string rebuild(const AddressParse& p) {
  std::vector<std::string> parts{p.head};
  parts.insert(parts.end(), p.unit_tokens.begin(), p.unit_tokens.end());
  parts.insert(parts.end(), p.tail.begin(), p.tail.end());
  return text::join(parts, ", ");
}

std::string random_address(std::mt19937_64& rng) {
  static const std::string alphabet = "abcdeXYZ &-0123456789  \t";
  std::uniform_int_distribution<int> segs(1, 8);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::bernoulli_distribution semicolon(0.1);
  std::string out = "H";
  for (int s = segs(rng); s > 0; --s) {
    out += semicolon(rng) ? ';' : ',';
    for (int i = len(rng); i > 0; --i) out += alphabet[pick(rng)];
  }
  return out;
}

}  // namespace

TEST_CASE("split_addresses") {
  SUBCASE("dot-delimited field") {
    auto r = split_addresses("A, X, Y, SPAIN. B, Z, W, SPAIN.");
    CHECK(r.addresses == std::vector<std::string>{"A, X, Y, SPAIN", "B, Z, W, SPAIN"});
    CHECK_FALSE(r.diagnostic);
  }
  SUBCASE("no trailing dot") {
    CHECK(split_addresses("A, X, SPAIN").addresses == std::vector<std::string>{"A, X, SPAIN"});
  }
  SUBCASE("empty field") {
    auto r = split_addresses("");
    CHECK(r.addresses.empty());
    CHECK_FALSE(r.diagnostic);
  }
  SUBCASE("dot inside the head before any comma is not a delimiter") {
    CHECK(split_addresses("UNIV ST. ANDREWS, SCH BIOL, FIFE, SCOTLAND.").addresses ==
          std::vector<std::string>{"UNIV ST. ANDREWS, SCH BIOL, FIFE, SCOTLAND"});
  }
  SUBCASE("three addresses") {
    auto r = split_addresses(
        "UNIV GRANADA, DEPT OPT, E-18071 GRANADA, SPAIN. UNIV GRANADA, FAC SCI, E-18071 GRANADA, "
        "SPAIN. UNIV GRANADA, INST CARLOS I, E-18071 GRANADA, SPAIN.");
    CHECK(r.addresses.size() == 3);
    CHECK(r.addresses[2] == "UNIV GRANADA, INST CARLOS I, E-18071 GRANADA, SPAIN");
  }
  SUBCASE("pathological input gives a diagnostic") {
    auto r = split_addresses(" ... . ");
    CHECK(r.addresses.empty());
    CHECK(r.diagnostic);
  }
}

TEST_CASE("parse_address examples") {
  auto p = parse_address(
      "UNIV GRANADA, FAC SCI, DEPT COMP SCI & ARTIFICIAL INTELLIGENCE, E-18071 GRANADA, SPAIN");
  CHECK(p.head == "UNIV GRANADA");
  CHECK(p.unit_tokens == std::vector<std::string>{"FAC SCI", "DEPT COMP SCI & ARTIFICIAL INTELLIGENCE"});
  CHECK(p.tail == std::vector<std::string>{"E-18071 GRANADA", "SPAIN"});
  CHECK_FALSE(is_university_only(p));

  auto u = parse_address("UNIV GRANADA, E-18071 GRANADA, SPAIN");
  CHECK(u.unit_tokens.empty());
  CHECK(is_university_only(u));

  auto five = parse_address("UNIV GRANADA, U1, U2, U3, U4, U5, E-18071 GRANADA, SPAIN");
  CHECK(five.unit_tokens == std::vector<std::string>{"U1", "U2", "U3", "U4", "U5"});

  CHECK_THROWS_AS(parse_address(" , ;"), std::invalid_argument);
}

TEST_CASE("parse_address golden cases") {
  for (const auto& c : golden::address_cases()) {
    CAPTURE(c.input);
    CHECK(parse_address(c.input) == c.expected);
  }
}

TEST_CASE("location heuristic") {
  CHECK(looks_like_location("E-18071 GRANADA"));
  CHECK(looks_like_location("PEOPLES R CHINA"));
  CHECK(looks_like_location("spain"));
  CHECK_FALSE(looks_like_location("DEPT OPT"));
  CHECK_FALSE(looks_like_location("GRANADA"));
}

TEST_CASE("parse_address properties on fuzzed input") {
  std::mt19937_64 rng(20061010);
  for (int i = 0; i < 2000; ++i) {
    auto address = random_address(rng);
    CAPTURE(address);
    auto p = parse_address(address);
    auto normalized = normalize_address(address);
    CHECK(rebuild(p) == normalized);
    CHECK(p.tail.size() <= 2);
    CHECK(p.unit_tokens.size() + p.tail.size() + 1 == text::split(normalized, ',').size());
    for (const auto& t : p.unit_tokens) CHECK_FALSE(t.empty());
    CHECK(parse_address(address) == p);
  }
}

TEST_CASE("university-only records leave the analysis") {
  // k of n records carry only the university level; n - k remain.
  const std::size_t n = 6913;
  const std::size_t k = 576;
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto address = i < k ? std::string("UNIV GRANADA, E-18071 GRANADA, SPAIN")
                         : "UNIV GRANADA, DEPT " + std::to_string(i % 40) + "X, E-18071 GRANADA, SPAIN";
    if (!is_university_only(parse_address(address))) ++remaining;
  }
  CHECK(remaining == 6337);
}
