#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "priv/pii/kinds.hpp"

namespace priv::pii {

struct PiiSpan {
  Kind kind;
  std::size_t start = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive
  std::string value;      // text[start..end)
  double confidence = 1.0;

  bool operator==(const PiiSpan&) const = default;
};

bool utf8_valid(std::string_view text);

// Each validator re-checks one kind's full pattern on an isolated string,
// independent of scanning context. detect() output always satisfies them.
bool is_valid_email(std::string_view s);
bool is_valid_ssn(std::string_view s);
bool is_valid_credit_card(std::string_view s);
bool is_valid_phone(std::string_view s);
bool is_name_bigram(std::string_view s);

// Scans text with all five detectors and resolves overlaps by longest match,
// then earliest start, then kind priority CREDIT_CARD > SSN > PHONE > EMAIL >
// PERSON_NAME. Result is sorted by start and non-overlapping.
// Throws FormatError on invalid UTF-8.
std::vector<PiiSpan> detect(const std::string& text);

}  // namespace priv::pii
