#pragma once

#include <string>
#include <vector>

namespace priv::gw {

struct Preprocessed {
  std::string text;
  std::vector<std::string> tokens;
};

// Unicode NFC composition for the Latin-1 letter range (ASCII base plus one
// combining mark), whitespace collapse to single spaces with ends trimmed,
// optional ASCII lowercasing. Tokens are maximal runs of alphanumerics or
// non-ASCII bytes; punctuation and whitespace separate. Idempotent.
// Throws FormatError on invalid UTF-8.
Preprocessed preprocess(const std::string& text, bool lowercase = false);

}  // namespace priv::gw
