#include "priv/gw/preprocess.hpp"

#include <cstdint>
#include <map>

#include "priv/errors.hpp"
#include "priv/pii/detect.hpp"

namespace priv::gw {

namespace {

std::vector<std::uint32_t> decode_utf8(const std::string& text) {
  std::vector<std::uint32_t> cps;
  cps.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    std::uint32_t cp = c;
    if (c >= 0xf0) {
      extra = 3;
      cp = c & 0x07;
    } else if (c >= 0xe0) {
      extra = 2;
      cp = c & 0x0f;
    } else if (c >= 0xc0) {
      extra = 1;
      cp = c & 0x1f;
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3f);
    }
    cps.push_back(cp);
    i += extra + 1;
  }
  return cps;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xc0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xe0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  } else {
    out += static_cast<char>(0xf0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
    out += static_cast<char>(0x80 | (cp & 0x3f));
  }
}

// NFC pairs limited to ASCII base + one combining mark composing into
// Latin-1; anything outside this range passes through untouched.
std::uint32_t compose(std::uint32_t base, std::uint32_t mark) {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> table = {
      {{'A', 0x300}, 0xc0}, {{'A', 0x301}, 0xc1}, {{'A', 0x302}, 0xc2}, {{'A', 0x303}, 0xc3},
      {{'A', 0x308}, 0xc4}, {{'A', 0x30a}, 0xc5}, {{'C', 0x327}, 0xc7}, {{'E', 0x300}, 0xc8},
      {{'E', 0x301}, 0xc9}, {{'E', 0x302}, 0xca}, {{'E', 0x308}, 0xcb}, {{'I', 0x300}, 0xcc},
      {{'I', 0x301}, 0xcd}, {{'I', 0x302}, 0xce}, {{'I', 0x308}, 0xcf}, {{'N', 0x303}, 0xd1},
      {{'O', 0x300}, 0xd2}, {{'O', 0x301}, 0xd3}, {{'O', 0x302}, 0xd4}, {{'O', 0x303}, 0xd5},
      {{'O', 0x308}, 0xd6}, {{'U', 0x300}, 0xd9}, {{'U', 0x301}, 0xda}, {{'U', 0x302}, 0xdb},
      {{'U', 0x308}, 0xdc}, {{'Y', 0x301}, 0xdd}, {{'a', 0x300}, 0xe0}, {{'a', 0x301}, 0xe1},
      {{'a', 0x302}, 0xe2}, {{'a', 0x303}, 0xe3}, {{'a', 0x308}, 0xe4}, {{'a', 0x30a}, 0xe5},
      {{'c', 0x327}, 0xe7}, {{'e', 0x300}, 0xe8}, {{'e', 0x301}, 0xe9}, {{'e', 0x302}, 0xea},
      {{'e', 0x308}, 0xeb}, {{'i', 0x300}, 0xec}, {{'i', 0x301}, 0xed}, {{'i', 0x302}, 0xee},
      {{'i', 0x308}, 0xef}, {{'n', 0x303}, 0xf1}, {{'o', 0x300}, 0xf2}, {{'o', 0x301}, 0xf3},
      {{'o', 0x302}, 0xf4}, {{'o', 0x303}, 0xf5}, {{'o', 0x308}, 0xf6}, {{'u', 0x300}, 0xf9},
      {{'u', 0x301}, 0xfa}, {{'u', 0x302}, 0xfb}, {{'u', 0x308}, 0xfc}, {{'y', 0x301}, 0xfd},
      {{'y', 0x308}, 0xff}};
  const auto it = table.find({base, mark});
  return it == table.end() ? 0 : it->second;
}

bool is_ws(std::uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

bool is_token_cp(std::uint32_t cp) {
  if (cp >= 0x80) return true;  // non-ASCII letters stay inside tokens
  return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

}  // namespace

Preprocessed preprocess(const std::string& text, bool lowercase) {
  if (!pii::utf8_valid(text)) throw FormatError("invalid UTF-8 input");
  std::vector<std::uint32_t> cps = decode_utf8(text);

  std::vector<std::uint32_t> composed;
  composed.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (i + 1 < cps.size()) {
      const std::uint32_t merged = compose(cps[i], cps[i + 1]);
      if (merged != 0) {
        composed.push_back(merged);
        ++i;
        continue;
      }
    }
    std::uint32_t cp = cps[i];
    if (lowercase && cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
    composed.push_back(cp);
  }

  Preprocessed out;
  std::string token;
  bool pending_space = false;
  auto flush_token = [&] {
    if (!token.empty()) {
      out.tokens.push_back(token);
      token.clear();
    }
  };
  for (std::uint32_t cp : composed) {
    if (is_ws(cp)) {
      flush_token();
      if (!out.text.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.text += ' ';
      pending_space = false;
    }
    encode_utf8(cp, out.text);
    if (is_token_cp(cp)) {
      encode_utf8(cp, token);
    } else {
      flush_token();
    }
  }
  flush_token();
  return out;
}

}  // namespace priv::gw
