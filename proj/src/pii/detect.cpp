#include "priv/pii/detect.hpp"

#include <algorithm>
#include <unordered_set>

#include "priv/errors.hpp"
#include "priv/synth/synthdata.hpp"
#include "priv/synth/wordlists.hpp"

namespace priv::pii {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }

bool is_local_char(char c) {
  return is_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}
bool is_label_char(char c) { return is_alnum(c) || c == '-'; }

bool luhn_ok(const std::string& digits) { return synth::luhn_checksum(digits); }

bool ssn_area_ok(std::string_view area) {
  return area != "000" && area != "666" && area[0] != '9';
}

const std::unordered_set<std::string_view>& first_name_set() {
  static const std::unordered_set<std::string_view> set = [] {
    std::unordered_set<std::string_view> s;
    for (const char* w : synth::first_names()) s.insert(w);
    return s;
  }();
  return set;
}

const std::unordered_set<std::string_view>& last_name_set() {
  static const std::unordered_set<std::string_view> set = [] {
    std::unordered_set<std::string_view> s;
    for (const char* w : synth::last_names()) s.insert(w);
    return s;
  }();
  return set;
}

// Parses "local@label(.label)+" starting with the '@' at position at.
// Returns the span [start, end) or false when the shape does not hold.
bool email_at(std::string_view t, std::size_t at, std::size_t& start, std::size_t& end) {
  std::size_t l = at;
  while (l > 0 && is_local_char(t[l - 1])) --l;
  if (l == at) return false;
  std::size_t j = at + 1;
  std::size_t labels = 0;
  std::size_t last_label_start = j;
  while (true) {
    const std::size_t label_start = j;
    while (j < t.size() && is_label_char(t[j])) ++j;
    if (j == label_start) return false;
    ++labels;
    last_label_start = label_start;
    if (j < t.size() && t[j] == '.' && j + 1 < t.size() && is_label_char(t[j + 1])) {
      ++j;
      continue;
    }
    break;
  }
  if (labels < 2) return false;
  const std::string_view tld = t.substr(last_label_start, j - last_label_start);
  if (tld.size() < 2 || !std::all_of(tld.begin(), tld.end(), is_alpha)) return false;
  start = l;
  end = j;
  return true;
}

void scan_emails(std::string_view t, std::vector<PiiSpan>& out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '@') continue;
    std::size_t start = 0, end = 0;
    if (email_at(t, i, start, end)) {
      out.push_back({Kind::email, start, end, std::string(t.substr(start, end - start)), 0.95});
    }
  }
}

// True when position i sits at the tail of a dashed digit run ("...9-" before
// it), which means the digits here belong to a larger number, not a fresh one.
bool dash_run_before(std::string_view t, std::size_t i) {
  return i >= 2 && t[i - 1] == '-' && is_digit(t[i - 2]);
}
bool dash_run_after(std::string_view t, std::size_t end) {
  return end + 1 < t.size() && t[end] == '-' && is_digit(t[end + 1]);
}

void scan_ssns(std::string_view t, std::vector<PiiSpan>& out) {
  if (t.size() < 11) return;
  for (std::size_t i = 0; i + 11 <= t.size(); ++i) {
    if (i > 0 && (is_digit(t[i - 1]) || dash_run_before(t, i))) continue;
    const std::string_view w = t.substr(i, 11);
    bool shape = is_digit(w[0]) && is_digit(w[1]) && is_digit(w[2]) && w[3] == '-' &&
                 is_digit(w[4]) && is_digit(w[5]) && w[6] == '-' && is_digit(w[7]) &&
                 is_digit(w[8]) && is_digit(w[9]) && is_digit(w[10]);
    if (!shape) continue;
    if (i + 11 < t.size() && (is_digit(t[i + 11]) || dash_run_after(t, i + 11))) continue;
    if (!ssn_area_ok(w.substr(0, 3))) continue;
    out.push_back({Kind::ssn, i, i + 11, std::string(w), 1.0});
  }
}

// Expands a digit run from i using one separator mode (0 = solid digits).
// Returns the end offset and fills the collapsed digit string.
std::size_t card_run(std::string_view t, std::size_t i, char sep, std::string& digits) {
  std::size_t j = i;
  digits.clear();
  while (j < t.size()) {
    if (is_digit(t[j])) {
      digits += t[j];
      ++j;
    } else if (sep != 0 && t[j] == sep && j > i && is_digit(t[j - 1]) && j + 1 < t.size() &&
               is_digit(t[j + 1])) {
      ++j;
    } else {
      break;
    }
  }
  return j;
}

void scan_cards(std::string_view t, std::vector<PiiSpan>& out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!is_digit(t[i])) continue;
    if (i > 0 && (is_digit(t[i - 1]) || dash_run_before(t, i))) continue;
    std::size_t best_end = 0;
    for (char sep : {'\0', ' ', '-'}) {
      std::string digits;
      const std::size_t j = card_run(t, i, sep, digits);
      if (digits.size() < 13 || digits.size() > 19) continue;
      if (!luhn_ok(digits)) continue;
      best_end = std::max(best_end, j);
    }
    if (best_end > 0) {
      out.push_back({Kind::credit_card, i, best_end,
                     std::string(t.substr(i, best_end - i)), 1.0});
    }
  }
}

bool digits_at(std::string_view t, std::size_t i, std::size_t n) {
  if (i + n > t.size()) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_digit(t[i + k])) return false;
  }
  return true;
}

bool is_phone_sep(char c) { return c == '-' || c == '.' || c == ' '; }

// Matches one phone shape anchored at i; returns the end offset or 0.
std::size_t phone_at(std::string_view t, std::size_t i) {
  // "(ddd)" with optional space, then "ddd<sep>dddd".
  if (t[i] == '(') {
    std::size_t j = i + 1;
    if (!digits_at(t, j, 3)) return 0;
    j += 3;
    if (j >= t.size() || t[j] != ')') return 0;
    ++j;
    if (j < t.size() && t[j] == ' ') ++j;
    if (!digits_at(t, j, 3)) return 0;
    j += 3;
    if (j >= t.size() || !is_phone_sep(t[j])) return 0;
    ++j;
    if (!digits_at(t, j, 4)) return 0;
    return j + 4;
  }
  if (!is_digit(t[i])) return 0;
  // "ddd<sep>ddd<sep>dddd" with one separator char used in both places.
  if (digits_at(t, i, 3) && i + 3 < t.size() && is_phone_sep(t[i + 3])) {
    const char sep = t[i + 3];
    if (digits_at(t, i + 4, 3) && i + 7 < t.size() && t[i + 7] == sep &&
        digits_at(t, i + 8, 4)) {
      return i + 12;
    }
  }
  // Bare ten digits.
  if (digits_at(t, i, 10)) return i + 10;
  return 0;
}

void scan_phones(std::string_view t, std::vector<PiiSpan>& out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '(' && !is_digit(t[i])) continue;
    if (is_digit(t[i]) && i > 0 && (is_digit(t[i - 1]) || dash_run_before(t, i))) continue;
    const std::size_t end = phone_at(t, i);
    if (end == 0) continue;
    if (end < t.size() && is_digit(t[end])) continue;
    // A '-' or '.' continuing into digits means the match is a slice of a
    // longer number; a following space binds too loosely to tell.
    if (end + 1 < t.size() && (t[end] == '-' || t[end] == '.') && is_digit(t[end + 1])) continue;
    out.push_back({Kind::phone, i, end, std::string(t.substr(i, end - i)), 0.95});
  }
}

void scan_names(std::string_view t, std::vector<PiiSpan>& out) {
  struct Word {
    std::size_t start, end;
  };
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!is_alpha(t[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < t.size() && is_alpha(t[j])) ++j;
    words.push_back({i, j});
    i = j;
  }
  for (std::size_t w = 0; w + 1 < words.size(); ++w) {
    const Word& a = words[w];
    const Word& b = words[w + 1];
    if (b.start != a.end + 1 || t[a.end] != ' ') continue;
    const std::string_view first = t.substr(a.start, a.end - a.start);
    const std::string_view last = t.substr(b.start, b.end - b.start);
    if (first_name_set().count(first) == 0 || last_name_set().count(last) == 0) continue;
    out.push_back({Kind::name, a.start, b.end, std::string(t.substr(a.start, b.end - a.start)),
                   0.9});
  }
}

int kind_priority(Kind k) {
  switch (k) {
    case Kind::credit_card: return 0;
    case Kind::ssn: return 1;
    case Kind::phone: return 2;
    case Kind::email: return 3;
    case Kind::name: return 4;
  }
  return 5;
}

std::vector<PiiSpan> resolve_overlaps(std::vector<PiiSpan> candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const PiiSpan& a, const PiiSpan& b) {
    const std::size_t la = a.end - a.start;
    const std::size_t lb = b.end - b.start;
    if (la != lb) return la > lb;
    if (a.start != b.start) return a.start < b.start;
    return kind_priority(a.kind) < kind_priority(b.kind);
  });
  std::vector<PiiSpan> chosen;
  for (PiiSpan& c : candidates) {
    const bool clash = std::any_of(chosen.begin(), chosen.end(), [&](const PiiSpan& s) {
      return c.start < s.end && s.start < c.end;
    });
    if (!clash) chosen.push_back(std::move(c));
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const PiiSpan& a, const PiiSpan& b) { return a.start < b.start; });
  return chosen;
}

}  // namespace

bool utf8_valid(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      extra = 1;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const unsigned char cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    if (extra == 1 && cp < 0x80) return false;
    if (extra == 2 && cp < 0x800) return false;
    if (extra == 3 && cp < 0x10000) return false;
    if (cp >= 0xd800 && cp <= 0xdfff) return false;
    if (cp > 0x10ffff) return false;
    i += extra + 1;
  }
  return true;
}

bool is_valid_email(std::string_view s) {
  const std::size_t at = s.find('@');
  if (at == std::string_view::npos) return false;
  std::size_t start = 0, end = 0;
  if (!email_at(s, at, start, end)) return false;
  // Anything outside [start, end), such as a second '@', fails the check.
  return start == 0 && end == s.size();
}

bool is_valid_ssn(std::string_view s) {
  if (s.size() != 11) return false;
  for (std::size_t i : {0u, 1u, 2u, 4u, 5u, 7u, 8u, 9u, 10u}) {
    if (!is_digit(s[i])) return false;
  }
  if (s[3] != '-' || s[6] != '-') return false;
  return ssn_area_ok(s.substr(0, 3));
}

bool is_valid_credit_card(std::string_view s) {
  if (s.empty() || !is_digit(s.front()) || !is_digit(s.back())) return false;
  char sep = 0;
  std::string digits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_digit(s[i])) {
      digits += s[i];
      continue;
    }
    if (s[i] != ' ' && s[i] != '-') return false;
    if (sep == 0) sep = s[i];
    if (s[i] != sep) return false;
    if (!is_digit(s[i - 1]) || i + 1 >= s.size() || !is_digit(s[i + 1])) return false;
  }
  return digits.size() >= 13 && digits.size() <= 19 && luhn_ok(digits);
}

bool is_valid_phone(std::string_view s) {
  if (s.empty()) return false;
  return phone_at(s, 0) == s.size();
}

bool is_name_bigram(std::string_view s) {
  const std::size_t sp = s.find(' ');
  if (sp == std::string_view::npos || sp == 0 || sp + 1 >= s.size()) return false;
  const std::string_view first = s.substr(0, sp);
  const std::string_view last = s.substr(sp + 1);
  if (!std::all_of(first.begin(), first.end(), is_alpha)) return false;
  if (!std::all_of(last.begin(), last.end(), is_alpha)) return false;
  return first_name_set().count(first) > 0 && last_name_set().count(last) > 0;
}

std::vector<PiiSpan> detect(const std::string& text) {
  if (!utf8_valid(text)) throw FormatError("invalid UTF-8 input");
  std::vector<PiiSpan> candidates;
  scan_cards(text, candidates);
  scan_ssns(text, candidates);
  scan_phones(text, candidates);
  scan_emails(text, candidates);
  scan_names(text, candidates);
  return resolve_overlaps(std::move(candidates));
}

}  // namespace priv::pii
