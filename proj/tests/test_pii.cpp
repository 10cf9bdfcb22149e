#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "doctest.h"
#include "json.hpp"
#include "priv/errors.hpp"
#include "priv/pii/crypto.hpp"
#include "priv/pii/detect.hpp"
#include "priv/pii/redact.hpp"
#include "priv/pii/vault.hpp"
#include "priv/rng.hpp"
#include "priv/synth/synthdata.hpp"
#include "test_util.hpp"

using namespace priv;
using namespace priv::pii;

namespace {

VaultKey test_key(unsigned char fill = 0) {
  VaultKey key;
  for (std::size_t i = 0; i < key.bytes.size(); ++i) {
    key.bytes[i] = static_cast<unsigned char>(i + fill);
  }
  return key;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << content;
}

std::string luhn_complete(const std::string& payload) {
  for (char c = '0'; c <= '9'; ++c) {
    if (synth::luhn_checksum(payload + c)) return payload + c;
  }
  FAIL("no luhn check digit found");
  return payload;
}

bool has_kind(const std::vector<PiiSpan>& spans, Kind k) {
  for (const PiiSpan& s : spans) {
    if (s.kind == k) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hex encoding round-trips and rejects malformed input") {
  const Bytes data{0x00, 0x7f, 0x80, 0xff, 0x12};
  CHECK(to_hex(data) == "007f80ff12");
  CHECK(from_hex("007f80ff12") == data);
  CHECK(from_hex("").empty());
  CHECK_THROWS_AS(from_hex("abc"), FormatError);
  CHECK_THROWS_AS(from_hex("zz"), FormatError);
  CHECK_THROWS_AS(from_hex("AB"), FormatError);
}

TEST_CASE("hmac-sha256 matches the rfc 4231 reference value") {
  const std::string key(20, '\x0b');
  const std::string data = "Hi There";
  const auto mac = hmac_sha256(reinterpret_cast<const unsigned char*>(key.data()), key.size(),
                               reinterpret_cast<const unsigned char*>(data.data()), data.size());
  CHECK(to_hex(mac.data(), mac.size()) ==
        "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
}

TEST_CASE("aes-256-gcm matches the all-zero reference tag and authenticates") {
  std::array<unsigned char, 32> key{};
  std::array<unsigned char, 12> nonce{};
  const Bytes sealed = aes256gcm_seal(key, nonce, "", "");
  CHECK(to_hex(sealed) == "530f8afbc74536b9a963b4f1c4cb738b");

  const std::string plaintext = "attack at dawn";
  const std::string aad = "header";
  Bytes ct = aes256gcm_seal(key, nonce, plaintext, aad);
  CHECK(aes256gcm_open(key, nonce, ct, aad) == plaintext);

  Bytes flipped_ct = ct;
  flipped_ct[0] ^= 0x01;
  CHECK_THROWS_AS(aes256gcm_open(key, nonce, flipped_ct, aad), VaultAuthError);
  Bytes flipped_tag = ct;
  flipped_tag.back() ^= 0x01;
  CHECK_THROWS_AS(aes256gcm_open(key, nonce, flipped_tag, aad), VaultAuthError);
  CHECK_THROWS_AS(aes256gcm_open(key, nonce, ct, "other"), VaultAuthError);
  std::array<unsigned char, 12> other_nonce{};
  other_nonce[5] = 1;
  CHECK_THROWS_AS(aes256gcm_open(key, other_nonce, ct, aad), VaultAuthError);
  CHECK_THROWS_AS(aes256gcm_open(key, nonce, Bytes{0x01, 0x02}, aad), FormatError);
}

TEST_CASE("utf8 validation accepts well-formed text and rejects damage") {
  CHECK(utf8_valid(""));
  CHECK(utf8_valid("plain ascii"));
  CHECK(utf8_valid("caf\xc3\xa9"));
  CHECK(utf8_valid("\xe2\x9f\xa6token\xe2\x9f\xa7"));
  CHECK(utf8_valid("\xf0\x9f\x98\x80"));
  CHECK_FALSE(utf8_valid("\x80"));
  CHECK_FALSE(utf8_valid("\xc3"));
  CHECK_FALSE(utf8_valid("\xc3\x28"));
  CHECK_FALSE(utf8_valid("\xc0\xaf"));
  CHECK_FALSE(utf8_valid("\xe0\x80\xaf"));
  CHECK_FALSE(utf8_valid("\xed\xa0\x80"));
  CHECK_FALSE(utf8_valid("\xf5\x80\x80\x80"));
  CHECK_THROWS_AS(detect("bad \xff byte"), FormatError);
}

TEST_CASE("email detector finds the canonical example with exact offsets") {
  const std::string text = "Contact alice@example.com now";
  const auto spans = detect(text);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == Kind::email);
  CHECK(spans[0].start == 8);
  CHECK(spans[0].end == 25);
  CHECK(spans[0].value == "alice@example.com");
  CHECK(spans[0].confidence > 0.0);
  CHECK(spans[0].confidence <= 1.0);

  CHECK(detect("").empty());
  CHECK(detect("no pii here at all").empty());
  CHECK(detect("half an email: user@ or @domain.com alone").empty());
  CHECK(detect("needs a dot: user@localhost").empty());
  CHECK(detect("numeric tld: user@host.123").empty());
}

TEST_CASE("overlapping email candidates resolve to the longest match") {
  const auto spans = detect("aa@bb.cc@dd.ee");
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].value == "bb.cc@dd.ee");
  CHECK(spans[0].start == 3);
  CHECK(spans[0].end == 14);
}

TEST_CASE("ssn detector enforces shape and area rules") {
  const auto spans = detect("my SSN is 123-45-6789.");
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == Kind::ssn);
  CHECK(spans[0].value == "123-45-6789");
  CHECK(spans[0].start == 10);
  CHECK(spans[0].confidence == doctest::Approx(1.0));

  CHECK(detect("000-45-6789").empty());
  CHECK(detect("666-45-6789").empty());
  CHECK(detect("900-45-6789").empty());
  REQUIRE(detect("899-45-6789").size() == 1);
  CHECK(detect("1123-45-6789").empty());
  CHECK(detect("123-45-67890").empty());
  CHECK(detect("123-45-678").empty());
  CHECK(is_valid_ssn("123-45-6789"));
  CHECK_FALSE(is_valid_ssn("123-45-678"));
  CHECK_FALSE(is_valid_ssn("000-45-6789"));
  CHECK_FALSE(is_valid_ssn("966-45-6789"));
}

TEST_CASE("card detector requires 13 to 19 digits passing the checksum") {
  REQUIRE(synth::luhn_checksum("4111111111111111"));
  const auto spans = detect("card 4111111111111111 on file");
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == Kind::credit_card);
  CHECK(spans[0].start == 5);
  CHECK(spans[0].end == 21);

  // 79927398713 passes the checksum but has only 11 digits.
  CHECK(detect("card 79927398713 on file").empty());
  CHECK(detect("card 4111111111111112 on file").empty());  // checksum fails

  REQUIRE(synth::luhn_checksum("4222222222222"));
  CHECK(has_kind(detect("pay 4222222222222 now"), Kind::credit_card));

  const std::string nineteen = luhn_complete("400000000000000000");
  REQUIRE(nineteen.size() == 19);
  CHECK(has_kind(detect("pan " + nineteen + " end"), Kind::credit_card));
  CHECK_FALSE(has_kind(detect("run 4" + nineteen + " end"), Kind::credit_card));
}

TEST_CASE("card detector accepts one uniform separator style") {
  const auto dashed = detect("use 4111-1111-1111-1111 today");
  REQUIRE(dashed.size() == 1);
  CHECK(dashed[0].kind == Kind::credit_card);
  CHECK(dashed[0].value == "4111-1111-1111-1111");

  const auto spaced = detect("use 4111 1111 1111 1111 today");
  REQUIRE(spaced.size() == 1);
  CHECK(spaced[0].value == "4111 1111 1111 1111");

  CHECK_FALSE(has_kind(detect("use 4111-1111 1111-1111 today"), Kind::credit_card));

  CHECK(is_valid_credit_card("4111111111111111"));
  CHECK(is_valid_credit_card("4111-1111-1111-1111"));
  CHECK(is_valid_credit_card("4111 1111 1111 1111"));
  CHECK_FALSE(is_valid_credit_card("4111-1111 1111-1111"));
  CHECK_FALSE(is_valid_credit_card("4111--1111-1111-1111"));
  CHECK_FALSE(is_valid_credit_card("-4111111111111111"));
  CHECK_FALSE(is_valid_credit_card("79927398713"));
}

TEST_CASE("phone detector handles the common separator shapes") {
  for (const std::string text : {"(555) 867-5309", "555-867-5309", "555.867.5309",
                                 "555 867 5309", "5558675309", "(555)867-5309"}) {
    const auto spans = detect("call " + text + " now");
    REQUIRE_MESSAGE(spans.size() == 1, text);
    CHECK(spans[0].kind == Kind::phone);
    CHECK(spans[0].value == text);
    CHECK(is_valid_phone(text));
  }
  CHECK_FALSE(has_kind(detect("call 15558675309 now"), Kind::phone));
  CHECK_FALSE(has_kind(detect("call 555-867.5309 now"), Kind::phone));
  CHECK_FALSE(has_kind(detect("call 555-867-53091 now"), Kind::phone));
  CHECK_FALSE(has_kind(detect("run 1234-555-867-5309 now"), Kind::phone));
  CHECK_FALSE(is_valid_phone("555-8675309"));
  CHECK_FALSE(is_valid_phone("555 867-5309"));
}

TEST_CASE("name detector is a case-sensitive wordlist bigram match") {
  const synth::Record r = synth::make_record(7, 3);
  const auto spans = detect("ask " + r.name + " about it");
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == Kind::name);
  CHECK(spans[0].value == r.name);
  CHECK(is_name_bigram(r.name));

  std::string lower = r.name;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  CHECK(detect("ask " + lower + " about it").empty());
  CHECK_FALSE(is_name_bigram(lower));

  std::string doubled = r.name;
  doubled.insert(doubled.find(' '), " ");
  CHECK(detect("ask " + doubled + " about it").empty());

  CHECK(detect("Alice Zzyzx").empty());
  CHECK(detect("Zzyzx Fox").empty());
}

TEST_CASE("phone nested in an email local part loses to the longer span") {
  const std::string text = "mail a.5558675309@example.com ok";
  const auto spans = detect(text);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].kind == Kind::email);
  CHECK(spans[0].value == "a.5558675309@example.com");
}

TEST_CASE("detected spans are sorted, non-overlapping, and validator-sound") {
  std::vector<std::string> corpus;
  for (std::uint64_t id = 0; id < 120; ++id) {
    const synth::Record r = synth::make_record(31, id);
    for (std::size_t t = 0; t < synth::template_count(); ++t) {
      corpus.push_back(synth::render_text(r, t).text);
    }
  }
  corpus.push_back("mix: 4111 1111 1111 1111 and 123-45-6789 and (206) 555-0199 end");
  std::size_t total = 0;
  for (const std::string& text : corpus) {
    const auto spans = detect(text);
    total += spans.size();
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const PiiSpan& s = spans[i];
      REQUIRE(s.start < s.end);
      REQUIRE(s.end <= text.size());
      CHECK(text.substr(s.start, s.end - s.start) == s.value);
      if (i > 0) CHECK(spans[i - 1].end <= s.start);
      switch (s.kind) {
        case Kind::email: CHECK(is_valid_email(s.value)); break;
        case Kind::ssn: CHECK(is_valid_ssn(s.value)); break;
        case Kind::credit_card: CHECK(is_valid_credit_card(s.value)); break;
        case Kind::phone: CHECK(is_valid_phone(s.value)); break;
        case Kind::name: CHECK(is_name_bigram(s.value)); break;
      }
    }
  }
  CHECK(total > corpus.size());  // the corpus is PII-dense
}

TEST_CASE("detector recall and precision on rendered ground truth") {
  std::map<Kind, std::size_t> truth_count, hit_count, detected_count, correct_count;
  for (std::uint64_t id = 0; id < 300; ++id) {
    const synth::Record r = synth::make_record(77, id);
    for (std::size_t t = 0; t < synth::template_count(); ++t) {
      const synth::RenderedDoc doc = synth::render_text(r, t);
      const auto spans = detect(doc.text);
      std::set<std::tuple<std::size_t, std::size_t, Kind>> found;
      for (const PiiSpan& s : spans) {
        found.insert({s.start, s.end, s.kind});
        ++detected_count[s.kind];
      }
      std::set<std::tuple<std::size_t, std::size_t, Kind>> truth;
      for (const synth::GroundSpan& g : doc.spans) {
        truth.insert({g.begin, g.end, g.kind});
        ++truth_count[g.kind];
        if (found.count({g.begin, g.end, g.kind}) > 0) ++hit_count[g.kind];
      }
      for (const PiiSpan& s : spans) {
        if (truth.count({s.start, s.end, s.kind}) > 0) ++correct_count[s.kind];
      }
    }
  }
  for (Kind k : {Kind::email, Kind::ssn, Kind::credit_card, Kind::phone, Kind::name}) {
    REQUIRE(truth_count[k] > 0);
    const double recall = double(hit_count[k]) / double(truth_count[k]);
    const double precision =
        detected_count[k] == 0 ? 1.0 : double(correct_count[k]) / double(detected_count[k]);
    CAPTURE(kind_name(k));
    CHECK(recall >= 0.99);
    CHECK(precision >= 0.95);
  }
}

TEST_CASE("generalize_numeric buckets values with boundary rules") {
  const std::vector<double> ages{18, 30, 40, 50, 65, 90};
  CHECK(generalize_numeric(34, ages) == "30–40");
  CHECK(generalize_numeric(18, ages) == "18–30");
  CHECK(generalize_numeric(17.5, ages) == "<18");
  CHECK(generalize_numeric(90, ages) == "≥90");
  CHECK(generalize_numeric(95, ages) == "≥90");
  CHECK(generalize_numeric(89.99, ages) == "65–90");

  const std::vector<double> income{10000, 25000, 50000, 75000, 100000, 150000, 200000};
  CHECK(generalize_numeric(200000, income) == "≥200000");
  CHECK(generalize_numeric(123456.78, income) == "100000–150000");

  CHECK_THROWS_AS(generalize_numeric(1, {}), FormatError);
  CHECK_THROWS_AS(generalize_numeric(1, {1, 1}), FormatError);
  CHECK_THROWS_AS(generalize_numeric(1, {2, 1}), FormatError);
}

TEST_CASE("policy validates kind coverage and serializes through json") {
  RedactionPolicy p = RedactionPolicy::uniform(Action::mask);
  p.actions[Kind::ssn] = Action::pseudonymize;
  p.actions[Kind::name] = Action::allow;
  CHECK_NOTHROW(p.validate());

  const RedactionPolicy q = policy_from_json(policy_to_json(p));
  CHECK(q.actions == p.actions);
  CHECK(q.age_buckets == p.age_buckets);
  CHECK(q.income_buckets == p.income_buckets);

  RedactionPolicy missing = p;
  missing.actions.erase(Kind::phone);
  CHECK_THROWS_AS(missing.validate(), FormatError);
  RedactionPolicy bad_edges = p;
  bad_edges.age_buckets = {30, 18};
  CHECK_THROWS_AS(bad_edges.validate(), FormatError);
  CHECK_THROWS_AS(policy_from_json(nlohmann::json{{"actions", {{"EMAIL", "explode"}}}}),
                  FormatError);
  CHECK_THROWS_AS(parse_action("explode"), FormatError);
  CHECK(parse_action(action_name(Action::generalize)) == Action::generalize);
}

TEST_CASE("mask policy replaces spans with kind tags") {
  const std::string text = "Contact alice@example.com now";
  const RedactionResult res =
      redact_text(text, RedactionPolicy::uniform(Action::mask), nullptr);
  CHECK(res.text == "Contact [EMAIL] now");
  REQUIRE(res.actions.size() == 1);
  CHECK(res.actions[0].kind == Kind::email);
  CHECK(res.actions[0].action == Action::mask);
  CHECK(res.actions[0].start == 8);
  CHECK(res.actions[0].end == 25);
  CHECK(res.actions[0].original == "alice@example.com");
  CHECK(res.actions[0].replacement == "[EMAIL]");
  CHECK(mask_tag(Kind::name) == "[PERSON_NAME]");
}

TEST_CASE("redaction is idempotent and preserves unredacted bytes") {
  const RedactionPolicy mask_all = RedactionPolicy::uniform(Action::mask);
  for (std::uint64_t id = 0; id < 40; ++id) {
    const synth::Record r = synth::make_record(99, id);
    for (std::size_t t = 0; t < synth::template_count(); ++t) {
      const std::string text = synth::render_text(r, t).text;
      const auto spans = detect(text);
      const RedactionResult once = redact(text, spans, mask_all, nullptr);
      CHECK(detect(once.text).empty());
      const RedactionResult twice = redact_text(once.text, mask_all, nullptr);
      CHECK(twice.text == once.text);

      // Bytes between spans survive the rewrite unchanged.
      std::size_t src = 0;
      std::size_t dst = 0;
      for (const AppliedAction& a : once.actions) {
        const std::string gap = text.substr(src, a.start - src);
        CHECK(once.text.substr(dst, gap.size()) == gap);
        dst += gap.size() + a.replacement.size();
        src = a.end;
      }
      CHECK(once.text.substr(dst) == text.substr(src));
    }
  }
}

TEST_CASE("allow and generalize actions behave as contracted") {
  const std::string text = "my SSN is 123-45-6789.";
  RedactionPolicy allow_all = RedactionPolicy::uniform(Action::allow);
  const RedactionResult kept = redact_text(text, allow_all, nullptr);
  CHECK(kept.text == text);
  REQUIRE(kept.actions.size() == 1);
  CHECK(kept.actions[0].action == Action::allow);
  CHECK(kept.actions[0].replacement == "123-45-6789");

  RedactionPolicy gen_all = RedactionPolicy::uniform(Action::generalize);
  CHECK(redact_text(text, gen_all, nullptr).text == "my SSN is [SSN].");
}

TEST_CASE("redact rejects malformed spans and missing vault") {
  const std::string text = "Contact alice@example.com now";
  const RedactionPolicy pseudo = RedactionPolicy::uniform(Action::pseudonymize);
  CHECK_THROWS_AS(redact_text(text, pseudo, nullptr), StateError);
  CHECK_NOTHROW(redact_text("no pii", pseudo, nullptr));

  std::vector<PiiSpan> bad{{Kind::email, 8, 200, "x", 1.0}};
  CHECK_THROWS_AS(redact(text, bad, RedactionPolicy::uniform(Action::mask), nullptr),
                  ShapeError);
  std::vector<PiiSpan> mismatched{{Kind::email, 8, 25, "wrong", 1.0}};
  CHECK_THROWS_AS(redact(text, mismatched, RedactionPolicy::uniform(Action::mask), nullptr),
                  FormatError);
  std::vector<PiiSpan> unsorted{{Kind::email, 8, 25, "alice@example.com", 1.0},
                                {Kind::email, 8, 25, "alice@example.com", 1.0}};
  CHECK_THROWS_AS(redact(text, unsorted, RedactionPolicy::uniform(Action::mask), nullptr),
                  ShapeError);
}

TEST_CASE("pseudonymize maps repeated values to one stable token") {
  Vault vault(test_key());
  const std::string text = "SSN 123-45-6789 then again 123-45-6789 done";
  const RedactionResult res =
      redact_text(text, RedactionPolicy::uniform(Action::pseudonymize), &vault);
  REQUIRE(res.actions.size() == 2);
  CHECK(res.actions[0].replacement == res.actions[1].replacement);
  const std::string token = res.actions[0].replacement;
  CHECK(token.substr(0, 3) == "⟦");
  CHECK(token.find("SSN_") != std::string::npos);
  CHECK(token.substr(token.size() - 3) == "⟧");
  CHECK(vault.size() == 1);
  CHECK(detect(res.text).empty());

  // Resolution round-trips through an admin principal.
  CHECK(vault.resolve(token, {"root", Role::admin}) == "123-45-6789");
}

TEST_CASE("vault pseudonyms are deterministic per key and kind") {
  Vault a(test_key());
  Vault b(test_key());
  Vault other(test_key(100));
  const std::string token = a.put(Kind::email, "x@y.com");
  CHECK(b.put(Kind::email, "x@y.com") == token);
  CHECK(other.put(Kind::email, "x@y.com") != token);
  CHECK(a.put(Kind::name, "x@y.com") != token);
  CHECK(a.put(Kind::email, "x@z.com") != token);
  CHECK(a.size() == 3);
  CHECK(a.contains(token));
  CHECK_FALSE(a.contains("⟦EMAIL_00000000⟧"));

  // Token grammar: open bracket, kind, underscore, 8 lowercase hex, close.
  const std::string hex = token.substr(token.size() - 3 - 8, 8);
  for (char c : hex) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    CHECK(ok);
  }
}

TEST_CASE("vault access control distinguishes denial from absence") {
  Vault vault(test_key());
  const std::string token = vault.put(Kind::phone, "555-867-5309");
  CHECK_THROWS_AS(vault.resolve(token, {"eve", Role::guest}), PermissionError);
  CHECK_THROWS_AS(vault.resolve(token, {"ana", Role::analyst}), PermissionError);
  CHECK_THROWS_AS(vault.resolve("⟦PHONE_00000000⟧", {"root", Role::admin}),
                  NotFoundError);
  // Permission is checked before existence.
  CHECK_THROWS_AS(vault.resolve("⟦PHONE_00000000⟧", {"eve", Role::guest}),
                  PermissionError);

  const auto log = vault.audit_log();
  REQUIRE(log.size() == 4);
  CHECK(log[0].outcome == "denied");
  CHECK(log[0].principal_id == "eve");
  CHECK_FALSE(log[0].granted);
  CHECK(log[2].outcome == "not_found");

  CHECK(vault.resolve(token, {"root", Role::admin}) == "555-867-5309");
  CHECK(vault.audit_log().back().outcome == "ok");
  CHECK(vault.audit_log().back().granted);
}

TEST_CASE("vault round-trips binary values up to 4 KiB") {
  Vault vault(test_key());
  Rng rng(2024);
  std::vector<std::string> values;
  for (int i = 0; i < 50; ++i) {
    const std::size_t len = 1 + rng.below(4096);
    std::string v(len, '\0');
    for (char& c : v) c = static_cast<char>(rng.below(256));
    values.push_back(std::move(v));
  }
  values.push_back(std::string(4096, '\x00'));
  values.push_back(std::string("with\0null", 9));
  std::vector<std::string> tokens;
  for (const std::string& v : values) tokens.push_back(vault.put(Kind::name, v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(vault.resolve(tokens[i], {"root", Role::admin}) == values[i]);
  }
}

TEST_CASE("persisted vault file contains no plaintext and survives reload") {
  const std::string path = testutil::temp_path("vault.json");
  const std::string alphabet = "ghijklmnopqrstuvwxyzGHIJKLMNOPQRSTUVWXYZ";
  Rng rng(555);
  std::vector<std::string> values;
  for (int i = 0; i < 50; ++i) {
    std::string v;
    for (int k = 0; k < 24; ++k) v += alphabet[rng.below(alphabet.size())];
    values.push_back(v);
  }
  Vault vault(test_key(), [] { return std::int64_t{777}; });
  std::vector<std::string> tokens;
  for (const std::string& v : values) tokens.push_back(vault.put(Kind::name, v));
  vault.save(path);

  const std::string raw = file_bytes(path);
  for (const std::string& v : values) {
    CHECK(raw.find(v) == std::string::npos);
  }
  const nlohmann::json doc = nlohmann::json::parse(raw);
  CHECK(doc.at("version") == 1);
  CHECK(doc.at("entries").size() == values.size());
  CHECK(doc.at("entries").at(tokens[0]).at("created_at") == 777);

  Vault reloaded(test_key());
  reloaded.load(path);
  CHECK(reloaded.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(reloaded.resolve(tokens[i], {"root", Role::admin}) == values[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("vault rejects wrong keys, tampering, and malformed files") {
  const std::string path = testutil::temp_path("vault_tamper.json");
  Vault vault(test_key());
  const std::string token = vault.put(Kind::ssn, "123-45-6789");
  vault.save(path);

  Vault wrong_key(test_key(1));
  CHECK_THROWS_AS(wrong_key.load(path), VaultAuthError);

  // Flip one ciphertext nibble; authentication must fail, never emit garbage.
  nlohmann::json doc = nlohmann::json::parse(file_bytes(path));
  std::string ct = doc["entries"][token]["ct"].get<std::string>();
  ct[0] = ct[0] == '0' ? '1' : '0';
  doc["entries"][token]["ct"] = ct;
  write_file(path, doc.dump());
  Vault tampered(test_key());
  tampered.load(path);
  CHECK_THROWS_AS(tampered.resolve(token, {"root", Role::admin}), VaultAuthError);
  CHECK(tampered.audit_log().back().outcome == "auth_failed");

  write_file(path, "not json at all");
  CHECK_THROWS_AS(tampered.load(path), FormatError);
  write_file(path, R"({"version": 2, "key_check": "", "entries": {}})");
  CHECK_THROWS_AS(tampered.load(path), FormatError);
  CHECK_THROWS_AS(tampered.load(path + ".does_not_exist"), NotFoundError);
  std::remove(path.c_str());
}

TEST_CASE("concurrent puts of shared values converge to single entries") {
  Vault vault(test_key());
  std::vector<std::string> values;
  for (int i = 0; i < 10; ++i) values.push_back("value-" + std::to_string(i));
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&vault, &values, w] {
      for (int i = 0; i < 200; ++i) {
        (void)vault.put(Kind::email, values[(w + i) % values.size()]);
      }
    });
  }
  for (std::thread& t : workers) t.join();
  CHECK(vault.size() == values.size());
  for (const std::string& v : values) {
    const std::string token = vault.put(Kind::email, v);
    CHECK(vault.resolve(token, {"root", Role::admin}) == v);
  }
}

TEST_CASE("vault key loads from a 64-hex-char file or the environment") {
  const std::string path = testutil::temp_path("vault.key");
  const std::string hex =
      "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";
  write_file(path, hex + "\n");
  const VaultKey key = load_vault_key(path);
  CHECK(key.bytes[0] == 0x00);
  CHECK(key.bytes[31] == 0x1f);

  ::setenv("PRIV_VAULT_KEY_FILE", path.c_str(), 1);
  CHECK(vault_key_from_env().bytes == key.bytes);
  ::unsetenv("PRIV_VAULT_KEY_FILE");
  CHECK_THROWS_AS(vault_key_from_env(), StateError);

  write_file(path, hex.substr(0, 63));
  CHECK_THROWS_AS(load_vault_key(path), FormatError);
  write_file(path, std::string(64, 'z'));
  CHECK_THROWS_AS(load_vault_key(path), FormatError);
  CHECK_THROWS_AS(load_vault_key(path + ".missing"), NotFoundError);
  std::remove(path.c_str());
}
