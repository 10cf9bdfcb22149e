#include "priv/pii/vault.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace priv::pii {

namespace {

constexpr char kTokenOpen[] = "⟦";   // ⟦
constexpr char kTokenClose[] = "⟧";  // ⟧

std::int64_t wall_clock_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

VaultKey load_vault_key(const std::string& path) {
  std::string text = read_file(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.pop_back();
  }
  if (text.size() != 64) throw FormatError("vault key file must hold 64 hex chars");
  const Bytes raw = from_hex(text);
  VaultKey key;
  std::copy(raw.begin(), raw.end(), key.bytes.begin());
  return key;
}

VaultKey vault_key_from_env() {
  const char* path = std::getenv("PRIV_VAULT_KEY_FILE");
  if (path == nullptr || *path == '\0') {
    throw StateError("PRIV_VAULT_KEY_FILE is not set");
  }
  return load_vault_key(path);
}

Vault::Vault(const VaultKey& key, std::function<std::int64_t()> clock)
    : clock_(clock ? std::move(clock) : wall_clock_seconds) {
  const std::string enc_tag = "privlab-vault-enc-v1";
  const std::string mac_tag = "privlab-vault-mac-v1";
  enc_key_ = hmac_sha256(key.bytes.data(), key.bytes.size(),
                         reinterpret_cast<const unsigned char*>(enc_tag.data()), enc_tag.size());
  mac_key_ = hmac_sha256(key.bytes.data(), key.bytes.size(),
                         reinterpret_cast<const unsigned char*>(mac_tag.data()), mac_tag.size());
}

std::string Vault::pseudonym_for(Kind kind, const std::string& value) const {
  const std::string material = std::string("pn\x1f") + kind_name(kind) + "\x1f" + value;
  const auto mac = hmac_sha256(mac_key_, material);
  return std::string(kTokenOpen) + kind_name(kind) + "_" + to_hex(mac.data(), 4) + kTokenClose;
}

std::array<unsigned char, 12> Vault::nonce_for(const std::string& pseudonym) const {
  const auto mac = hmac_sha256(mac_key_, "nonce\x1f" + pseudonym);
  std::array<unsigned char, 12> nonce{};
  std::copy(mac.begin(), mac.begin() + 12, nonce.begin());
  return nonce;
}

std::string Vault::key_check() const {
  const auto mac = hmac_sha256(mac_key_, "key-check");
  return to_hex(mac.data(), mac.size());
}

std::string Vault::put(Kind kind, const std::string& value) {
  const std::string pseudonym = pseudonym_for(kind, value);
  std::unique_lock lock(mu_);
  const auto it = entries_.find(pseudonym);
  if (it != entries_.end()) {
    const std::string existing = aes256gcm_open(enc_key_, it->second.nonce, it->second.ct,
                                                pseudonym);
    if (existing != value) {
      throw InvariantError("pseudonym collision between distinct values: " + pseudonym);
    }
    return pseudonym;
  }
  Entry e;
  e.kind = kind;
  e.nonce = nonce_for(pseudonym);
  e.ct = aes256gcm_seal(enc_key_, e.nonce, value, pseudonym);
  e.created_at = clock_();
  entries_.emplace(pseudonym, std::move(e));
  return pseudonym;
}

std::string Vault::resolve(const std::string& pseudonym, const Principal& who) {
  if (who.role != Role::admin) {
    audit(pseudonym, who, false, "denied");
    throw PermissionError("role '" + std::string(role_name(who.role)) +
                          "' cannot resolve vault entries");
  }
  std::string value;
  {
    std::shared_lock lock(mu_);
    const auto it = entries_.find(pseudonym);
    if (it == entries_.end()) {
      lock.unlock();
      audit(pseudonym, who, false, "not_found");
      throw NotFoundError("unknown pseudonym: " + pseudonym);
    }
    try {
      value = aes256gcm_open(enc_key_, it->second.nonce, it->second.ct, pseudonym);
    } catch (const VaultAuthError&) {
      lock.unlock();
      audit(pseudonym, who, false, "auth_failed");
      throw;
    }
  }
  audit(pseudonym, who, true, "ok");
  return value;
}

bool Vault::contains(const std::string& pseudonym) const {
  std::shared_lock lock(mu_);
  return entries_.find(pseudonym) != entries_.end();
}

std::size_t Vault::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void Vault::save(const std::string& path) const {
  nlohmann::json entries = nlohmann::json::object();
  {
    std::shared_lock lock(mu_);
    for (const auto& [pseudonym, e] : entries_) {
      entries[pseudonym] = {{"kind", kind_name(e.kind)},
                            {"nonce", to_hex(e.nonce.data(), e.nonce.size())},
                            {"ct", to_hex(e.ct)},
                            {"created_at", e.created_at}};
    }
  }
  const nlohmann::json doc{{"version", 1}, {"key_check", key_check()}, {"entries", entries}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StateError("cannot write vault file: " + tmp);
    out << doc.dump(2) << "\n";
    if (!out.flush()) throw StateError("cannot write vault file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw StateError("cannot rename vault file into place: " + path);
  }
}

void Vault::load(const std::string& path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  std::map<std::string, Entry> loaded;
  try {
    doc = nlohmann::json::parse(text);
    if (doc.at("version").get<int>() != 1) throw FormatError("unsupported vault version");
    if (doc.at("key_check").get<std::string>() != key_check()) {
      throw VaultAuthError("vault file was written under a different key");
    }
    for (const auto& [pseudonym, e] : doc.at("entries").items()) {
      Entry entry;
      entry.kind = parse_kind(e.at("kind").get<std::string>());
      const Bytes nonce = from_hex(e.at("nonce").get<std::string>());
      if (nonce.size() != entry.nonce.size()) throw FormatError("bad nonce length");
      std::copy(nonce.begin(), nonce.end(), entry.nonce.begin());
      entry.ct = from_hex(e.at("ct").get<std::string>());
      if (entry.ct.size() < 16) throw FormatError("ciphertext shorter than its tag");
      entry.created_at = e.at("created_at").get<std::int64_t>();
      loaded.emplace(pseudonym, std::move(entry));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("bad vault file: ") + ex.what());
  }
  std::unique_lock lock(mu_);
  entries_ = std::move(loaded);
}

std::vector<VaultAuditEvent> Vault::audit_log() const {
  std::lock_guard lock(audit_mu_);
  return audit_;
}

void Vault::audit(const std::string& pseudonym, const Principal& who, bool granted,
                  const std::string& outcome) {
  std::lock_guard lock(audit_mu_);
  audit_.push_back({pseudonym, who.id, who.role, granted, outcome, clock_()});
}

}  // namespace priv::pii
