#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "priv/pii/crypto.hpp"
#include "priv/pii/kinds.hpp"
#include "priv/roles.hpp"

namespace priv::pii {

struct VaultKey {
  std::array<unsigned char, 32> bytes{};
};

// Key file holds the key as 64 lowercase hex chars (trailing whitespace ok).
VaultKey load_vault_key(const std::string& path);

// Reads the key from the file named by $PRIV_VAULT_KEY_FILE.
VaultKey vault_key_from_env();

struct Principal {
  std::string id;
  Role role = Role::guest;
};

struct VaultAuditEvent {
  std::string pseudonym;
  std::string principal_id;
  Role role = Role::guest;
  bool granted = false;
  std::string outcome;  // "ok", "denied", "not_found", "auth_failed"
  std::int64_t at = 0;
};

// Reversible pseudonym store. Values are AES-256-GCM encrypted with a key
// derived from the master key; the pseudonym doubles as the associated data,
// binding each ciphertext to its token. Pseudonyms are deterministic per
// (key, kind, value), so repeated puts of one value converge to one entry.
class Vault {
 public:
  explicit Vault(const VaultKey& key, std::function<std::int64_t()> clock = nullptr);

  // Returns the pseudonym token "⟦KIND_hhhhhhhh⟧". A second put of the same
  // (kind, value) returns the existing token. Two different values mapping to
  // one token is a 32-bit hash collision and a hard error.
  std::string put(Kind kind, const std::string& value);

  // Only Role::admin may resolve. Permission is checked before existence, so
  // an unauthorized caller cannot probe which tokens exist.
  std::string resolve(const std::string& pseudonym, const Principal& who);

  bool contains(const std::string& pseudonym) const;
  std::size_t size() const;

  // Atomic persist: writes path + ".tmp" then renames over path.
  void save(const std::string& path) const;

  // Replaces in-memory contents. Rejects unknown versions, malformed entries,
  // and files written under a different key.
  void load(const std::string& path);

  std::vector<VaultAuditEvent> audit_log() const;

 private:
  struct Entry {
    Kind kind;
    std::array<unsigned char, 12> nonce{};
    Bytes ct;  // ciphertext with tag appended
    std::int64_t created_at = 0;
  };

  std::string pseudonym_for(Kind kind, const std::string& value) const;
  std::array<unsigned char, 12> nonce_for(const std::string& pseudonym) const;
  std::string key_check() const;
  void audit(const std::string& pseudonym, const Principal& who, bool granted,
             const std::string& outcome);

  std::array<unsigned char, 32> enc_key_{};
  std::array<unsigned char, 32> mac_key_{};
  std::function<std::int64_t()> clock_;
  std::map<std::string, Entry> entries_;
  mutable std::shared_mutex mu_;
  mutable std::mutex audit_mu_;
  std::vector<VaultAuditEvent> audit_;
};

}  // namespace priv::pii
