#include "priv/gw/auth.hpp"

#include <algorithm>

#include "priv/errors.hpp"
#include "priv/pii/crypto.hpp"

namespace priv::gw {

KeyStore::KeyStore(std::array<unsigned char, 32> pepper) : pepper_(pepper) {}

std::string KeyStore::hash_key(const std::string& api_key) const {
  const auto mac = pii::hmac_sha256(pepper_, api_key);
  return pii::to_hex(mac.data(), mac.size());
}

void KeyStore::add(const std::string& key_id, Role role, const std::string& name,
                   const std::string& api_key) {
  add_hashed(key_id, role, name, hash_key(api_key));
}

void KeyStore::add_hashed(const std::string& key_id, Role role, const std::string& name,
                          const std::string& key_hash_hex) {
  for (const Entry& e : entries_) {
    if (e.principal.key_id == key_id) throw FormatError("duplicate key_id: " + key_id);
  }
  const pii::Bytes raw = pii::from_hex(key_hash_hex);
  Entry entry;
  entry.principal = {key_id, role, name};
  if (raw.size() != entry.key_hash.size()) throw FormatError("key hash must be 32 bytes");
  std::copy(raw.begin(), raw.end(), entry.key_hash.begin());
  entries_.push_back(std::move(entry));
}

std::optional<Principal> KeyStore::authenticate(const std::string& api_key) const {
  const auto candidate = pii::hmac_sha256(pepper_, api_key);
  // Scan every entry unconditionally; the comparison itself is constant-time.
  const Entry* match = nullptr;
  for (const Entry& e : entries_) {
    if (pii::ct_equal(candidate.data(), e.key_hash.data(), candidate.size())) {
      match = &e;
    }
  }
  if (match == nullptr) return std::nullopt;
  return match->principal;
}

bool authorize(const Principal& p, const std::string& route) {
  static const std::map<std::string, Role> min_role = {
      {"/v1/chat", Role::guest},
      {"/v1/retrieve", Role::analyst},
      {"/v1/metrics/aggregate", Role::analyst},
      {"/v1/docs", Role::admin},
      {"/v1/vault/resolve", Role::admin},
  };
  const auto it = min_role.find(route);
  if (it == min_role.end()) return false;
  // Role order: guest < analyst < admin.
  const auto rank = [](Role r) {
    switch (r) {
      case Role::guest: return 0;
      case Role::analyst: return 1;
      case Role::admin: return 2;
    }
    return 0;
  };
  return rank(p.role) >= rank(it->second);
}

RateLimiter::RateLimiter(BucketConfig cfg, ClockFn clock)
    : cfg_(cfg), clock_(std::move(clock)) {
  if (cfg_.capacity < 1.0 || cfg_.refill_rate <= 0.0) {
    throw FormatError("bucket needs capacity >= 1 and positive refill rate");
  }
  if (!clock_) throw StateError("rate limiter needs a clock");
}

RateDecision RateLimiter::check(const std::string& key_id) {
  const double now = clock_();
  std::lock_guard lock(mu_);
  auto [it, fresh] = buckets_.try_emplace(key_id, Bucket{cfg_.capacity, now});
  Bucket& b = it->second;
  if (!fresh) {
    const double elapsed = std::max(0.0, now - b.last_refill);
    b.tokens = std::min(cfg_.capacity, b.tokens + elapsed * cfg_.refill_rate);
    b.last_refill = now;
  }
  if (b.tokens >= 1.0) {
    b.tokens -= 1.0;
    return {true, 0.0};
  }
  return {false, (1.0 - b.tokens) / cfg_.refill_rate};
}

double RateLimiter::tokens(const std::string& key_id) const {
  std::lock_guard lock(mu_);
  const auto it = buckets_.find(key_id);
  return it == buckets_.end() ? cfg_.capacity : it->second.tokens;
}

}  // namespace priv::gw
