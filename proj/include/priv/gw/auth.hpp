#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "priv/gw/clock.hpp"
#include "priv/roles.hpp"

namespace priv::gw {

struct Principal {
  std::string key_id;
  Role role = Role::guest;
  std::string name;
};

// API keys are stored only as keyed hashes (HMAC-SHA256 under a pepper).
// Lookup compares the candidate hash against every entry in constant time,
// so neither match position nor prefix length leaks through timing.
class KeyStore {
 public:
  explicit KeyStore(std::array<unsigned char, 32> pepper);

  void add(const std::string& key_id, Role role, const std::string& name,
           const std::string& api_key);
  void add_hashed(const std::string& key_id, Role role, const std::string& name,
                  const std::string& key_hash_hex);

  std::string hash_key(const std::string& api_key) const;

  std::optional<Principal> authenticate(const std::string& api_key) const;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    Principal principal;
    std::array<unsigned char, 32> key_hash;
  };
  std::array<unsigned char, 32> pepper_;
  std::vector<Entry> entries_;
};

// Route policy: admin everywhere, analyst on chat/retrieve/metrics,
// guest on chat only. Unknown routes deny.
bool authorize(const Principal& p, const std::string& route);

struct BucketConfig {
  double capacity = 10.0;
  double refill_rate = 1.0;  // tokens per second
};

struct RateDecision {
  bool allowed = false;
  double retry_after = 0.0;  // seconds until one token exists, when rejected
};

// Per-key token bucket: refill by elapsed time (capped at capacity), then
// spend one token if available. Fresh keys start with a full bucket.
class RateLimiter {
 public:
  RateLimiter(BucketConfig cfg, ClockFn clock);

  RateDecision check(const std::string& key_id);

  double tokens(const std::string& key_id) const;  // observation for tests

 private:
  struct Bucket {
    double tokens;
    double last_refill;
  };
  BucketConfig cfg_;
  ClockFn clock_;
  std::map<std::string, Bucket> buckets_;
  mutable std::mutex mu_;
};

}  // namespace priv::gw
