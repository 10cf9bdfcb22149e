#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "priv/gw/auth.hpp"
#include "priv/gw/backend.hpp"
#include "priv/gw/clock.hpp"
#include "priv/gw/embed.hpp"
#include "priv/pii/redact.hpp"
#include "priv/pii/vault.hpp"

namespace priv::gw {

enum class Decision { ok, unauthorized, forbidden, rate_limited, error };

const char* decision_name(Decision d);

struct AuditEntry {
  double timestamp = 0.0;  // clock seconds at request start
  std::string key_id;      // "-" when the caller never authenticated
  std::string route;
  Decision decision = Decision::error;
  int status = 0;
  std::map<pii::Kind, std::size_t> pii_counts;  // detected spans, never values
  double latency_ms = 0.0;
};

nlohmann::json audit_entry_to_json(const AuditEntry& e);
std::string audit_to_jsonl(const std::vector<AuditEntry>& entries);

struct GatewayConfig {
  pii::RedactionPolicy policy = pii::RedactionPolicy::uniform(pii::Action::mask);
  BucketConfig bucket;
  double epsilon_aggregate = 1.0;
  std::uint64_t dp_seed = 0;
  bool rag_enabled = false;
  std::size_t rag_k = 2;
  bool lowercase = false;
  bool rehydrate_enabled = true;
};

struct GwResponse {
  int status = 0;
  nlohmann::json body;
};

// Privacy proxy core, transport-agnostic. Every public handler runs the
// fixed middleware chain (authenticate, authorize, rate-limit, then the
// privacy pipeline) and appends exactly one audit entry, rejections
// included. Redaction failures abort the request; raw text never reaches
// the backend (re-checked just before the call).
class Gateway {
 public:
  Gateway(GatewayConfig cfg, KeyStore keys, std::shared_ptr<Backend> backend,
          std::shared_ptr<pii::Vault> vault, ClockFn clock = steady_now);

  GwResponse chat(const std::string& api_key, const std::string& message);
  GwResponse put_doc(const std::string& api_key, const std::string& doc_id,
                     const std::string& text);
  GwResponse retrieve(const std::string& api_key, const std::string& query, std::size_t k);
  GwResponse aggregate(const std::string& api_key, double window_seconds);
  GwResponse resolve(const std::string& api_key, const std::string& pseudonym);
  GwResponse healthz();

  // Records a request the transport layer rejected before it could reach a
  // handler (unparseable body, bad query string), keeping the one-entry-per-
  // request property at the HTTP boundary.
  void audit_transport_error(const std::string& route);

  const GatewayConfig& config() const { return cfg_; }
  VectorStore& store() { return store_; }
  pii::Vault* vault() { return vault_.get(); }
  std::vector<AuditEntry> audit_log() const;

  // Called under the audit lock for every appended entry; set once, before
  // serving traffic.
  void set_audit_sink(std::function<void(const AuditEntry&)> sink);

 private:
  struct Gate {
    bool passed = false;
    Principal principal;
    GwResponse reject;        // meaningful only when !passed
    Decision decision = Decision::error;
  };

  // authenticate + authorize + rate-limit; on failure fills the rejection.
  Gate admit(const std::string& api_key, const std::string& route);
  void append_audit(AuditEntry e);
  AuditEntry base_entry(const std::string& route, double t0) const;

  GatewayConfig cfg_;
  KeyStore keys_;
  std::shared_ptr<Backend> backend_;
  std::shared_ptr<pii::Vault> vault_;
  ClockFn clock_;
  RateLimiter limiter_;
  VectorStore store_;
  std::atomic<std::uint64_t> dp_index_{0};
  mutable std::mutex audit_mu_;
  std::vector<AuditEntry> audit_;
  std::function<void(const AuditEntry&)> audit_sink_;
};

// Replaces every resolvable pseudonym token in text with its vault value.
// Unknown or undecryptable tokens stay verbatim.
std::string rehydrate(const std::string& text, pii::Vault& vault, const pii::Principal& who);

}  // namespace priv::gw
