#include "priv/gw/gateway.hpp"

#include <utility>

#include "priv/dp/dp.hpp"
#include "priv/errors.hpp"
#include "priv/gw/preprocess.hpp"

namespace priv::gw {

namespace {

bool is_hex8(const std::string& s) {
  if (s.size() != 8) return false;
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

// Pseudonym tokens look like "⟦KIND_hhhhhhhh⟧"; anything else is plain text.
bool looks_like_token(const std::string& inner) {
  auto us = inner.rfind('_');
  if (us == std::string::npos) return false;
  if (!is_hex8(inner.substr(us + 1))) return false;
  try {
    pii::parse_kind(inner.substr(0, us));
  } catch (const FormatError&) {
    return false;
  }
  return true;
}

constexpr char kOpen[] = "\xE2\x9F\xA6";   // U+27E6
constexpr char kClose[] = "\xE2\x9F\xA7";  // U+27E7

}  // namespace

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::ok: return "ok";
    case Decision::unauthorized: return "unauthorized";
    case Decision::forbidden: return "forbidden";
    case Decision::rate_limited: return "rate_limited";
    case Decision::error: return "error";
  }
  return "error";
}

nlohmann::json audit_entry_to_json(const AuditEntry& e) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [kind, n] : e.pii_counts) counts[pii::kind_name(kind)] = n;
  return nlohmann::json{{"timestamp", e.timestamp},
                        {"key_id", e.key_id},
                        {"route", e.route},
                        {"decision", decision_name(e.decision)},
                        {"status", e.status},
                        {"pii_counts", counts},
                        {"latency_ms", e.latency_ms}};
}

std::string audit_to_jsonl(const std::vector<AuditEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += audit_entry_to_json(e).dump();
    out += '\n';
  }
  return out;
}

std::string rehydrate(const std::string& text, pii::Vault& vault, const pii::Principal& who) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 3, kOpen) != 0) {
      out += text[i++];
      continue;
    }
    const std::size_t close = text.find(kClose, i + 3);
    if (close == std::string::npos) {
      out += text[i++];
      continue;
    }
    const std::string token = text.substr(i, close + 3 - i);
    const std::string inner = text.substr(i + 3, close - (i + 3));
    if (!looks_like_token(inner)) {
      out += text[i++];
      continue;
    }
    try {
      out += vault.resolve(token, who);
    } catch (const NotFoundError&) {
      out += token;  // foreign token, pass through untouched
    } catch (const VaultAuthError&) {
      out += token;  // undecryptable entry stays opaque
    }
    i = close + 3;
  }
  return out;
}

Gateway::Gateway(GatewayConfig cfg, KeyStore keys, std::shared_ptr<Backend> backend,
                 std::shared_ptr<pii::Vault> vault, ClockFn clock)
    : cfg_(std::move(cfg)),
      keys_(std::move(keys)),
      backend_(std::move(backend)),
      vault_(std::move(vault)),
      clock_(std::move(clock)),
      limiter_(cfg_.bucket, clock_) {
  cfg_.policy.validate();
  if (!backend_) throw StateError("gateway requires a backend");
  if (!clock_) throw StateError("gateway requires a clock");
}

AuditEntry Gateway::base_entry(const std::string& route, double t0) const {
  AuditEntry e;
  e.timestamp = t0;
  e.key_id = "-";
  e.route = route;
  return e;
}

void Gateway::append_audit(AuditEntry e) {
  std::lock_guard lk(audit_mu_);
  if (audit_sink_) audit_sink_(e);
  audit_.push_back(std::move(e));
}

std::vector<AuditEntry> Gateway::audit_log() const {
  std::lock_guard lk(audit_mu_);
  return audit_;
}

void Gateway::set_audit_sink(std::function<void(const AuditEntry&)> sink) {
  std::lock_guard lk(audit_mu_);
  audit_sink_ = std::move(sink);
}

void Gateway::audit_transport_error(const std::string& route) {
  const double t0 = clock_();
  AuditEntry e = base_entry(route, t0);
  e.decision = Decision::error;
  e.status = 400;
  e.latency_ms = (clock_() - t0) * 1000.0;
  append_audit(std::move(e));
}

Gateway::Gate Gateway::admit(const std::string& api_key, const std::string& route) {
  Gate g;
  auto p = keys_.authenticate(api_key);
  if (!p) {
    g.decision = Decision::unauthorized;
    g.reject = {401, nlohmann::json{{"error", "unauthorized"}}};
    return g;
  }
  g.principal = *p;
  if (!authorize(*p, route)) {
    g.decision = Decision::forbidden;
    g.reject = {403, nlohmann::json{{"error", "forbidden"}}};
    return g;
  }
  const RateDecision rd = limiter_.check(p->key_id);
  if (!rd.allowed) {
    g.decision = Decision::rate_limited;
    g.reject = {429, nlohmann::json{{"error", "rate limited"}, {"retry_after", rd.retry_after}}};
    return g;
  }
  g.passed = true;
  g.decision = Decision::ok;
  return g;
}

namespace {

nlohmann::json summarize(const std::vector<pii::AppliedAction>& actions) {
  std::map<pii::Kind, std::size_t> redacted;
  for (const auto& a : actions) {
    if (a.action != pii::Action::allow) ++redacted[a.kind];
  }
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [kind, n] : redacted) summary[pii::kind_name(kind)] = n;
  return summary;
}

}  // namespace

GwResponse Gateway::chat(const std::string& api_key, const std::string& message) {
  const double t0 = clock_();
  AuditEntry e = base_entry("/v1/chat", t0);
  auto finish = [&](Decision d, GwResponse r) {
    e.decision = d;
    e.status = r.status;
    e.latency_ms = (clock_() - t0) * 1000.0;
    append_audit(std::move(e));
    return r;
  };

  const Gate g = admit(api_key, "/v1/chat");
  if (!g.principal.key_id.empty()) e.key_id = g.principal.key_id;
  if (!g.passed) return finish(g.decision, g.reject);

  try {
    const Preprocessed pp = preprocess(message, cfg_.lowercase);
    const std::vector<pii::PiiSpan> spans = pii::detect(pp.text);
    for (const auto& s : spans) ++e.pii_counts[s.kind];

    const pii::RedactionResult red = pii::redact(pp.text, spans, cfg_.policy, vault_.get());

    std::string prompt = red.text;
    if (cfg_.rag_enabled && store_.size() > 0) {
      const KnnResult hits = store_.knn(red.text, cfg_.rag_k);
      if (!hits.hits.empty()) {
        prompt += "\n\nContext:";
        for (const auto& h : hits.hits) {
          if (auto doc = store_.get(h.doc_id)) prompt += "\n[" + h.doc_id + "] " + doc->text;
        }
      }
    }

    // Fail closed: the backend never sees a span the policy protects.
    for (const auto& s : pii::detect(prompt)) {
      if (cfg_.policy.actions.at(s.kind) != pii::Action::allow) {
        throw InvariantError(std::string("unredacted ") + pii::kind_name(s.kind) +
                             " span in outbound prompt");
      }
    }

    const BackendResult br = backend_->complete(prompt);
    if (!br.ok) {
      return finish(Decision::error,
                    {502, nlohmann::json{{"error", "backend failure: " + br.error}}});
    }

    std::string out = br.text;
    if (cfg_.rehydrate_enabled && g.principal.role != Role::guest && vault_) {
      out = rehydrate(out, *vault_, pii::Principal{"gateway-rehydrate", Role::admin});
    }

    return finish(Decision::ok, {200, nlohmann::json{{"text", out},
                                                     {"redaction_summary", summarize(red.actions)}}});
  } catch (const FormatError& ex) {
    return finish(Decision::error, {400, nlohmann::json{{"error", ex.what()}}});
  } catch (const std::exception& ex) {
    return finish(Decision::error, {500, nlohmann::json{{"error", ex.what()}}});
  }
}

GwResponse Gateway::put_doc(const std::string& api_key, const std::string& doc_id,
                            const std::string& text) {
  const double t0 = clock_();
  AuditEntry e = base_entry("/v1/docs", t0);
  auto finish = [&](Decision d, GwResponse r) {
    e.decision = d;
    e.status = r.status;
    e.latency_ms = (clock_() - t0) * 1000.0;
    append_audit(std::move(e));
    return r;
  };

  const Gate g = admit(api_key, "/v1/docs");
  if (!g.principal.key_id.empty()) e.key_id = g.principal.key_id;
  if (!g.passed) return finish(g.decision, g.reject);

  try {
    const Preprocessed pp = preprocess(text);
    const std::vector<pii::PiiSpan> spans = pii::detect(pp.text);
    for (const auto& s : spans) ++e.pii_counts[s.kind];

    const pii::RedactionResult red = pii::redact(pp.text, spans, cfg_.policy, vault_.get());
    store_.put(doc_id, red.text);

    return finish(Decision::ok,
                  {200, nlohmann::json{{"doc_id", doc_id},
                                       {"redaction_summary", summarize(red.actions)},
                                       {"index_size", store_.size()}}});
  } catch (const FormatError& ex) {
    return finish(Decision::error, {400, nlohmann::json{{"error", ex.what()}}});
  } catch (const std::exception& ex) {
    return finish(Decision::error, {500, nlohmann::json{{"error", ex.what()}}});
  }
}

GwResponse Gateway::retrieve(const std::string& api_key, const std::string& query,
                             std::size_t k) {
  const double t0 = clock_();
  AuditEntry e = base_entry("/v1/retrieve", t0);
  auto finish = [&](Decision d, GwResponse r) {
    e.decision = d;
    e.status = r.status;
    e.latency_ms = (clock_() - t0) * 1000.0;
    append_audit(std::move(e));
    return r;
  };

  const Gate g = admit(api_key, "/v1/retrieve");
  if (!g.principal.key_id.empty()) e.key_id = g.principal.key_id;
  if (!g.passed) return finish(g.decision, g.reject);

  try {
    if (k == 0) throw FormatError("k must be at least 1");
    const KnnResult res = store_.knn(query, k);
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : res.hits) {
      hits.push_back({{"doc_id", h.doc_id}, {"cosine", h.cosine}});
    }
    return finish(Decision::ok,
                  {200, nlohmann::json{{"hits", hits}, {"truncated", res.truncated}}});
  } catch (const FormatError& ex) {
    return finish(Decision::error, {400, nlohmann::json{{"error", ex.what()}}});
  } catch (const std::exception& ex) {
    return finish(Decision::error, {500, nlohmann::json{{"error", ex.what()}}});
  }
}

GwResponse Gateway::aggregate(const std::string& api_key, double window_seconds) {
  const double t0 = clock_();
  AuditEntry e = base_entry("/v1/metrics/aggregate", t0);
  auto finish = [&](Decision d, GwResponse r) {
    e.decision = d;
    e.status = r.status;
    e.latency_ms = (clock_() - t0) * 1000.0;
    append_audit(std::move(e));
    return r;
  };

  const Gate g = admit(api_key, "/v1/metrics/aggregate");
  if (!g.principal.key_id.empty()) e.key_id = g.principal.key_id;
  if (!g.passed) return finish(g.decision, g.reject);

  try {
    std::map<pii::Kind, long long> totals;
    for (pii::Kind k : pii::kAllKinds) totals[k] = 0;
    {
      std::lock_guard lk(audit_mu_);
      for (const auto& entry : audit_) {
        if (window_seconds > 0 && entry.timestamp < t0 - window_seconds) continue;
        for (const auto& [kind, n] : entry.pii_counts) {
          totals[kind] += static_cast<long long>(n);
        }
      }
    }
    const dp::DpParams params{cfg_.epsilon_aggregate, 1.0, cfg_.dp_seed};
    nlohmann::json counts = nlohmann::json::object();
    for (pii::Kind k : pii::kAllKinds) {
      const auto res =
          dp::dp_count(static_cast<double>(totals[k]), params, dp_index_.fetch_add(1));
      counts[pii::kind_name(k)] = {{"value", res.value}, {"clamped", res.clamped}};
    }
    return finish(Decision::ok, {200, nlohmann::json{{"epsilon", cfg_.epsilon_aggregate},
                                                     {"window_seconds", window_seconds},
                                                     {"counts", counts}}});
  } catch (const std::exception& ex) {
    return finish(Decision::error, {500, nlohmann::json{{"error", ex.what()}}});
  }
}

GwResponse Gateway::resolve(const std::string& api_key, const std::string& pseudonym) {
  const double t0 = clock_();
  AuditEntry e = base_entry("/v1/vault/resolve", t0);
  auto finish = [&](Decision d, GwResponse r) {
    e.decision = d;
    e.status = r.status;
    e.latency_ms = (clock_() - t0) * 1000.0;
    append_audit(std::move(e));
    return r;
  };

  const Gate g = admit(api_key, "/v1/vault/resolve");
  if (!g.principal.key_id.empty()) e.key_id = g.principal.key_id;
  if (!g.passed) return finish(g.decision, g.reject);

  try {
    if (!vault_) throw StateError("vault not configured");
    const std::string value =
        vault_->resolve(pseudonym, pii::Principal{g.principal.key_id, g.principal.role});
    return finish(Decision::ok,
                  {200, nlohmann::json{{"pseudonym", pseudonym}, {"value", value}}});
  } catch (const NotFoundError&) {
    return finish(Decision::error, {404, nlohmann::json{{"error", "unknown pseudonym"}}});
  } catch (const PermissionError&) {
    return finish(Decision::forbidden, {403, nlohmann::json{{"error", "forbidden"}}});
  } catch (const std::exception& ex) {
    return finish(Decision::error, {500, nlohmann::json{{"error", ex.what()}}});
  }
}

GwResponse Gateway::healthz() {
  const double t0 = clock_();
  AuditEntry e = base_entry("/healthz", t0);
  e.decision = Decision::ok;
  e.status = 200;
  e.latency_ms = (clock_() - t0) * 1000.0;
  append_audit(std::move(e));
  return {200, nlohmann::json{{"status", "ok"}}};
}

}  // namespace priv::gw
