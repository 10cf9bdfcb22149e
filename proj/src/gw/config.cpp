#include "priv/gw/config.hpp"

#include <cstdlib>
#include <fstream>

#include "priv/errors.hpp"
#include "priv/pii/crypto.hpp"

namespace priv::gw {

namespace {

std::array<unsigned char, 32> pepper_from_hex(const std::string& hex) {
  const pii::Bytes raw = pii::from_hex(hex);
  if (raw.size() != 32) throw FormatError("pepper must be 64 hex chars (32 bytes)");
  std::array<unsigned char, 32> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

}  // namespace

GatewayConfig gateway_config_from_json(const nlohmann::json& j) {
  GatewayConfig cfg;
  if (j.contains("policy")) cfg.policy = pii::policy_from_json(j.at("policy"));
  if (j.contains("bucket")) {
    const auto& b = j.at("bucket");
    if (b.contains("capacity")) cfg.bucket.capacity = b.at("capacity").get<double>();
    if (b.contains("refill_rate")) cfg.bucket.refill_rate = b.at("refill_rate").get<double>();
  }
  if (j.contains("epsilon_aggregate")) {
    cfg.epsilon_aggregate = j.at("epsilon_aggregate").get<double>();
  }
  if (j.contains("dp_seed")) cfg.dp_seed = j.at("dp_seed").get<std::uint64_t>();
  if (j.contains("rag")) {
    const auto& r = j.at("rag");
    if (r.contains("enabled")) cfg.rag_enabled = r.at("enabled").get<bool>();
    if (r.contains("k")) cfg.rag_k = r.at("k").get<std::size_t>();
  }
  if (j.contains("lowercase")) cfg.lowercase = j.at("lowercase").get<bool>();
  if (j.contains("rehydrate")) cfg.rehydrate_enabled = j.at("rehydrate").get<bool>();
  cfg.policy.validate();
  return cfg;
}

KeyStore keystore_from_json(const nlohmann::json& j) {
  if (!j.contains("pepper_hex")) throw FormatError("config needs pepper_hex");
  KeyStore keys(pepper_from_hex(j.at("pepper_hex").get<std::string>()));
  if (!j.contains("keys") || !j.at("keys").is_array()) {
    throw FormatError("config needs a keys array");
  }
  for (const auto& entry : j.at("keys")) {
    const auto key_id = entry.at("key_id").get<std::string>();
    const Role role = parse_role(entry.at("role").get<std::string>());
    const std::string name = entry.value("name", std::string{});
    if (entry.contains("api_key")) {
      keys.add(key_id, role, name, entry.at("api_key").get<std::string>());
    } else if (entry.contains("key_hash")) {
      keys.add_hashed(key_id, role, name, entry.at("key_hash").get<std::string>());
    } else {
      throw FormatError("key entry needs api_key or key_hash: " + key_id);
    }
  }
  return keys;
}

std::shared_ptr<Backend> backend_from_json(const nlohmann::json& j) {
  const std::string kind = j.contains("backend") ? j.at("backend").value("kind", "mock") : "mock";
  if (kind == "mock") return std::make_shared<MockBackend>();
  if (kind == "http") {
    const auto& b = j.at("backend");
    return std::make_shared<HttpBackend>(b.at("url").get<std::string>(),
                                         b.value("api_key", std::string{}),
                                         b.value("timeout_seconds", 10.0));
  }
  throw FormatError("unknown backend kind: " + kind);
}

ServerConfig server_config_from_json(const nlohmann::json& j) {
  ServerConfig cfg;
  if (!j.contains("server")) return cfg;
  const auto& s = j.at("server");
  cfg.host = s.value("host", cfg.host);
  cfg.port = s.value("port", cfg.port);
  cfg.tls_cert_path = s.value("tls_cert", std::string{});
  cfg.tls_key_path = s.value("tls_key", std::string{});
  cfg.insecure_dev = s.value("insecure_dev", false);
  cfg.audit_path = s.value("audit_path", std::string{});
  return cfg;
}

LoadedGateway gateway_from_json(const nlohmann::json& j, ClockFn clock) {
  std::shared_ptr<pii::Vault> vault;
  if (std::getenv("PRIV_VAULT_KEY_FILE") != nullptr) {
    vault = std::make_shared<pii::Vault>(pii::vault_key_from_env());
  }
  LoadedGateway out;
  out.gateway = std::make_shared<Gateway>(gateway_config_from_json(j), keystore_from_json(j),
                                          backend_from_json(j), vault, std::move(clock));
  out.server = server_config_from_json(j);
  return out;
}

LoadedGateway gateway_from_config_file(const std::string& path, ClockFn clock) {
  std::ifstream in(path);
  if (!in) throw StateError("cannot open config file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw FormatError("config file is not valid JSON: " + path);
  return gateway_from_json(j, std::move(clock));
}

}  // namespace priv::gw
