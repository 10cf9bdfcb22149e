#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "priv/gw/gateway.hpp"
#include "priv/gw/server.hpp"

namespace priv::gw {

GatewayConfig gateway_config_from_json(const nlohmann::json& j);
KeyStore keystore_from_json(const nlohmann::json& j);
std::shared_ptr<Backend> backend_from_json(const nlohmann::json& j);
ServerConfig server_config_from_json(const nlohmann::json& j);

struct LoadedGateway {
  std::shared_ptr<Gateway> gateway;
  ServerConfig server;
};

// Assembles a serving-ready gateway from one JSON document. The vault is
// attached when $PRIV_VAULT_KEY_FILE is set; without it, pseudonymize
// policies fail closed at request time.
LoadedGateway gateway_from_json(const nlohmann::json& j, ClockFn clock = steady_now);
LoadedGateway gateway_from_config_file(const std::string& path, ClockFn clock = steady_now);

}  // namespace priv::gw
