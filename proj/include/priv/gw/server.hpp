#pragma once

#include <memory>
#include <string>
#include <thread>

#include "priv/gw/gateway.hpp"

namespace httplib {
class Server;
}

namespace priv::gw {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8443;  // 0 picks an ephemeral port
  std::string tls_cert_path;
  std::string tls_key_path;
  bool insecure_dev = false;  // explicit opt-out of the TLS requirement
  std::string audit_path;     // JSONL appended per request when nonempty
};

// HTTP/JSON facade over a Gateway. Refuses to serve plaintext unless the
// config explicitly opts into insecure development mode.
class GatewayServer {
 public:
  GatewayServer(std::shared_ptr<Gateway> gateway, ServerConfig cfg);
  ~GatewayServer();

  GatewayServer(const GatewayServer&) = delete;
  GatewayServer& operator=(const GatewayServer&) = delete;

  // Binds and starts serving on a background thread; returns the bound port.
  int start();
  void stop();
  bool running() const { return thread_.joinable(); }

 private:
  std::shared_ptr<Gateway> gateway_;
  ServerConfig cfg_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace priv::gw
