#include "priv/gw/server.hpp"

#include <fstream>

#include "httplib.h"
#include "priv/errors.hpp"

namespace priv::gw {

namespace {

constexpr char kJsonMime[] = "application/json";

std::string bearer_key(const httplib::Request& req) {
  const std::string h = req.get_header_value("Authorization");
  constexpr char kPrefix[] = "Bearer ";
  if (h.rfind(kPrefix, 0) == 0) return h.substr(sizeof(kPrefix) - 1);
  return {};
}

void send(httplib::Response& res, const GwResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), kJsonMime);
}

void send_bad_request(Gateway& gw, const std::string& route, httplib::Response& res,
                      const std::string& why) {
  gw.audit_transport_error(route);
  res.status = 400;
  res.set_content(nlohmann::json{{"error", why}}.dump(), kJsonMime);
}

// Body must be a JSON object carrying the listed string fields.
bool parse_object(const std::string& body, std::initializer_list<const char*> fields,
                  nlohmann::json& out, std::string& why) {
  out = nlohmann::json::parse(body, nullptr, false);
  if (out.is_discarded() || !out.is_object()) {
    why = "body must be a JSON object";
    return false;
  }
  for (const char* f : fields) {
    if (!out.contains(f) || !out[f].is_string()) {
      why = std::string("missing string field: ") + f;
      return false;
    }
  }
  return true;
}

}  // namespace

GatewayServer::GatewayServer(std::shared_ptr<Gateway> gateway, ServerConfig cfg)
    : gateway_(std::move(gateway)), cfg_(std::move(cfg)) {
  if (!gateway_) throw StateError("server requires a gateway");
  const bool tls = !cfg_.tls_cert_path.empty() && !cfg_.tls_key_path.empty();
  if (!tls && !cfg_.insecure_dev) {
    throw StateError(
        "refusing to serve plaintext HTTP; configure TLS cert/key or pass --insecure-dev");
  }
  if (tls) {
    auto ssl = std::make_unique<httplib::SSLServer>(cfg_.tls_cert_path.c_str(),
                                                    cfg_.tls_key_path.c_str());
    if (!ssl->is_valid()) throw StateError("failed to load TLS cert/key");
    server_ = std::move(ssl);
  } else {
    server_ = std::make_unique<httplib::Server>();
  }

  if (!cfg_.audit_path.empty()) {
    auto path = cfg_.audit_path;
    gateway_->set_audit_sink([path](const AuditEntry& e) {
      std::ofstream out(path, std::ios::app);
      out << audit_entry_to_json(e).dump() << '\n';
    });
  }

  auto gw = gateway_;

  server_->Post("/v1/chat", [gw](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    std::string why;
    if (!parse_object(req.body, {"message"}, body, why)) {
      send_bad_request(*gw, "/v1/chat", res, why);
      return;
    }
    send(res, gw->chat(bearer_key(req), body["message"].get<std::string>()));
  });

  server_->Post("/v1/docs", [gw](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    std::string why;
    if (!parse_object(req.body, {"doc_id", "text"}, body, why)) {
      send_bad_request(*gw, "/v1/docs", res, why);
      return;
    }
    send(res, gw->put_doc(bearer_key(req), body["doc_id"].get<std::string>(),
                          body["text"].get<std::string>()));
  });

  server_->Get("/v1/retrieve", [gw](const httplib::Request& req, httplib::Response& res) {
    const std::string q = req.get_param_value("q");
    std::size_t k = 5;
    if (req.has_param("k")) {
      try {
        const long long parsed = std::stoll(req.get_param_value("k"));
        if (parsed < 1) throw std::out_of_range("k");
        k = static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
        send_bad_request(*gw, "/v1/retrieve", res, "k must be a positive integer");
        return;
      }
    }
    send(res, gw->retrieve(bearer_key(req), q, k));
  });

  server_->Get("/v1/metrics/aggregate",
               [gw](const httplib::Request& req, httplib::Response& res) {
                 double window = 0.0;
                 if (req.has_param("window")) {
                   try {
                     window = std::stod(req.get_param_value("window"));
                   } catch (const std::exception&) {
                     send_bad_request(*gw, "/v1/metrics/aggregate", res,
                                      "window must be a number of seconds");
                     return;
                   }
                 }
                 send(res, gw->aggregate(bearer_key(req), window));
               });

  server_->Post("/v1/vault/resolve",
                [gw](const httplib::Request& req, httplib::Response& res) {
                  nlohmann::json body;
                  std::string why;
                  if (!parse_object(req.body, {"pseudonym"}, body, why)) {
                    send_bad_request(*gw, "/v1/vault/resolve", res, why);
                    return;
                  }
                  send(res, gw->resolve(bearer_key(req), body["pseudonym"].get<std::string>()));
                });

  server_->Get("/healthz", [gw](const httplib::Request&, httplib::Response& res) {
    send(res, gw->healthz());
  });
}

GatewayServer::~GatewayServer() { stop(); }

int GatewayServer::start() {
  if (thread_.joinable()) throw StateError("server already started");
  int port = cfg_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(cfg_.host);
    if (port <= 0) throw StateError("failed to bind to an ephemeral port");
  } else if (!server_->bind_to_port(cfg_.host, port)) {
    throw StateError("failed to bind to port " + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void GatewayServer::stop() {
  if (!thread_.joinable()) return;
  server_->stop();
  thread_.join();
}

}  // namespace priv::gw
