#include "priv/gw/backend.hpp"

#include <cctype>

#include "httplib.h"
#include "json.hpp"
#include "priv/errors.hpp"

namespace priv::gw {
namespace {

std::size_t count_tokens(const std::string& s) {
  std::size_t n = 0;
  bool in_run = false;
  for (unsigned char c : s) {
    const bool ws = std::isspace(c) != 0;
    if (!ws && !in_run) ++n;
    in_run = !ws;
  }
  return n;
}

}  // namespace

BackendResult MockBackend::complete(const std::string& prompt) {
  {
    std::lock_guard lk(mu_);
    prompts_.push_back(prompt);
  }
  if (fail_mode_) return {false, "", "mock backend unavailable"};
  BackendResult r;
  r.ok = true;
  r.text = "ECHO(n_tokens=" + std::to_string(count_tokens(prompt)) + "): " + prompt;
  return r;
}

std::size_t MockBackend::call_count() const {
  std::lock_guard lk(mu_);
  return prompts_.size();
}

std::vector<std::string> MockBackend::prompts() const {
  std::lock_guard lk(mu_);
  return prompts_;
}

HttpBackend::HttpBackend(std::string url, std::string api_key, double timeout_seconds)
    : api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
  // Split scheme://host[:port] from the path; httplib wants them separate.
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FormatError("backend url missing scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    host_ = url;
    path_ = "/v1/complete";
  } else {
    host_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
  if (timeout_seconds_ <= 0) throw NumericError("backend timeout must be positive");
}

BackendResult HttpBackend::complete(const std::string& prompt) {
  nlohmann::json req{{"prompt", prompt}};
  const std::string body = req.dump();

  std::string last_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    httplib::Client cli(host_);
    cli.set_connection_timeout(std::chrono::duration<double>(timeout_seconds_));
    cli.set_read_timeout(std::chrono::duration<double>(timeout_seconds_));
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = cli.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;  // retry once
    }
    if (res->status != 200) {
      return {false, "", "backend status " + std::to_string(res->status)};
    }
    try {
      auto j = nlohmann::json::parse(res->body);
      return {true, j.at("text").get<std::string>(), ""};
    } catch (const nlohmann::json::exception& e) {
      return {false, "", std::string("bad backend response: ") + e.what()};
    }
  }
  return {false, "", last_error};
}

}  // namespace priv::gw
