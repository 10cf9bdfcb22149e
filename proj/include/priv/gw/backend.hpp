#pragma once

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

namespace priv::gw {

struct BackendResult {
  bool ok = false;
  std::string text;   // completion on success
  std::string error;  // diagnostic on failure
};

// Adapter seam for the model provider. Real deployments attach an HTTP
// backend here; tests use the recording mock.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendResult complete(const std::string& prompt) = 0;
};

// Deterministic echo: "ECHO(n_tokens=<whitespace token count>): <prompt>".
// Records every prompt it receives so tests can assert what crossed the
// trust boundary.
class MockBackend : public Backend {
 public:
  BackendResult complete(const std::string& prompt) override;

  void set_fail_mode(bool fail) { fail_mode_ = fail; }
  std::size_t call_count() const;
  std::vector<std::string> prompts() const;

 private:
  bool fail_mode_ = false;
  mutable std::mutex mu_;
  std::vector<std::string> prompts_;
};

// POSTs {"prompt": ...} to url, expects {"text": ...}; retries once on
// transport failure, then reports the error.
class HttpBackend : public Backend {
 public:
  HttpBackend(std::string url, std::string api_key, double timeout_seconds = 10.0);

  BackendResult complete(const std::string& prompt) override;

 private:
  std::string host_;
  std::string path_;
  std::string api_key_;
  double timeout_seconds_;
};

}  // namespace priv::gw
