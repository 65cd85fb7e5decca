#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>

namespace tomt {

/// Anything that turns a prompt into assistant text.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

enum class ClientMode { Live, Record, Replay };

std::string_view to_string(ClientMode mode);
ClientMode client_mode_from_string(std::string_view text);  // throws ConfigError

inline constexpr std::string_view kDefaultApiKeyEnv = "OPENAI_API_KEY";

struct ClientConfig {
  std::string base_url = "https://api.openai.com";
  std::string endpoint = "/v1/chat/completions";
  std::string model;  // no default: must be configured for Live/Record
  std::string api_key_env = std::string(kDefaultApiKeyEnv);
  double temperature = 1.0;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
  int max_in_flight = 4;
  ClientMode mode = ClientMode::Live;
  std::filesystem::path cache_path;  // required for Record and Replay
};

/// Content digest of a request: model id, temperature and every message.
std::string request_digest(const std::string& model, double temperature, const std::string& prompt);

/// Chat-completions request body for a single user message.
std::string build_request_body(const ClientConfig& config, const std::string& prompt);

/// First choice's message content; throws TransportError on a malformed body.
std::string parse_response_body(const std::string& body);

/// Append-only JSONL file of {"digest","response"} entries.
class ReplayCache {
 public:
  ReplayCache() = default;
  explicit ReplayCache(std::filesystem::path path);  // loads existing entries

  std::optional<std::string> find(const std::string& digest) const;
  void append(const std::string& digest, const std::string& response);
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::string, std::string> entries_;
};

/// Raw HTTP exchange, replaceable in tests.
struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;  // transport-level failure when status == 0
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const std::string& body, const std::string& bearer_token) = 0;
};

std::unique_ptr<HttpTransport> make_http_transport(const ClientConfig& config);

class ChatClient : public CompletionBackend {
 public:
  explicit ChatClient(ClientConfig config);
  ChatClient(ClientConfig config, std::unique_ptr<HttpTransport> transport);

  std::string complete(const std::string& prompt) override;

  const ClientConfig& config() const noexcept { return config_; }
  int network_requests() const noexcept { return network_requests_.load(); }

 private:
  std::string send_with_retries(const std::string& prompt);

  ClientConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  std::unique_ptr<ReplayCache> cache_;
  std::counting_semaphore<> in_flight_;
  std::atomic<int> network_requests_{0};
};

}  // namespace tomt
