#include "tomt/llm_client.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <openssl/evp.h>

#include <json.hpp>

#include "tomt/errors.hpp"

namespace tomt {

using nlohmann::json;

std::string_view to_string(ClientMode mode) {
  switch (mode) {
    case ClientMode::Live: return "live";
    case ClientMode::Record: return "record";
    case ClientMode::Replay: return "replay";
  }
  return "live";
}

ClientMode client_mode_from_string(std::string_view text) {
  if (text == "live") return ClientMode::Live;
  if (text == "record") return ClientMode::Record;
  if (text == "replay") return ClientMode::Replay;
  throw ConfigError("unknown client mode '" + std::string(text) + "'");
}

namespace {

json request_json(const std::string& model, double temperature, const std::string& prompt) {
  return json{{"model", model},
              {"temperature", temperature},
              {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// A fresh client per request keeps concurrent searches from sharing a socket.
class HttplibTransport : public HttpTransport {
 public:
  explicit HttplibTransport(const ClientConfig& config)
      : base_url_(config.base_url), endpoint_(config.endpoint), timeout_(config.timeout) {}

  HttpResponse post(const std::string& body, const std::string& bearer_token) override {
    httplib::Client client(base_url_);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);
    auto result = client.Post(endpoint_, headers, body, "application/json");
    if (!result) return HttpResponse{0, {}, httplib::to_string(result.error())};
    return HttpResponse{result->status, result->body, {}};
  }

 private:
  std::string base_url_;
  std::string endpoint_;
  std::chrono::milliseconds timeout_;
};

bool is_transient(int status) { return status == 0 || status == 408 || status >= 500; }

}  // namespace

std::string request_digest(const std::string& model, double temperature, const std::string& prompt) {
  return sha256_hex(request_json(model, temperature, prompt).dump());
}

std::string build_request_body(const ClientConfig& config, const std::string& prompt) {
  return request_json(config.model, config.temperature, prompt).dump();
}

std::string parse_response_body(const std::string& body) {
  try {
    const json parsed = json::parse(body);
    return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw TransportError(std::string("malformed chat-completions response: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

ReplayCache::ReplayCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const json entry = json::parse(line);
      entries_.insert_or_assign(entry.at("digest").get<std::string>(), entry.at("response").get<std::string>());
    } catch (const json::exception& e) {
      throw SchemaError("replay cache " + path_.string() + " line " + std::to_string(number) + ": " + e.what());
    }
  }
}

std::optional<std::string> ReplayCache::find(const std::string& digest) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(digest);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ReplayCache::append(const std::string& digest, const std::string& response) {
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign(digest, response);
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot append to replay cache " + path_.string());
  out << json{{"digest", digest}, {"response", response}}.dump() << '\n';
}

std::size_t ReplayCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::unique_ptr<HttpTransport> make_http_transport(const ClientConfig& config) {
  return std::make_unique<HttplibTransport>(config);
}

// ---------------------------------------------------------------------------

ChatClient::ChatClient(ClientConfig config) : ChatClient(config, nullptr) {}

ChatClient::ChatClient(ClientConfig config, std::unique_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)), in_flight_(std::max(1, config_.max_in_flight)) {
  if (config_.mode != ClientMode::Live) {
    if (config_.cache_path.empty()) throw ConfigError("record/replay mode needs a cache path");
    if (config_.mode == ClientMode::Replay && !std::filesystem::exists(config_.cache_path)) {
      throw ConfigError("replay cache " + config_.cache_path.string() + " does not exist");
    }
    cache_ = std::make_unique<ReplayCache>(config_.cache_path);
  }
  if (config_.mode != ClientMode::Replay) {
    if (config_.model.empty()) throw ConfigError("a model id is required");
    if (!transport_) transport_ = make_http_transport(config_);
  }
}

std::string ChatClient::complete(const std::string& prompt) {
  const std::string digest = request_digest(config_.model, config_.temperature, prompt);
  if (config_.mode == ClientMode::Replay) {
    if (auto cached = cache_->find(digest)) return *cached;
    throw ReplayMiss("no recorded response for request " + digest);
  }
  if (config_.mode == ClientMode::Record) {
    if (auto cached = cache_->find(digest)) return *cached;
  }
  std::string response = send_with_retries(prompt);
  if (cache_) cache_->append(digest, response);
  return response;
}

std::string ChatClient::send_with_retries(const std::string& prompt) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (!key || !*key) throw ConfigError("environment variable " + config_.api_key_env + " is not set");
  const std::string body = build_request_body(config_, prompt);

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  auto delay = config_.initial_backoff;
  HttpResponse last;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay = std::chrono::duration_cast<std::chrono::milliseconds>(delay * config_.backoff_factor);
    }
    ++network_requests_;
    last = transport_->post(body, key);
    if (last.status >= 200 && last.status < 300) return parse_response_body(last.body);
    if (last.status != 429 && !is_transient(last.status)) break;
  }
  if (last.status == 429) {
    throw RateLimited("rate limited after " + std::to_string(config_.max_retries + 1) + " attempts");
  }
  if (last.status == 0) throw TransportError("transport failure: " + last.error);
  throw TransportError("chat endpoint returned HTTP " + std::to_string(last.status));
}

}  // namespace tomt
