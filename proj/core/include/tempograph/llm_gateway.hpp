// Copyright 2026 The tempograph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEMPOGRAPH_LLM_GATEWAY_HPP_
#define TEMPOGRAPH_LLM_GATEWAY_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <utility>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/prompt.hpp"

namespace tempograph {

struct ModelConfig {
  std::string model_name = "gpt-4o-2024-08-06";
  std::string base_url = "https://api.openai.com/v1";
  double temperature = 1.0;
  int max_output_tokens = 16384;
  // Name of the environment variable holding the key. The key itself is read
  // at request time and never stored.
  std::string api_key_env = "TEMPOGRAPH_API_KEY";
};

enum class CacheMode {
  kReadWrite,   // serve hits, record misses
  kReplayOnly,  // serve hits, fail on misses without touching the network
  kNoCache,     // always call the endpoint, store nothing
};

CacheMode parse_cache_mode(std::string_view name);
std::string_view to_string(CacheMode mode);

struct GatewayOptions {
  std::filesystem::path cache_dir = "cache";
  CacheMode mode = CacheMode::kReadWrite;
  int max_attempts = 5;  // per network call, with exponential backoff
  std::chrono::milliseconds backoff_base{500};
  int max_in_flight = 4;
  int max_regen = 3;
};

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// POST transport. Throws GatewayError (status 0) on connection failures.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

// cpp-httplib backed transport, https via OpenSSL.
std::shared_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(600));

// Hex SHA-256 over model name, temperature, prompt bytes and generation index.
std::string cache_key(const ModelConfig& config, const PromptBundle& bundle, int generation_index);

// One file per key under <dir>/<first two hex>/<key>. Entries are written
// atomically and never overwritten; invalidation renames them aside.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  // metadata_json must be a JSON object; the response is stored alongside it.
  void put(const std::string& key, const std::string& metadata_json, const std::string& response);
  void invalidate(const std::string& key);
  std::size_t entry_count() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct GatewayStats {
  std::int64_t cache_hits = 0;
  std::int64_t cache_misses = 0;
  std::int64_t network_calls = 0;
  std::int64_t regenerations = 0;
};

using GenerationParser = std::function<GenerationRecord(const std::string& raw, int generation_index)>;

// Chat-completion client for OpenAI-compatible endpoints. Safe to share
// between threads; concurrent requests for one key make a single call.
class LlmGateway {
 public:
  LlmGateway(ModelConfig config, GatewayOptions options, std::shared_ptr<HttpTransport> transport);

  const ModelConfig& config() const { return config_; }
  const GatewayOptions& options() const { return options_; }

  std::string complete(const PromptBundle& bundle, int generation_index);

  // complete -> parse, regenerating (with the cache entry invalidated) while
  // the output is malformed or misses requested pairs.
  GenerationRecord generate_validated(const PromptBundle& bundle, int generation_index,
                                      const GenerationParser& parser);

  GatewayStats stats() const;

 private:
  std::string fetch(const PromptBundle& bundle, int generation_index, const std::string& key);
  std::string call_endpoint(const PromptBundle& bundle);

  ModelConfig config_;
  GatewayOptions options_;
  std::shared_ptr<HttpTransport> transport_;
  ResponseCache cache_;
  std::counting_semaphore<1024> in_flight_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<std::string>> pending_;
  GatewayStats stats_;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_LLM_GATEWAY_HPP_
