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

#include "tempograph/llm_gateway.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"

namespace tempograph {

namespace {

using json = nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

void append_field(std::string& out, std::string_view field) {
  out += fmt::format("{}:", field.size());
  out.append(field);
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool retriable(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

CacheMode parse_cache_mode(std::string_view name) {
  if (name == "read-write") return CacheMode::kReadWrite;
  if (name == "replay-only") return CacheMode::kReplayOnly;
  if (name == "no-cache") return CacheMode::kNoCache;
  throw ValidationError(
      fmt::format("unknown cache mode '{}' (expected read-write|replay-only|no-cache)", name));
}

std::string_view to_string(CacheMode mode) {
  switch (mode) {
    case CacheMode::kReadWrite: return "read-write";
    case CacheMode::kReplayOnly: return "replay-only";
    case CacheMode::kNoCache: return "no-cache";
  }
  return "?";
}

std::string cache_key(const ModelConfig& config, const PromptBundle& bundle, int generation_index) {
  std::string material;
  append_field(material, config.model_name);
  append_field(material, fmt::format("{}", config.temperature));
  append_field(material, bundle.system_text);
  append_field(material, bundle.user_text);
  append_field(material, std::to_string(generation_index));
  return sha256_hex(material);
}

std::filesystem::path ResponseCache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / key;
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    const json entry = json::parse(read_all(path));
    return entry.at("response").get<std::string>();
  } catch (const json::exception& e) {
    throw GatewayError(fmt::format("corrupt cache entry {}: {}", path.string(), e.what()));
  }
}

void ResponseCache::put(const std::string& key, const std::string& metadata_json,
                        const std::string& response) {
  const auto path = path_for(key);
  if (std::filesystem::exists(path)) return;
  std::filesystem::create_directories(path.parent_path());
  json entry = json::parse(metadata_json);
  entry["key"] = key;
  entry["response"] = response;
  const auto tmp = path.parent_path() /
                   fmt::format("{}.tmp.{}", key, std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw GatewayError(fmt::format("cannot write cache entry {}", tmp.string()));
    out << entry.dump(2) << "\n";
  }
  if (std::filesystem::exists(path)) {
    std::filesystem::remove(tmp);
    return;
  }
  std::filesystem::rename(tmp, path);
}

void ResponseCache::invalidate(const std::string& key) {
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return;
  for (int n = 0;; ++n) {
    auto aside = path;
    aside += fmt::format(".rejected.{}", n);
    if (!std::filesystem::exists(aside)) {
      std::filesystem::rename(path, aside);
      return;
    }
  }
}

std::size_t ResponseCache::entry_count() const {
  if (!std::filesystem::exists(dir_)) return 0;
  std::size_t count = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir_)) {
    if (e.is_regular_file() && e.path().filename().string().find('.') == std::string::npos) {
      ++count;
    }
  }
  return count;
}

LlmGateway::LlmGateway(ModelConfig config, GatewayOptions options,
                       std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)),
      options_(std::move(options)),
      transport_(std::move(transport)),
      cache_(options_.cache_dir),
      in_flight_(std::clamp(options_.max_in_flight, 1, 1024)) {
  if (config_.temperature < 0.0) throw ValidationError("temperature must be >= 0");
}

GatewayStats LlmGateway::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

std::string LlmGateway::call_endpoint(const PromptBundle& bundle) {
  if (!transport_) throw GatewayError("no HTTP transport configured");
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw GatewayError(fmt::format("environment variable {} is not set", config_.api_key_env));
  }
  json body = {
      {"model", config_.model_name},
      {"temperature", config_.temperature},
      {"max_tokens", config_.max_output_tokens},
      {"messages", json::array({{{"role", "system"}, {"content", bundle.system_text}},
                                {{"role", "user"}, {"content", bundle.user_text}}})},
  };
  std::string base = config_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  HttpRequest request{base + "/chat/completions",
                      {{"Authorization", std::string("Bearer ") + key},
                       {"Content-Type", "application/json"}},
                      body.dump()};

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  std::string last_error;
  int last_status = 0;
  for (int attempt = 0; attempt < std::max(1, options_.max_attempts); ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff_base * (1LL << (attempt - 1)));
    {
      std::lock_guard lock(mu_);
      ++stats_.network_calls;
    }
    HttpResponse response;
    try {
      response = transport_->post(request);
    } catch (const GatewayError& e) {
      last_error = e.what();
      last_status = 0;
      continue;
    }
    if (response.status >= 200 && response.status < 300) {
      try {
        const json reply = json::parse(response.body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const json::exception& e) {
        throw GatewayError(fmt::format("unexpected completion body: {}", e.what()),
                           response.status);
      }
    }
    last_status = response.status;
    last_error = fmt::format("HTTP {}: {}", response.status, response.body.substr(0, 500));
    if (!retriable(response.status)) break;
  }
  throw GatewayError(fmt::format("chat completion failed after retries: {}", last_error),
                     last_status);
}

std::string LlmGateway::fetch(const PromptBundle& bundle, int generation_index,
                              const std::string& key) {
  if (options_.mode != CacheMode::kNoCache) {
    if (auto hit = cache_.get(key)) {
      std::lock_guard lock(mu_);
      ++stats_.cache_hits;
      return *hit;
    }
    std::lock_guard lock(mu_);
    ++stats_.cache_misses;
  }
  if (options_.mode == CacheMode::kReplayOnly) {
    throw ReplayMissError(fmt::format("replay-only: no cached response for {} split {} "
                                      "generation {} (key {})",
                                      bundle.doc_id, bundle.split_index, generation_index, key));
  }
  std::string response = call_endpoint(bundle);
  if (options_.mode == CacheMode::kReadWrite) {
    const json meta = {
        {"model", config_.model_name},
        {"temperature", config_.temperature},
        {"generation_index", generation_index},
        {"doc_id", bundle.doc_id},
        {"split_index", bundle.split_index},
        {"template_version", bundle.template_version},
        {"prompt_sha256", sha256_hex(bundle.system_text + "\n" + bundle.user_text)},
    };
    cache_.put(key, meta.dump(), response);
  }
  return response;
}

std::string LlmGateway::complete(const PromptBundle& bundle, int generation_index) {
  const std::string key = cache_key(config_, bundle, generation_index);
  std::promise<std::string> promise;
  std::shared_future<std::string> future;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = pending_.find(key);
    if (it != pending_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      pending_.emplace(key, future);
      owner = true;
    }
  }
  if (!owner) return future.get();
  try {
    std::string response = fetch(bundle, generation_index, key);
    promise.set_value(response);
    std::lock_guard lock(mu_);
    pending_.erase(key);
    return response;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mu_);
    pending_.erase(key);
    throw;
  }
}

GenerationRecord LlmGateway::generate_validated(const PromptBundle& bundle, int generation_index,
                                                const GenerationParser& parser) {
  const std::string key = cache_key(config_, bundle, generation_index);
  std::string last_raw;
  std::string last_problem;
  const int attempts = std::max(0, options_.max_regen) + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::lock_guard lock(mu_);
      ++stats_.regenerations;
    }
    last_raw = complete(bundle, generation_index);
    try {
      GenerationRecord record = parser(last_raw, generation_index);
      if (record.complete()) return record;
      last_problem = fmt::format("{} requested pairs missing", record.missing.size());
    } catch (const ParseError& e) {
      last_problem = e.what();
    }
    // A replayed response cannot change, so retrying is pointless.
    if (options_.mode == CacheMode::kReplayOnly) break;
    if (options_.mode == CacheMode::kReadWrite) cache_.invalidate(key);
  }
  throw MalformedGenerationError(
      fmt::format("{} split {} generation {}: no valid output after {} attempt(s): {}",
                  bundle.doc_id, bundle.split_index, generation_index,
                  options_.mode == CacheMode::kReplayOnly ? 1 : attempts, last_problem),
      last_raw);
}

}  // namespace tempograph
