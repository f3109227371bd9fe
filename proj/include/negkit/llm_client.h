// Copyright 2026 The negkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEGKIT_LLM_CLIENT_H_
#define NEGKIT_LLM_CLIENT_H_

// Chat-completion client shared by the negator, the judge, the Invalid-triple
// generator and the inference runner.

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "negkit/util.h"

namespace negkit {

enum class ChatRole { kSystem, kUser, kAssistant };

std::string_view ChatRoleName(ChatRole role);
std::optional<ChatRole> ParseChatRole(std::string_view name);

struct ChatMessage {
  ChatRole role = ChatRole::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string model_name;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_output_tokens = 256;

  // Throws Error(kValidationError) if the request breaks its invariants.
  void Validate() const;

  bool operator==(const ChatRequest&) const = default;
};

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct ChatResponse {
  std::string content;
  std::string finish_reason = "stop";
  TokenUsage usage;
};

// Thrown by backends for failures worth retrying (timeouts, 429, 5xx).
class TransientBackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // One attempt. Throws TransientBackendError or Error(kProtocolError).
  virtual ChatResponse Send(const ChatRequest& request) = 0;
};

struct HttpBackendConfig {
  // e.g. "https://api.example.com/v1"; requests go to <base>/chat/completions.
  std::string base_url;
  std::string api_key;  // sent as a bearer token when non-empty
  int timeout_seconds = 60;
};

// OpenAI-style chat-completion endpoint over HTTP(S).
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  ChatResponse Send(const ChatRequest& request) override;

  static Json RequestBody(const ChatRequest& request);
  // Parses a response body; throws Error(kProtocolError) on bad shape.
  static ChatResponse ParseResponseBody(std::string_view body);

 private:
  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

// In-process backend for tests and offline runs.
class MockChatBackend : public ChatBackend {
 public:
  using Responder = std::function<ChatResponse(const ChatRequest&)>;

  explicit MockChatBackend(Responder responder)
      : responder_(std::move(responder)) {}

  // Responder that always answers `reply`.
  static Responder Canned(std::string reply);

  ChatResponse Send(const ChatRequest& request) override;
  std::size_t calls() const { return calls_.load(); }

 private:
  Responder responder_;
  std::atomic<std::size_t> calls_{0};
};

struct ClientOptions {
  int max_retries = 3;  // re-sends after the first attempt
  std::chrono::milliseconds initial_backoff{200};
  double backoff_multiplier = 2.0;
  bool cache_enabled = true;
  // Optional JSONL file the cache is loaded from and appended to.
  std::optional<std::filesystem::path> cache_path;
  std::size_t max_in_flight = 4;
};

class LlmClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  LlmClient(ChatBackend& backend, ClientOptions options);
  LlmClient(ChatBackend& backend, ClientOptions options, Sleeper sleeper);

  // Retries transient failures with exponential backoff; throws
  // Error(kBackendUnavailable) once retries are exhausted.
  ChatResponse Complete(const ChatRequest& request);
  // Completes every request with at most max_in_flight concurrent calls.
  // Results are in input order.
  std::vector<ChatResponse> CompleteAll(const std::vector<ChatRequest>& requests);

  std::size_t backend_calls() const { return backend_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }
  const ClientOptions& options() const { return options_; }

  // Content hash of (model_name, messages, temperature).
  static std::string CacheKey(const ChatRequest& request);

 private:
  std::optional<ChatResponse> Lookup(const std::string& key);
  void Store(const std::string& key, const ChatResponse& response);

  ChatBackend& backend_;
  ClientOptions options_;
  Sleeper sleeper_;
  std::mutex cache_mutex_;
  std::unordered_map<std::string, ChatResponse> cache_;
  std::atomic<std::size_t> backend_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

// A prompt file. Lines "### system", "### user" and "### assistant" open a new
// message; a file without markers is a single user message. Placeholders are
// written {name}; "{{" and "}}" are literal braces.
struct PromptAsset {
  std::string name;
  std::string raw;
  std::vector<ChatMessage> messages;
};

PromptAsset ParsePromptAsset(std::string name, std::string text);
PromptAsset LoadPromptAsset(const std::filesystem::path& path);

struct RequestOptions {
  std::string model_name;
  double temperature = 0.0;
  int max_output_tokens = 256;
};

// Substitutes every {placeholder}; throws Error(kTemplateError) naming the
// first unbound placeholder.
std::string RenderText(std::string_view text,
                       const std::map<std::string, std::string>& bindings);
ChatRequest RenderTemplate(const PromptAsset& asset,
                           const std::map<std::string, std::string>& bindings,
                           const RequestOptions& options = {});

}  // namespace negkit

#endif  // NEGKIT_LLM_CLIENT_H_
