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

#include "negkit/llm_client.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "negkit/error.h"

namespace negkit {

std::string_view ChatRoleName(ChatRole role) {
  switch (role) {
    case ChatRole::kSystem: return "system";
    case ChatRole::kUser: return "user";
    case ChatRole::kAssistant: return "assistant";
  }
  return "";
}

std::optional<ChatRole> ParseChatRole(std::string_view name) {
  if (name == "system") return ChatRole::kSystem;
  if (name == "user") return ChatRole::kUser;
  if (name == "assistant") return ChatRole::kAssistant;
  return std::nullopt;
}

void ChatRequest::Validate() const {
  if (messages.empty()) {
    throw Error(ErrorCode::kValidationError, "chat request has no messages");
  }
  if (messages.front().role == ChatRole::kAssistant) {
    throw Error(ErrorCode::kValidationError,
                "first message must be system or user");
  }
  for (const auto& message : messages) {
    if (message.content.empty()) {
      throw Error(ErrorCode::kValidationError, "chat message is empty");
    }
  }
  if (temperature < 0) {
    throw Error(ErrorCode::kValidationError, "temperature must be >= 0");
  }
  if (max_output_tokens <= 0) {
    throw Error(ErrorCode::kValidationError, "max_output_tokens must be > 0");
  }
}

HttpChatBackend::HttpChatBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigError,
                "backend base URL needs a scheme: '" + url + "'");
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    scheme_host_port_ = url;
  } else {
    scheme_host_port_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') {
      path_prefix_.pop_back();
    }
  }
}

Json HttpChatBackend::RequestBody(const ChatRequest& request) {
  Json body;
  body["model"] = request.model_name;
  Json messages = Json::array();
  for (const auto& message : request.messages) {
    messages.push_back(
        Json{{"role", ChatRoleName(message.role)}, {"content", message.content}});
  }
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_output_tokens;
  return body;
}

ChatResponse HttpChatBackend::ParseResponseBody(std::string_view body) {
  Json parsed;
  try {
    parsed = Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kProtocolError,
                std::string("response body is not JSON: ") + e.what());
  }
  try {
    const Json& choice = parsed.at("choices").at(0);
    ChatResponse response;
    const Json& content = choice.at("message").at("content");
    response.content = content.is_null() ? "" : content.get<std::string>();
    if (auto it = choice.find("finish_reason");
        it != choice.end() && it->is_string()) {
      response.finish_reason = it->get<std::string>();
    }
    if (auto it = parsed.find("usage"); it != parsed.end() && it->is_object()) {
      response.usage.prompt_tokens = it->value("prompt_tokens", 0);
      response.usage.completion_tokens = it->value("completion_tokens", 0);
    }
    if (response.finish_reason == "stop" && content.is_null()) {
      throw Error(ErrorCode::kProtocolError,
                  "completed response carries no content");
    }
    return response;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProtocolError,
                std::string("unexpected response shape: ") + e.what());
  }
}

ChatResponse HttpChatBackend::Send(const ChatRequest& request) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  client.set_write_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  auto result = client.Post(path_prefix_ + "/chat/completions", headers,
                            RequestBody(request).dump(), "application/json");
  if (!result) {
    throw TransientBackendError("transport failure: " +
                                httplib::to_string(result.error()));
  }
  const int status = result->status;
  if (status == 408 || status == 429 || status >= 500) {
    throw TransientBackendError("backend returned status " +
                                std::to_string(status));
  }
  if (status != 200) {
    throw Error(ErrorCode::kProtocolError,
                "backend returned status " + std::to_string(status) + ": " +
                    result->body.substr(0, 200));
  }
  return ParseResponseBody(result->body);
}

MockChatBackend::Responder MockChatBackend::Canned(std::string reply) {
  return [reply = std::move(reply)](const ChatRequest&) {
    ChatResponse response;
    response.content = reply;
    return response;
  };
}

ChatResponse MockChatBackend::Send(const ChatRequest& request) {
  ++calls_;
  return responder_(request);
}

LlmClient::LlmClient(ChatBackend& backend, ClientOptions options)
    : LlmClient(backend, std::move(options), [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
      }) {}

LlmClient::LlmClient(ChatBackend& backend, ClientOptions options,
                     Sleeper sleeper)
    : backend_(backend),
      options_(std::move(options)),
      sleeper_(std::move(sleeper)) {
  if (options_.cache_enabled && options_.cache_path &&
      std::filesystem::exists(*options_.cache_path)) {
    for (const auto& row : ReadJsonLines(*options_.cache_path)) {
      ChatResponse response;
      response.content = row.value("content", "");
      response.finish_reason = row.value("finish_reason", "stop");
      response.usage.prompt_tokens = row.value("prompt_tokens", 0);
      response.usage.completion_tokens = row.value("completion_tokens", 0);
      cache_[row.at("key").get<std::string>()] = std::move(response);
    }
  }
}

std::string LlmClient::CacheKey(const ChatRequest& request) {
  Json key;
  key["model"] = request.model_name;
  Json messages = Json::array();
  for (const auto& message : request.messages) {
    messages.push_back(Json::array({ChatRoleName(message.role), message.content}));
  }
  key["messages"] = std::move(messages);
  key["temperature"] = request.temperature;
  return Sha256Hex(key.dump());
}

std::optional<ChatResponse> LlmClient::Lookup(const std::string& key) {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

void LlmClient::Store(const std::string& key, const ChatResponse& response) {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_[key] = response;
  if (options_.cache_path) {
    Json row;
    row["key"] = key;
    row["content"] = response.content;
    row["finish_reason"] = response.finish_reason;
    row["prompt_tokens"] = response.usage.prompt_tokens;
    row["completion_tokens"] = response.usage.completion_tokens;
    if (options_.cache_path->has_parent_path()) {
      std::filesystem::create_directories(options_.cache_path->parent_path());
    }
    std::ofstream out(*options_.cache_path, std::ios::app | std::ios::binary);
    out << row.dump() << '\n';
  }
}

ChatResponse LlmClient::Complete(const ChatRequest& request) {
  request.Validate();
  std::string key;
  if (options_.cache_enabled) {
    key = CacheKey(request);
    if (auto cached = Lookup(key)) {
      ++cache_hits_;
      return *cached;
    }
  }
  auto backoff = options_.initial_backoff;
  std::string last_failure;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      sleeper_(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(backoff.count()) * options_.backoff_multiplier));
    }
    ++backend_calls_;
    try {
      ChatResponse response = backend_.Send(request);
      if (options_.cache_enabled) Store(key, response);
      return response;
    } catch (const TransientBackendError& e) {
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "backend unavailable after " +
                  std::to_string(options_.max_retries + 1) +
                  " attempts: " + last_failure);
}

std::vector<ChatResponse> LlmClient::CompleteAll(
    const std::vector<ChatRequest>& requests) {
  std::vector<ChatResponse> responses(requests.size());
  ParallelFor(requests.size(), options_.max_in_flight,
              [&](std::size_t i) { responses[i] = Complete(requests[i]); });
  return responses;
}

PromptAsset ParsePromptAsset(std::string name, std::string text) {
  PromptAsset asset;
  asset.name = std::move(name);
  asset.raw = text;
  std::istringstream in(text);
  std::string line;
  std::optional<ChatMessage> current;
  std::string body;
  bool saw_marker = false;
  auto flush = [&] {
    if (!current) return;
    while (!body.empty() && body.back() == '\n') body.pop_back();
    current->content = body;
    asset.messages.push_back(*current);
    body.clear();
  };
  while (std::getline(in, line)) {
    if (StartsWith(line, "### ")) {
      if (auto role = ParseChatRole(Trim(line.substr(4)))) {
        flush();
        current = ChatMessage{*role, {}};
        saw_marker = true;
        continue;
      }
    }
    if (!current) {
      if (Trim(line).empty()) continue;
      current = ChatMessage{ChatRole::kUser, {}};
    }
    body += line;
    body.push_back('\n');
  }
  flush();
  if (!saw_marker && !asset.messages.empty()) {
    // Without markers the whole file is one verbatim user message.
    asset.messages.front().content = text;
  }
  return asset;
}

PromptAsset LoadPromptAsset(const std::filesystem::path& path) {
  return ParsePromptAsset(path.stem().string(), ReadFile(path));
}

std::string RenderText(std::string_view text,
                       const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{' && i + 1 < text.size() && text[i + 1] == '{') {
      out.push_back('{');
      ++i;
      continue;
    }
    if (c == '}' && i + 1 < text.size() && text[i + 1] == '}') {
      out.push_back('}');
      ++i;
      continue;
    }
    if (c == '{') {
      std::size_t close = text.find('}', i + 1);
      if (close != std::string_view::npos) {
        std::string_view name = text.substr(i + 1, close - i - 1);
        bool identifier =
            !name.empty() &&
            (std::isalpha(static_cast<unsigned char>(name[0])) ||
             name[0] == '_') &&
            std::all_of(name.begin(), name.end(), [](char ch) {
              return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
            });
        if (identifier) {
          auto it = bindings.find(std::string(name));
          if (it == bindings.end()) {
            throw Error(ErrorCode::kTemplateError,
                        "unbound placeholder '" + std::string(name) + "'");
          }
          out += it->second;
          i = close;
          continue;
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

ChatRequest RenderTemplate(const PromptAsset& asset,
                           const std::map<std::string, std::string>& bindings,
                           const RequestOptions& options) {
  ChatRequest request;
  request.model_name = options.model_name;
  request.temperature = options.temperature;
  request.max_output_tokens = options.max_output_tokens;
  for (const auto& message : asset.messages) {
    request.messages.push_back(
        ChatMessage{message.role, RenderText(message.content, bindings)});
  }
  return request;
}

}  // namespace negkit
