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

#include "negkit/annotation_server.h"

#include <httplib.h>

#include "negkit/error.h"

namespace negkit {
namespace {

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidationError:
    case ErrorCode::kMalformedInput:
      return 400;
    case ErrorCode::kUnknownInstance:
      return 404;
    case ErrorCode::kEmptyOverlap:
    case ErrorCode::kIncompleteAnnotation:
      return 409;
    case ErrorCode::kSessionError:
      return 503;
    default:
      return 500;
  }
}

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, ErrorCode code, const std::string& message) {
  Json body;
  body["error"] = std::string(ErrorCodeName(code));
  body["message"] = message;
  Reply(res, StatusFor(code), body);
}

// Runs `handler`, mapping toolkit and parse errors onto JSON error bodies.
template <typename Fn>
void Guard(httplib::Response& res, Fn&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    ReplyError(res, e.code(), e.what());
  } catch (const Json::exception& e) {
    ReplyError(res, ErrorCode::kValidationError, e.what());
  } catch (const std::exception& e) {
    Json body;
    body["error"] = "InternalError";
    body["message"] = e.what();
    Reply(res, 500, body);
  }
}

std::string RequiredParam(const httplib::Request& req, const char* name) {
  if (!req.has_param(name) || req.get_param_value(name).empty()) {
    throw Error(ErrorCode::kValidationError,
                std::string("missing query parameter '") + name + "'");
  }
  return req.get_param_value(name);
}

}  // namespace

AnnotationServer::AnnotationServer(AnnotationSession& session)
    : session_(session), server_(std::make_unique<httplib::Server>()) {
  Register();
}

AnnotationServer::~AnnotationServer() { Stop(); }

void AnnotationServer::Register() {
  server_->Get("/api/tasks/next", [this](const httplib::Request& req,
                                         httplib::Response& res) {
    Guard(res, [&] {
      const std::string annotator = RequiredParam(req, "annotator");
      Json body;
      if (auto task = session_.NextTask(annotator)) {
        body["done"] = false;
        body["triple_id"] = task->triple_id;
        body["statement"] = task->statement;
        body["position"] = task->position;
        body["total"] = task->total;
      } else {
        body["done"] = true;
      }
      Reply(res, 200, body);
    });
  });

  server_->Post("/api/labels", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    Guard(res, [&] {
      Json row = Json::parse(req.body);
      if (row.is_object() && !row.contains("timestamp")) {
        row["timestamp"] = FormatTimestamp(NowTimestamp());
      }
      const AnnotationRecord record = RecordFromJson(row);
      const bool replaced = session_.Submit(record);
      Json body;
      body["status"] = replaced ? "overwritten" : "stored";
      body["record"] = RecordToJson(record);
      Reply(res, 200, body);
    });
  });

  server_->Get("/api/progress", [this](const httplib::Request&,
                                       httplib::Response& res) {
    Guard(res, [&] { Reply(res, 200, session_.Progress().ToJson()); });
  });

  server_->Get("/api/agreement", [this](const httplib::Request& req,
                                        httplib::Response& res) {
    Guard(res, [&] {
      const std::string a = RequiredParam(req, "a");
      const std::string b = RequiredParam(req, "b");
      Reply(res, 200, session_.Agreement(a, b).ToJson());
    });
  });

  server_->Get("/api/benchmark/export", [this](const httplib::Request&,
                                               httplib::Response& res) {
    Guard(res, [&] {
      Json body = session_.Adjudicate().ToJson();
      body["policy"] = std::string(PolicyName(session_.options().policy));
      Reply(res, 200, body);
    });
  });
}

int AnnotationServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void AnnotationServer::Run(const std::string& host, int port) {
  if (!server_->listen(host, port)) {
    throw Error(ErrorCode::kIoError,
                "cannot listen on " + host + ":" + std::to_string(port));
  }
}

void AnnotationServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace negkit
