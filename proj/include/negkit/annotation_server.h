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

#ifndef NEGKIT_ANNOTATION_SERVER_H_
#define NEGKIT_ANNOTATION_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "negkit/annotation.h"

namespace httplib {
class Server;
}

namespace negkit {

// JSON-over-HTTP front end for an AnnotationSession.
//
//   GET  /api/tasks/next?annotator=ID   {done, triple_id, statement, position, total}
//   POST /api/labels                    body {annotator_id, triple_id, label, timestamp?}
//   GET  /api/progress                  {total, annotators: {id: count}}
//   GET  /api/agreement?a=ID&b=ID       {kappa, observed_agreement, ..., confusion}
//   GET  /api/benchmark/export          {gold, quarantined, pending}
//
// Failures answer {"error": <ErrorName>, "message": ...} with status 400
// (validation), 404 (unknown instance), 409 (overlap, incomplete), 503
// (closed session) or 500.
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationSession& session);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // Binds and serves on a background thread. Port 0 picks a free port.
  // Returns the bound port; throws kIoError when binding fails.
  int Start(const std::string& host, int port);
  // Serves on the calling thread until Stop().
  void Run(const std::string& host, int port);
  void Stop();

 private:
  void Register();

  AnnotationSession& session_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace negkit

#endif  // NEGKIT_ANNOTATION_SERVER_H_
