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

#ifndef NEGKIT_ERROR_H_
#define NEGKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace negkit {

// Every failure the toolkit reports carries one of these codes. The CLI maps
// them onto exit statuses (see ExitStatusFor).
enum class ErrorCode {
  kMalformedInput,
  kUnknownRelation,
  kUnnegatableEvent,
  kAlreadyNegated,
  kNotAnOriginal,
  kBackendUnavailable,
  kProtocolError,
  kRewriteRejected,
  kTemplateError,
  kShortfall,
  kRecombinationExhausted,
  kGenerationRejected,
  kUnparseableVerdict,
  kUnknownInstance,
  kEmptyInput,
  kIncompleteGroup,
  kLabelingAborted,
  kExportRejected,
  kSessionError,
  kValidationError,
  kEmptyOverlap,
  kIncompleteAnnotation,
  kDuplicatePrediction,
  kCoverageError,
  kConfigError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view name() const { return ErrorCodeName(code_); }

 private:
  ErrorCode code_;
};

// 1 usage, 2 data error, 3 backend error.
int ExitStatusFor(ErrorCode code);

}  // namespace negkit

#endif  // NEGKIT_ERROR_H_
