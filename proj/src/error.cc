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

#include "negkit/error.h"

namespace negkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kUnknownRelation: return "UnknownRelation";
    case ErrorCode::kUnnegatableEvent: return "UnnegatableEvent";
    case ErrorCode::kAlreadyNegated: return "AlreadyNegated";
    case ErrorCode::kNotAnOriginal: return "NotAnOriginal";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kRewriteRejected: return "RewriteRejected";
    case ErrorCode::kTemplateError: return "TemplateError";
    case ErrorCode::kShortfall: return "ShortfallError";
    case ErrorCode::kRecombinationExhausted: return "RecombinationExhausted";
    case ErrorCode::kGenerationRejected: return "GenerationRejected";
    case ErrorCode::kUnparseableVerdict: return "UnparseableVerdict";
    case ErrorCode::kUnknownInstance: return "UnknownInstance";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIncompleteGroup: return "IncompleteGroup";
    case ErrorCode::kLabelingAborted: return "LabelingAborted";
    case ErrorCode::kExportRejected: return "ExportRejected";
    case ErrorCode::kSessionError: return "SessionError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kEmptyOverlap: return "EmptyOverlap";
    case ErrorCode::kIncompleteAnnotation: return "IncompleteAnnotation";
    case ErrorCode::kDuplicatePrediction: return "DuplicatePrediction";
    case ErrorCode::kCoverageError: return "CoverageError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

int ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
      return 1;
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kProtocolError:
      return 3;
    default:
      return 2;
  }
}

}  // namespace negkit
