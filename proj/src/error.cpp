// Copyright 2026 The reviewkit Authors.
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

#include "reviewkit/error.hpp"

namespace reviewkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kContent: return "content";
    case ErrorKind::kArgument: return "argument";
    case ErrorKind::kDecode: return "decode";
    case ErrorKind::kCoverage: return "coverage";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kParseExhausted: return "parse-exhausted";
    case ErrorKind::kTranscription: return "transcription";
    case ErrorKind::kJudge: return "judge";
    case ErrorKind::kPipeline: return "pipeline";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kTransport:
      return 4;
    case ErrorKind::kParseExhausted:
    case ErrorKind::kTranscription:
    case ErrorKind::kJudge:
    case ErrorKind::kPipeline:
      return 5;
    default:
      return 3;
  }
}

const char* to_string(TransportClass cls) noexcept {
  switch (cls) {
    case TransportClass::kTimeout: return "timeout";
    case TransportClass::kThrottle: return "throttle";
    case TransportClass::kNetwork: return "network";
    case TransportClass::kRejected: return "rejected";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorKind::kParse,
            line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

ParseExhaustedError::ParseExhaustedError(int calls, std::string last_text,
                                         const std::string& last_error)
    : Error(ErrorKind::kParseExhausted,
            "no parseable output after " + std::to_string(calls) +
                " call(s); last error: " + last_error),
      calls_(calls),
      last_text_(std::move(last_text)) {}

}  // namespace reviewkit
