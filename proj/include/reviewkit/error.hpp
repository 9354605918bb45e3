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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reviewkit {

// Error classification shared by every module. The CLI maps each kind onto
// an exit status (see exit_code_for).
enum class ErrorKind {
  kUsage,
  kIo,
  kParse,
  kValidation,
  kCapacity,
  kStructure,
  kContent,
  kArgument,
  kDecode,
  kCoverage,
  kTransport,
  kParseExhausted,
  kTranscription,
  kJudge,
  kPipeline,
};

const char* to_string(ErrorKind kind) noexcept;

// Exit status for an error kind: usage=2, data=3, transport=4, pipeline=5.
int exit_code_for(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed input; line is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class TransportClass { kTimeout, kThrottle, kNetwork, kRejected };

const char* to_string(TransportClass cls) noexcept;

class TransportError : public Error {
 public:
  TransportError(TransportClass cls, const std::string& message,
                 int attempts = 1)
      : Error(ErrorKind::kTransport, message), class_(cls), attempts_(attempts) {}

  TransportClass transport_class() const noexcept { return class_; }
  int attempts() const noexcept { return attempts_; }

 private:
  TransportClass class_;
  int attempts_;
};

// All parse retries failed; keeps the last raw model output for diagnosis.
class ParseExhaustedError : public Error {
 public:
  ParseExhaustedError(int calls, std::string last_text, const std::string& last_error);

  int calls() const noexcept { return calls_; }
  const std::string& last_text() const noexcept { return last_text_; }

 private:
  int calls_;
  std::string last_text_;
};

}  // namespace reviewkit
