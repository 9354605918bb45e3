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

#include <chrono>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace reviewkit {

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // scheme://host[:port]/path[?query]
  std::map<std::string, std::string> headers;
  std::string body;
  std::string content_type = "application/json";
  std::chrono::milliseconds timeout{60000};
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Sends one request. Connection failures throw TransportError (kTimeout or
// kNetwork); HTTP status codes are returned for the caller to classify.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse send(const HttpRequest& request) = 0;
};

std::shared_ptr<HttpTransport> make_http_transport();

// Throws TransportError with the class implied by an unsuccessful status:
// 429/503 throttle, 408/504 timeout, other 5xx network, other 4xx rejected.
void throw_for_status(const HttpResponse& response, std::string_view what);

std::string url_encode(std::string_view text);

}  // namespace reviewkit
