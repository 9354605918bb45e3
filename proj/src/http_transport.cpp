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

#include <httplib.h>

#include "reviewkit/error.hpp"
#include "reviewkit/http.hpp"

namespace reviewkit {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // /path?query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::kArgument, "URL without scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport final : public HttpTransport {
 public:
  HttpResponse send(const HttpRequest& request) override {
    const auto parts = split_url(request.url);
    httplib::Client client(parts.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
    const auto usecs =
        std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    httplib::Result result;
    if (request.method == "GET") {
      result = client.Get(parts.target, headers);
    } else if (request.method == "POST") {
      result = client.Post(parts.target, headers, request.body, request.content_type);
    } else {
      throw Error(ErrorKind::kArgument, "unsupported HTTP method " + request.method);
    }
    if (!result) {
      const auto err = result.error();
      const auto cls = (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
                           ? TransportClass::kTimeout
                           : TransportClass::kNetwork;
      throw TransportError(cls, request.method + " " + request.url + " failed: " +
                                    httplib::to_string(err));
    }
    HttpResponse out;
    out.status = result->status;
    out.body = result->body;
    for (const auto& [k, v] : result->headers) out.headers[k] = v;
    return out;
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport() {
  return std::make_shared<HttplibTransport>();
}

void throw_for_status(const HttpResponse& response, std::string_view what) {
  const int s = response.status;
  if (s >= 200 && s < 300) return;
  TransportClass cls = TransportClass::kRejected;
  if (s == 429 || s == 503) cls = TransportClass::kThrottle;
  else if (s == 408 || s == 504) cls = TransportClass::kTimeout;
  else if (s >= 500) cls = TransportClass::kNetwork;
  std::string snippet = response.body.substr(0, 200);
  throw TransportError(cls, std::string(what) + ": HTTP " + std::to_string(s) +
                                (snippet.empty() ? "" : " " + snippet));
}

std::string url_encode(std::string_view text) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
        c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

}  // namespace reviewkit
