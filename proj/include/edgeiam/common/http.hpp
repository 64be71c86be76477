// Copyright 2026 The Edge IAM Authors
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
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgeiam/common/expected.hpp"

namespace httplib {
class Client;
}

namespace edgeiam {

/// Absolute http URL split into the parts the stack needs. Only plain http
/// is supported; TLS termination is left to the deployment.
struct Url {
  std::string scheme;
  std::string host;  // lowercase
  int port = 80;
  std::string target = "/";  // path and query, always starting with '/'

  std::string origin() const;
  /// Value of the Host header: `host` alone for the default port.
  std::string host_header() const;
  /// Joins this URL's path with a request target (no duplicate slashes).
  std::string join_target(std::string_view request_target) const;
};

std::optional<Url> parse_url(std::string_view text);

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  std::string body;
  HttpHeaders headers;

  std::optional<std::string> header(std::string_view name) const;
};

struct HttpRequest {
  std::string method = "GET";
  std::string target = "/";
  HttpHeaders headers;
  std::string body;
};

struct TransportError {
  std::string message;
};

/// Thread-safe pool of keep-alive connections, one idle stack per origin.
/// A connection is checked out for exactly one exchange, so concurrent
/// callers never share a socket.
class HttpClientPool {
 public:
  explicit HttpClientPool(std::chrono::milliseconds timeout = std::chrono::seconds(5));
  ~HttpClientPool();

  HttpClientPool(const HttpClientPool&) = delete;
  HttpClientPool& operator=(const HttpClientPool&) = delete;

  Expected<HttpResponse, TransportError> send(const Url& origin, const HttpRequest& request);

  Expected<HttpResponse, TransportError> get(const Url& url, const HttpHeaders& headers = {});
  Expected<HttpResponse, TransportError> post_json(const Url& url, const std::string& body,
                                                   const HttpHeaders& headers = {});

  /// Closes every idle connection. A server stopping while a client keeps
  /// an idle connection open waits for the keep-alive timeout.
  void clear();

 private:
  std::unique_ptr<httplib::Client> acquire(const Url& origin);
  void release(const Url& origin, std::unique_ptr<httplib::Client> client);

  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::map<std::string, std::vector<std::unique_ptr<httplib::Client>>> idle_;
};

/// Extracts the token from `Authorization: Bearer <token>` and compares it
/// in constant time against `expected`. An empty `expected` rejects all.
bool bearer_token_matches(std::string_view authorization_header, std::string_view expected);

/// Hop-by-hop headers (RFC 9110 section 7.6.1) plus framing headers that a
/// proxy must regenerate rather than copy.
bool is_hop_by_hop_header(std::string_view name);

}  // namespace edgeiam
