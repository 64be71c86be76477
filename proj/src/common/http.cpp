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

#include "edgeiam/common/http.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>

#include "edgeiam/common/encoding.hpp"

namespace edgeiam {

std::string Url::origin() const { return scheme + "://" + host + ":" + std::to_string(port); }

std::string Url::host_header() const {
  if (port == 80) return host;
  return host + ":" + std::to_string(port);
}

std::string Url::join_target(std::string_view request_target) const {
  std::string base = target;
  const auto q = base.find('?');
  if (q != std::string::npos) base.resize(q);
  while (!base.empty() && base.back() == '/') base.pop_back();
  if (request_target.empty() || request_target.front() != '/') base.push_back('/');
  base.append(request_target);
  return base;
}

std::optional<Url> parse_url(std::string_view text) {
  constexpr std::string_view kHttp = "http://";
  if (text.size() <= kHttp.size() || to_lower_ascii(text.substr(0, kHttp.size())) != kHttp) return std::nullopt;
  Url url;
  url.scheme = "http";
  std::string_view rest = text.substr(kHttp.size());
  const auto slash = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, slash);
  std::string_view tail = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash);
  if (authority.empty() || authority.find('@') != std::string_view::npos) return std::nullopt;

  std::string_view host = authority;
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    host = authority.substr(0, colon);
    const auto port_text = authority.substr(colon + 1);
    int port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port <= 0 || port > 65535) {
      return std::nullopt;
    }
    url.port = port;
  }
  if (host.empty()) return std::nullopt;
  for (char c : host) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    if (!ok) return std::nullopt;
  }
  url.host = to_lower_ascii(host);

  const auto hash = tail.find('#');
  if (hash != std::string_view::npos) tail = tail.substr(0, hash);
  if (tail.empty()) {
    url.target = "/";
  } else if (tail.front() == '?') {
    url.target = "/" + std::string(tail);
  } else {
    url.target = std::string(tail);
  }
  return url;
}

std::optional<std::string> HttpResponse::header(std::string_view name) const {
  const auto lname = to_lower_ascii(name);
  for (const auto& [k, v] : headers) {
    if (to_lower_ascii(k) == lname) return v;
  }
  return std::nullopt;
}

HttpClientPool::HttpClientPool(std::chrono::milliseconds timeout) : timeout_(timeout) {}

HttpClientPool::~HttpClientPool() = default;

void HttpClientPool::clear() {
  std::lock_guard lock(mu_);
  idle_.clear();
}

std::unique_ptr<httplib::Client> HttpClientPool::acquire(const Url& origin) {
  {
    std::lock_guard lock(mu_);
    auto& stack = idle_[origin.origin()];
    if (!stack.empty()) {
      auto client = std::move(stack.back());
      stack.pop_back();
      return client;
    }
  }
  auto client = std::make_unique<httplib::Client>(origin.host, origin.port);
  client->set_keep_alive(true);
  client->set_tcp_nodelay(true);
  client->set_url_encode(false);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client->set_connection_timeout(secs.count(), usecs.count());
  client->set_read_timeout(secs.count(), usecs.count());
  client->set_write_timeout(secs.count(), usecs.count());
  return client;
}

void HttpClientPool::release(const Url& origin, std::unique_ptr<httplib::Client> client) {
  std::lock_guard lock(mu_);
  idle_[origin.origin()].push_back(std::move(client));
}

Expected<HttpResponse, TransportError> HttpClientPool::send(const Url& origin, const HttpRequest& request) {
  auto client = acquire(origin);
  httplib::Request req;
  req.method = request.method;
  req.path = request.target;
  for (const auto& [k, v] : request.headers) req.headers.emplace(k, v);
  req.body = request.body;
  if (!request.body.empty() && !req.has_header("Content-Type")) {
    req.headers.emplace("Content-Type", "application/octet-stream");
  }

  auto result = client->send(req);
  if (!result) {
    return unexpected(TransportError{origin.origin() + ": " + httplib::to_string(result.error())});
  }
  HttpResponse out;
  out.status = result->status;
  out.body = std::move(result->body);
  for (const auto& [k, v] : result->headers) out.headers.emplace_back(k, v);
  const auto connection = out.header("Connection");
  if (!connection || to_lower_ascii(*connection) != "close") release(origin, std::move(client));
  return out;
}

Expected<HttpResponse, TransportError> HttpClientPool::get(const Url& url, const HttpHeaders& headers) {
  return send(url, HttpRequest{"GET", url.target, headers, {}});
}

Expected<HttpResponse, TransportError> HttpClientPool::post_json(const Url& url, const std::string& body,
                                                                 const HttpHeaders& headers) {
  HttpRequest req{"POST", url.target, headers, body};
  req.headers.emplace_back("Content-Type", "application/json");
  return send(url, req);
}

bool bearer_token_matches(std::string_view authorization_header, std::string_view expected) {
  constexpr std::string_view kPrefix = "Bearer ";
  if (expected.empty() || authorization_header.size() <= kPrefix.size()) return false;
  if (authorization_header.substr(0, kPrefix.size()) != kPrefix) return false;
  const auto token = authorization_header.substr(kPrefix.size());
  if (token.size() != expected.size()) return false;
  unsigned char diff = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    diff |= static_cast<unsigned char>(token[i] ^ expected[i]);
  }
  return diff == 0;
}

bool is_hop_by_hop_header(std::string_view name) {
  static const std::string_view kHeaders[] = {"connection", "keep-alive", "proxy-authenticate",
                                              "proxy-authorization", "te", "trailer",
                                              "transfer-encoding", "upgrade", "content-length",
                                              "host"};
  const auto lname = to_lower_ascii(name);
  return std::find(std::begin(kHeaders), std::end(kHeaders), lname) != std::end(kHeaders);
}

}  // namespace edgeiam
