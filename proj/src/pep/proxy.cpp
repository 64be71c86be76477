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

#include "edgeiam/pep/proxy.hpp"

#include <stdexcept>

#include "edgeiam/authz/decision.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/common/http_reply.hpp"

namespace edgeiam::pep {

using nlohmann::json;

namespace {

constexpr std::string_view kSubjectHeader = "X-Subject-Did";

std::optional<std::string> vp_token(const httplib::Request& req) {
  const auto value = req.get_header_value("Authorization");
  if (value.size() <= 3 || to_lower_ascii(value.substr(0, 3)) != "vp ") return std::nullopt;
  auto token = value.substr(3);
  while (!token.empty() && token.front() == ' ') token.erase(token.begin());
  if (token.empty()) return std::nullopt;
  return token;
}

bool strip_inbound(const std::string& name) {
  const auto lower = to_lower_ascii(name);
  return lower == "authorization" || lower == to_lower_ascii(kSubjectHeader) || is_hop_by_hop_header(lower);
}

void relay(const HttpResponse& upstream, httplib::Response& res) {
  res.status = upstream.status;
  std::string content_type = "application/octet-stream";
  for (const auto& [name, value] : upstream.headers) {
    const auto lower = to_lower_ascii(name);
    if (is_hop_by_hop_header(lower)) continue;
    if (lower == "content-type") {
      content_type = value;
      continue;
    }
    res.set_header(name, value);
  }
  res.set_content(upstream.body, content_type);
}

}  // namespace

PepProxy::PepProxy(PepConfig config)
    : config_(std::move(config)),
      pdp_pool_(std::make_unique<HttpClientPool>(config_.pdp_timeout)),
      upstream_pool_(std::make_unique<HttpClientPool>(config_.upstream_timeout)),
      runner_(config_.listen.worker_threads) {
  auto pdp = parse_url(config_.pdp_url);
  if (!pdp) throw std::invalid_argument("invalid PDP URL " + config_.pdp_url);
  pdp_ = *pdp;
  pdp_.target = pdp_.join_target("/v1/check");
  install();
}

PepProxy::~PepProxy() { stop(); }

int PepProxy::start() { return runner_.start(config_.listen.host, config_.listen.port); }
void PepProxy::stop() { runner_.stop(); }
void PepProxy::wait() { runner_.wait(); }

std::string PepProxy::base_url() const {
  return "http://" + config_.listen.host + ":" + std::to_string(runner_.port());
}

void PepProxy::install() {
  auto& srv = runner_.server();
  srv.set_payload_max_length(config_.body_limit);

  auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    const auto* rule = config_.routes.match(req.method, req.path);
    if (rule == nullptr) return reply_error(res, 404, "no route");

    const auto token = vp_token(req);
    if (!token) {
      res.set_header("WWW-Authenticate", "VP");
      return reply_error(res, 401, "presentation required");
    }

    // The body was read once into req.body; the digest and the forwarded
    // bytes come from that same buffer.
    auto binding = identity::RequestBinding::make(req.method, req.target, req.get_header_value("Host"), req.body);
    if (!binding) return reply_json(res, 400, {{"reason_code", "malformed"}, {"error", binding.error()}});

    const authz::DecisionRequest ask{*binding, *token, rule->object, rule->relation};
    auto pdp_res = pdp_pool_->post_json(pdp_, authz::decision_request_to_json(ask).dump());
    if (!pdp_res || pdp_res->status != 200) return reply_json(res, 502, {{"reason", "upstream_unavailable"}});
    Expected<authz::AccessDecision, std::string> decision = unexpected(std::string("unparsed"));
    try {
      decision = authz::access_decision_from_json(json::parse(pdp_res->body));
    } catch (const json::exception&) {
    }
    if (!decision) return reply_json(res, 502, {{"reason", "upstream_unavailable"}});
    if (!decision->allowed || !decision->subject) {
      return reply_json(res, 403, {{"reason_code", identity::to_string(decision->reason_code)}});
    }

    HttpRequest forward{req.method, rule->upstream.join_target(req.target), {}, req.body};
    for (const auto& [name, value] : req.headers) {
      if (!strip_inbound(name)) forward.headers.emplace_back(name, value);
    }
    forward.headers.emplace_back(std::string(kSubjectHeader), *decision->subject);
    auto upstream = upstream_pool_->send(rule->upstream, forward);
    if (!upstream) return reply_json(res, 502, {{"reason", "upstream_unavailable"}, {"error", upstream.error().message}});
    relay(*upstream, res);
  };

  srv.Get(".*", handle);
  srv.Post(".*", handle);
  srv.Put(".*", handle);
  srv.Delete(".*", handle);
  srv.Patch(".*", handle);
  srv.Options(".*", handle);
}

}  // namespace edgeiam::pep
