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

#include "edgeiam/idm/service.hpp"

#include <stdexcept>

#include "edgeiam/common/http_reply.hpp"

namespace edgeiam::idm {

using nlohmann::json;

namespace {

int http_status(IdmErrorCode code) {
  switch (code) {
    case IdmErrorCode::bad_request:
      return 400;
    case IdmErrorCode::not_found:
      return 404;
    case IdmErrorCode::conflict:
      return 409;
  }
  return 500;
}

identity::KeyPair issuer_key(const std::string& seed_hex) {
  auto key = identity::keypair_from_hex(seed_hex);
  if (!key) throw std::invalid_argument("issuer seed: " + key.error().message);
  return *key;
}

}  // namespace

IdmService::IdmService(IdmConfig config)
    : config_(std::move(config)),
      idm_(std::make_unique<Idm>(issuer_key(config_.issuer_seed_hex), config_.data_dir)),
      runner_(config_.listen.worker_threads) {
  if (config_.admin_token.empty()) throw std::invalid_argument("admin token must not be empty");
  routes();
}

IdmService::~IdmService() { stop(); }

int IdmService::start() { return runner_.start(config_.listen.host, config_.listen.port); }
void IdmService::stop() { runner_.stop(); }
void IdmService::wait() { runner_.wait(); }

std::string IdmService::base_url() const {
  if (!config_.public_base_url.empty()) {
    auto base = config_.public_base_url;
    while (base.ends_with('/')) base.pop_back();
    return base;
  }
  return "http://" + config_.listen.host + ":" + std::to_string(runner_.port());
}

void IdmService::routes() {
  auto& srv = runner_.server();

  srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { reply_json(res, 200, {{"ok", true}}); });

  srv.Get("/v1/issuer", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200,
               {{"did", idm_->issuer_did()}, {"status_url", base_url() + "/v1/status/" + kStatusListId}});
  });

  srv.Post("/v1/dids", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    auto body = parse_json_body(req, res);
    if (!body) return;
    if (!body->is_object() || !body->contains("did_document")) {
      return reply_error(res, 400, "body must be {\"did_document\": {...}}");
    }
    auto reg = idm_->register_did((*body)["did_document"], config_.clock());
    if (!reg) return reply_error(res, http_status(reg.error().code), reg.error().message);
    reply_json(res, reg->created ? 201 : 200, {{"did", reg->did}});
  });

  srv.Get(R"(/v1/dids/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto doc = idm_->document(req.matches[1].str());
    if (!doc) return reply_error(res, 404, "DID not registered");
    res.status = 200;
    res.set_content(*doc, "application/json");
  });

  srv.Post("/v1/credentials", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    auto body = parse_json_body(req, res);
    if (!body) return;
    const auto& b = *body;
    if (!b.is_object() || !b.contains("subject_did") || !b["subject_did"].is_string() || !b.contains("attributes") ||
        !b["attributes"].is_array() || !b.contains("ttl_seconds") || !b["ttl_seconds"].is_number_integer()) {
      return reply_error(res, 400, "body requires subject_did (string), attributes (array), ttl_seconds (integer)");
    }
    std::vector<std::string> attributes;
    for (const auto& a : b["attributes"]) {
      if (!a.is_string()) return reply_error(res, 400, "attributes must be strings");
      attributes.push_back(a.get<std::string>());
    }
    auto vc = idm_->issue(b["subject_did"].get<std::string>(), attributes, b["ttl_seconds"].get<std::int64_t>(),
                          config_.clock(), base_url() + "/v1/status/" + kStatusListId);
    if (!vc) return reply_error(res, http_status(vc.error().code), vc.error().message);
    reply_json(res, 201, identity::credential_to_json(*vc));
  });

  srv.Post(R"(/v1/credentials/(.+)/revoke)", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    if (auto err = idm_->revoke(req.matches[1].str())) return reply_error(res, http_status(err->code), err->message);
    res.status = 204;
  });

  srv.Get(R"(/v1/status/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto list = idm_->status_list_json(req.matches[1].str());
    if (!list) return reply_error(res, 404, "unknown status list");
    res.set_header("Cache-Control", "no-store");
    reply_json(res, 200, *list);
  });
}

}  // namespace edgeiam::idm
