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

#include "edgeiam/authz/service.hpp"

#include <chrono>
#include <stdexcept>

#include "edgeiam/common/http_reply.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/rebac/tuple_json.hpp"

namespace edgeiam::authz {

using nlohmann::json;

namespace {

json violations_to_json(const std::vector<rebac::ModelViolation>& violations) {
  json out = json::array();
  for (const auto& v : violations) out.push_back({{"type", v.type}, {"relation", v.relation}, {"message", v.message}});
  return out;
}

json expand_to_json(const rebac::ExpandNode& node) {
  json children = json::array();
  for (const auto& c : node.children) children.push_back(expand_to_json(c));
  return {{"label", node.label}, {"subjects", node.subjects}, {"children", std::move(children)}};
}

std::optional<rebac::SubjectRef> parse_subject_filter(const std::string& text) {
  if (auto hash = text.rfind('#'); hash != std::string::npos) {
    auto object = rebac::ObjectRef::parse(std::string_view(text).substr(0, hash));
    const auto relation = text.substr(hash + 1);
    if (!object || !is_identifier(relation)) return std::nullopt;
    return rebac::SubjectRef::userset(std::move(*object), relation);
  }
  if (text.empty()) return std::nullopt;
  return rebac::SubjectRef::direct(text);
}

void reply_engine_error(httplib::Response& res, const rebac::EngineError& e) {
  reply_json(res, 400, {{"error", e.message}, {"code", rebac::to_string(e.code)}});
}

}  // namespace

AuthzService::AuthzService(AuthzConfig config)
    : config_(std::move(config)),
      engine_(config_.data_dir ? std::make_unique<rebac::Engine>(*config_.data_dir)
                               : std::make_unique<rebac::Engine>()),
      pdp_(std::make_unique<DecisionPoint>(*engine_, config_.pip, config_.clock)),
      runner_(config_.listen.worker_threads) {
  if (config_.admin_token.empty()) throw std::invalid_argument("admin token must not be empty");
  if (!config_.metrics_path.starts_with('/')) throw std::invalid_argument("metrics path must start with '/'");
  routes();
}

AuthzService::~AuthzService() { stop(); }

int AuthzService::start() { return runner_.start(config_.listen.host, config_.listen.port); }
void AuthzService::stop() { runner_.stop(); }
void AuthzService::wait() { runner_.wait(); }

std::string AuthzService::base_url() const {
  return "http://" + config_.listen.host + ":" + std::to_string(runner_.port());
}

void AuthzService::routes() {
  auto& srv = runner_.server();

  srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { reply_json(res, 200, {{"ok", true}}); });

  srv.Put("/v1/model", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    auto model = rebac::parse_model(req.body);
    if (!model) return reply_json(res, 400, {{"error", "invalid model"}, {"violations", violations_to_json(model.error())}});
    auto id = engine_->write_model(std::move(*model));
    if (!id) return reply_json(res, 400, {{"error", "invalid model"}, {"violations", violations_to_json(id.error())}});
    reply_json(res, 200, {{"model_id", *id}});
  });

  srv.Get("/v1/model", [this](const httplib::Request&, httplib::Response& res) {
    auto model = engine_->model();
    if (!model) return reply_error(res, 404, "no model loaded");
    reply_json(res, 200, {{"model_id", model->model_id}, {"model", rebac::model_to_json(*model)}});
  });

  srv.Post("/v1/tuples", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    auto body = parse_json_body(req, res);
    if (!body) return;
    if (!body->is_object()) return reply_error(res, 400, "body must be {\"writes\": [...], \"deletes\": [...]}");
    auto writes = rebac::tuples_from_json(body->value("writes", json(nullptr)));
    if (!writes) return reply_error(res, 400, "writes: " + writes.error());
    auto deletes = rebac::tuples_from_json(body->value("deletes", json(nullptr)));
    if (!deletes) return reply_error(res, 400, "deletes: " + deletes.error());
    auto revision = engine_->write_tuples(*writes, *deletes);
    if (!revision) return reply_engine_error(res, revision.error());
    reply_json(res, 200, {{"revision", *revision}});
  });

  srv.Get("/v1/tuples", [this](const httplib::Request& req, httplib::Response& res) {
    rebac::TupleFilter filter;
    if (req.has_param("object")) {
      filter.object = rebac::ObjectRef::parse(req.get_param_value("object"));
      if (!filter.object) return reply_error(res, 400, "object filter must be type:id");
    }
    if (req.has_param("relation")) {
      filter.relation = req.get_param_value("relation");
      if (!is_identifier(*filter.relation)) return reply_error(res, 400, "relation filter must be an identifier");
    }
    if (req.has_param("subject")) {
      filter.subject = parse_subject_filter(req.get_param_value("subject"));
      if (!filter.subject) return reply_error(res, 400, "subject filter must be an id or type:id#relation");
    }
    reply_json(res, 200, {{"revision", engine_->revision()}, {"tuples", rebac::tuples_to_json(engine_->read_tuples(filter))}});
  });

  srv.Get("/v1/expand", [this](const httplib::Request& req, httplib::Response& res) {
    auto object = rebac::ObjectRef::parse(req.get_param_value("object"));
    const auto relation = req.get_param_value("relation");
    if (!object || !is_identifier(relation)) return reply_error(res, 400, "expand requires object and relation");
    auto tree = engine_->expand(*object, relation);
    if (!tree) return reply_engine_error(res, tree.error());
    reply_json(res, 200, expand_to_json(*tree));
  });

  srv.Post("/v1/check", [this](const httplib::Request& req, httplib::Response& res) {
    const auto started = std::chrono::steady_clock::now();
    auto body = parse_json_body(req, res);
    if (!body) return;
    auto request = decision_request_from_json(*body);
    if (!request) {
      return reply_json(res, 400, {{"allowed", false}, {"reason_code", "malformed"}, {"error", request.error()}});
    }
    const auto decision = pdp_->decide(*request);
    reply_json(res, 200, access_decision_to_json(decision));
    latency_.record(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count());
  });

  srv.Post("/v1/check-local", [this](const httplib::Request& req, httplib::Response& res) {
    if (!require_admin(req, res, config_.admin_token)) return;
    auto body = parse_json_body(req, res);
    if (!body) return;
    const auto& b = *body;
    if (!b.is_object() || !b.contains("subject_id") || !b["subject_id"].is_string() || !b.contains("relation") ||
        !b["relation"].is_string() || !b.contains("object") || !b["object"].is_string()) {
      return reply_error(res, 400, "body requires subject_id, relation, object and optional contextual_tuples");
    }
    auto object = rebac::ObjectRef::parse(b["object"].get<std::string>());
    if (!object) return reply_error(res, 400, "object must be type:id");
    auto contextual = rebac::tuples_from_json(b.value("contextual_tuples", json(nullptr)));
    if (!contextual) return reply_error(res, 400, "contextual_tuples: " + contextual.error());
    auto result = engine_->check({b["subject_id"].get<std::string>(), b["relation"].get<std::string>(), *object,
                                  std::move(*contextual)});
    if (!result) return reply_engine_error(res, result.error());
    AccessDecision d{result->allowed, result->allowed ? identity::ReasonCode::ok : identity::ReasonCode::no_relation,
                     std::nullopt, result->reasons};
    auto out = access_decision_to_json(d);
    out["depth_reached"] = result->depth_reached;
    reply_json(res, 200, out);
  });

  srv.Get(config_.metrics_path, [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, {{"check", summary_to_json(latency_.summary())}});
  });
}

}  // namespace edgeiam::authz
