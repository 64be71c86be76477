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

#include "edgeiam/authz/decision.hpp"

#include <iostream>
#include <mutex>

#include "edgeiam/common/encoding.hpp"
#include "edgeiam/rebac/tuple_json.hpp"

namespace edgeiam::authz {

using identity::ReasonCode;
using nlohmann::json;

namespace {

AccessDecision deny(ReasonCode code, std::optional<std::string> subject = std::nullopt) {
  return AccessDecision{false, code, std::move(subject), {}};
}

// Logs each skipped (issuer, attribute) pair once so a hot path does not
// flood the log.
void note_skipped_attribute(const std::string& issuer, const std::string& attribute) {
  static std::mutex mu;
  static std::set<std::pair<std::string, std::string>> seen;
  std::lock_guard lock(mu);
  if (seen.emplace(issuer, attribute).second) {
    std::clog << "authz: attribute '" << attribute << "' from " << issuer
              << " has no relation on type org in the active model; skipped\n";
  }
}

}  // namespace

Expected<DecisionRequest, std::string> decision_request_from_json(const json& j) {
  if (!j.is_object()) return unexpected(std::string("decision request must be an object"));
  for (const char* key : {"binding", "vp_token", "object", "relation"}) {
    if (!j.contains(key)) return unexpected(std::string("decision request is missing ") + key);
  }
  if (!j["vp_token"].is_string() || !j["object"].is_string() || !j["relation"].is_string()) {
    return unexpected(std::string("vp_token, object and relation must be strings"));
  }
  auto binding = identity::binding_from_json(j["binding"]);
  if (!binding) return unexpected("binding: " + binding.error());
  auto object = rebac::ObjectRef::parse(j["object"].get<std::string>());
  if (!object) return unexpected(std::string("object must be type:id"));
  const auto relation = j["relation"].get<std::string>();
  if (!is_identifier(relation)) return unexpected(std::string("relation must be an identifier"));
  return DecisionRequest{std::move(*binding), j["vp_token"].get<std::string>(), std::move(*object), relation};
}

json decision_request_to_json(const DecisionRequest& r) {
  return {{"binding", identity::binding_to_json(r.binding)},
          {"vp_token", r.vp_token},
          {"object", r.object.str()},
          {"relation", r.relation}};
}

json access_decision_to_json(const AccessDecision& d) {
  json out{{"allowed", d.allowed}, {"reason_code", identity::to_string(d.reason_code)}};
  if (d.subject) out["subject"] = *d.subject;
  if (!d.trace.empty()) out["trace"] = d.trace;
  return out;
}

Expected<AccessDecision, std::string> access_decision_from_json(const json& j) {
  if (!j.is_object() || !j.contains("allowed") || !j["allowed"].is_boolean() || !j.contains("reason_code") ||
      !j["reason_code"].is_string()) {
    return unexpected(std::string("decision requires allowed (bool) and reason_code (string)"));
  }
  auto code = identity::reason_from_string(j["reason_code"].get<std::string>());
  if (!code) return unexpected("unknown reason_code " + j["reason_code"].get<std::string>());
  AccessDecision d{j["allowed"].get<bool>(), *code, std::nullopt, {}};
  if (d.allowed != (d.reason_code == ReasonCode::ok)) {
    return unexpected(std::string("allowed must be true exactly when reason_code is ok"));
  }
  if (auto it = j.find("subject"); it != j.end() && it->is_string()) d.subject = it->get<std::string>();
  if (auto it = j.find("trace"); it != j.end() && it->is_array()) {
    for (const auto& t : *it) {
      if (t.is_string()) d.trace.push_back(t.get<std::string>());
    }
  }
  return d;
}

ReasonCode decision_reason(ReasonCode r) {
  switch (r) {
    case ReasonCode::status_unavailable:
      return ReasonCode::upstream_unavailable;
    case ReasonCode::holder_key_mismatch:
      return ReasonCode::holder_signature_invalid;
    default:
      return r;
  }
}

DecisionPoint::DecisionPoint(const rebac::Engine& engine, PipConfig config, Clock clock)
    : engine_(engine),
      config_(std::move(config)),
      clock_(std::move(clock)),
      pool_(std::make_shared<HttpClientPool>(config_.upstream_timeout)),
      replay_cache_(2 * config_.freshness_window) {
  if (!config_.idm_base_url.empty()) {
    auto base = parse_url(config_.idm_base_url);
    if (!base) throw std::invalid_argument("invalid IdM URL " + config_.idm_base_url);
    registry_ = std::make_unique<identity::HttpRegistryClient>(*base, pool_);
  }
  base_resolver_ = std::make_unique<identity::StandardResolver>(registry_.get());
  base_fetcher_ = std::make_unique<identity::HttpStatusFetcher>(pool_);
  resolver_ = base_resolver_.get();
  fetcher_ = base_fetcher_.get();
  if (config_.cache_enabled) {
    cached_resolver_ = std::make_unique<identity::CachingResolver>(*base_resolver_, config_.cache_ttl, clock_);
    cached_fetcher_ = std::make_unique<identity::CachingStatusFetcher>(*base_fetcher_, config_.cache_ttl, clock_);
    resolver_ = cached_resolver_.get();
    fetcher_ = cached_fetcher_.get();
  }
}

DecisionPoint::~DecisionPoint() = default;

AccessDecision DecisionPoint::decide(const DecisionRequest& request) {
  auto vp = identity::decode_presentation_token(request.vp_token);
  if (!vp) return deny(ReasonCode::malformed);

  auto claims = identity::verify_vp(*vp, request.binding, *resolver_, config_.trusted_issuers, *fetcher_,
                                    replay_cache_, clock_(), config_.freshness_window);
  if (!claims) return deny(decision_reason(claims.error().code));

  const auto snapshot = engine_.snapshot();
  const rebac::ObjectRef org{kOrgType, claims->issuer};
  std::vector<rebac::RelationTuple> contextual;
  for (const auto& attribute : claims->attributes) {
    if (!snapshot->model || !snapshot->model->has_relation(kOrgType, attribute) || !org.valid()) {
      note_skipped_attribute(claims->issuer, attribute);
      continue;
    }
    contextual.push_back({org, attribute, rebac::SubjectRef::direct(kUserPrefix + claims->subject)});
  }

  rebac::CheckRequest check{kUserPrefix + claims->subject, request.relation, request.object, std::move(contextual)};
  auto result = rebac::check(*snapshot, check);
  if (!result) return deny(ReasonCode::malformed, claims->subject);
  if (!result->allowed) return deny(ReasonCode::no_relation, claims->subject);
  return AccessDecision{true, ReasonCode::ok, claims->subject, std::move(result->reasons)};
}

}  // namespace edgeiam::authz
