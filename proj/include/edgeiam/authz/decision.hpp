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

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgeiam/common/clock.hpp"
#include "edgeiam/common/expected.hpp"
#include "edgeiam/common/http.hpp"
#include "edgeiam/identity/http_sources.hpp"
#include "edgeiam/identity/presentation.hpp"
#include "edgeiam/identity/reason.hpp"
#include "edgeiam/identity/replay_cache.hpp"
#include "edgeiam/rebac/engine.hpp"

namespace edgeiam::authz {

/// Object type under which verified attributes are asserted:
/// (org:<issuer DID>, <attribute>, user:<subject DID>).
inline constexpr const char* kOrgType = "org";
inline constexpr const char* kUserPrefix = "user:";

struct PipConfig {
  std::set<std::string> trusted_issuers;
  std::string idm_base_url;  // registry and default status host; may be empty
  std::int64_t freshness_window = identity::kDefaultFreshnessWindow;
  bool cache_enabled = false;
  std::int64_t cache_ttl = 60;
  std::chrono::milliseconds upstream_timeout = std::chrono::seconds(5);
};

struct DecisionRequest {
  identity::RequestBinding binding;
  std::string vp_token;
  rebac::ObjectRef object;
  std::string relation;
};

Expected<DecisionRequest, std::string> decision_request_from_json(const nlohmann::json& j);
nlohmann::json decision_request_to_json(const DecisionRequest& request);

struct AccessDecision {
  bool allowed = false;
  identity::ReasonCode reason_code = identity::ReasonCode::malformed;
  std::optional<std::string> subject;
  std::vector<std::string> trace;
};

nlohmann::json access_decision_to_json(const AccessDecision& decision);
Expected<AccessDecision, std::string> access_decision_from_json(const nlohmann::json& j);

/// Reason codes a decision may carry. Identity failures without their own
/// decision code are folded: status_unavailable into upstream_unavailable
/// and holder_key_mismatch into holder_signature_invalid.
identity::ReasonCode decision_reason(identity::ReasonCode verification_reason);

/// PIP + PDP pipeline: verify the presentation, turn verified attributes
/// into contextual tuples, and run the engine check. Fail-closed: every
/// path that does not end in a true engine check denies.
class DecisionPoint {
 public:
  DecisionPoint(const rebac::Engine& engine, PipConfig config, Clock clock = unix_now);
  ~DecisionPoint();

  AccessDecision decide(const DecisionRequest& request);

  const PipConfig& config() const { return config_; }

 private:
  const rebac::Engine& engine_;
  PipConfig config_;
  Clock clock_;
  std::shared_ptr<HttpClientPool> pool_;
  std::unique_ptr<identity::RegistryClient> registry_;
  std::unique_ptr<identity::StandardResolver> base_resolver_;
  std::unique_ptr<identity::StatusFetcher> base_fetcher_;
  std::unique_ptr<identity::CachingResolver> cached_resolver_;
  std::unique_ptr<identity::CachingStatusFetcher> cached_fetcher_;
  identity::DidResolver* resolver_ = nullptr;
  identity::StatusFetcher* fetcher_ = nullptr;
  identity::ReplayCache replay_cache_;
};

}  // namespace edgeiam::authz
