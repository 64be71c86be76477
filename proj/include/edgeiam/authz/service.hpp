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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "edgeiam/authz/decision.hpp"
#include "edgeiam/common/server.hpp"
#include "edgeiam/common/stats.hpp"
#include "edgeiam/rebac/engine.hpp"

namespace edgeiam::authz {

struct AuthzConfig {
  ListenOptions listen;
  std::optional<std::filesystem::path> data_dir;  // engine journal; in-memory when empty
  std::string admin_token;
  PipConfig pip;
  std::string metrics_path = "/metrics";
  Clock clock = unix_now;
};

/// PAP (model and tuple administration) and PDP (decisions) over HTTP,
/// sharing one engine.
class AuthzService {
 public:
  explicit AuthzService(AuthzConfig config);
  ~AuthzService();

  int start();
  void stop();
  void wait();

  std::string base_url() const;
  rebac::Engine& engine() { return *engine_; }
  LatencySummary decision_latency() const { return latency_.summary(); }

 private:
  void routes();

  AuthzConfig config_;
  std::unique_ptr<rebac::Engine> engine_;
  std::unique_ptr<DecisionPoint> pdp_;
  LatencyRecorder latency_;
  ServerRunner runner_;
};

}  // namespace edgeiam::authz
