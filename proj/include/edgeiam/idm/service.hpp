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
#include <optional>
#include <string>

#include "edgeiam/common/clock.hpp"
#include "edgeiam/common/server.hpp"
#include "edgeiam/idm/idm.hpp"

namespace edgeiam::idm {

struct IdmConfig {
  ListenOptions listen;
  std::optional<std::filesystem::path> data_dir;  // in-memory when empty
  std::string admin_token;
  std::string issuer_seed_hex;
  /// Base URL verifiers use to reach this service; written into every
  /// credential's status_url. Defaults to http://<listen host>:<bound port>.
  std::string public_base_url;
  Clock clock = unix_now;
};

/// HTTP front end of an `Idm`.
class IdmService {
 public:
  explicit IdmService(IdmConfig config);
  ~IdmService();

  /// Returns the bound port.
  int start();
  void stop();
  void wait();

  std::string base_url() const;
  Idm& idm() { return *idm_; }

 private:
  void routes();

  IdmConfig config_;
  std::unique_ptr<Idm> idm_;
  ServerRunner runner_;
};

}  // namespace edgeiam::idm
