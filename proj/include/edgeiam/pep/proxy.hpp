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
#include <cstddef>
#include <memory>
#include <string>

#include "edgeiam/common/http.hpp"
#include "edgeiam/common/server.hpp"
#include "edgeiam/pep/routes.hpp"

namespace edgeiam::pep {

inline constexpr std::size_t kDefaultBodyLimit = 1 << 20;

struct PepConfig {
  ListenOptions listen;
  std::string pdp_url;  // base URL of the authz service
  std::chrono::milliseconds pdp_timeout = std::chrono::seconds(5);
  std::chrono::milliseconds upstream_timeout = std::chrono::seconds(30);
  std::size_t body_limit = kDefaultBodyLimit;
  RouteTable routes;
};

/// Reverse proxy that forwards a request only after the PDP allowed it.
class PepProxy {
 public:
  explicit PepProxy(PepConfig config);
  ~PepProxy();

  int start();
  void stop();
  void wait();

  std::string base_url() const;

 private:
  void install();

  PepConfig config_;
  Url pdp_;
  std::unique_ptr<HttpClientPool> pdp_pool_;
  std::unique_ptr<HttpClientPool> upstream_pool_;
  ServerRunner runner_;
};

}  // namespace edgeiam::pep
