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
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "edgeiam/common/clock.hpp"
#include "edgeiam/common/http.hpp"
#include "edgeiam/identity/credential.hpp"
#include "edgeiam/identity/did.hpp"

namespace edgeiam::identity {

/// did:reg lookups against an IdM's `GET /v1/dids/{did}`.
class HttpRegistryClient final : public RegistryClient {
 public:
  HttpRegistryClient(Url idm_base, std::shared_ptr<HttpClientPool> pool);
  Expected<DidDocument, ResolveError> fetch(std::string_view did) override;

 private:
  Url base_;
  std::shared_ptr<HttpClientPool> pool_;
};

/// Fetches the status list named in a credential.
class HttpStatusFetcher final : public StatusFetcher {
 public:
  explicit HttpStatusFetcher(std::shared_ptr<HttpClientPool> pool) : pool_(std::move(pool)) {}
  Expected<StatusList, StatusFetchError> fetch(const std::string& status_url) override;

 private:
  std::shared_ptr<HttpClientPool> pool_;
};

/// Remembers successful resolutions for `ttl_seconds`. Failures are not
/// cached.
class CachingResolver final : public DidResolver {
 public:
  CachingResolver(DidResolver& inner, std::int64_t ttl_seconds, Clock clock);
  Expected<DidDocument, ResolveError> resolve(std::string_view did) override;

 private:
  DidResolver& inner_;
  std::int64_t ttl_;
  Clock clock_;
  std::mutex mu_;
  std::map<std::string, std::pair<std::int64_t, DidDocument>, std::less<>> cache_;
};

/// Remembers fetched status lists for `ttl_seconds`; a revocation can go
/// unnoticed for up to that long.
class CachingStatusFetcher final : public StatusFetcher {
 public:
  CachingStatusFetcher(StatusFetcher& inner, std::int64_t ttl_seconds, Clock clock);
  Expected<StatusList, StatusFetchError> fetch(const std::string& status_url) override;

 private:
  StatusFetcher& inner_;
  std::int64_t ttl_;
  Clock clock_;
  std::mutex mu_;
  std::map<std::string, std::pair<std::int64_t, StatusList>> cache_;
};

}  // namespace edgeiam::identity
