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

#include "edgeiam/identity/http_sources.hpp"

#include <nlohmann/json.hpp>

namespace edgeiam::identity {

using nlohmann::json;

HttpRegistryClient::HttpRegistryClient(Url idm_base, std::shared_ptr<HttpClientPool> pool)
    : base_(std::move(idm_base)), pool_(std::move(pool)) {}

Expected<DidDocument, ResolveError> HttpRegistryClient::fetch(std::string_view did) {
  Url url = base_;
  url.target = base_.join_target("/v1/dids/" + std::string(did));
  auto res = pool_->get(url);
  if (!res) return unexpected(ResolveError{ResolveErrorCode::unavailable, res.error().message});
  if (res->status == 404) return unexpected(ResolveError{ResolveErrorCode::not_found, std::string(did) + " not registered"});
  if (res->status != 200) {
    return unexpected(ResolveError{ResolveErrorCode::unavailable, "registry answered HTTP " + std::to_string(res->status)});
  }
  try {
    auto doc = did_document_from_json(json::parse(res->body));
    if (!doc) return unexpected(ResolveError{ResolveErrorCode::malformed, doc.error()});
    return std::move(*doc);
  } catch (const json::exception& e) {
    return unexpected(ResolveError{ResolveErrorCode::malformed, e.what()});
  }
}

Expected<StatusList, StatusFetchError> HttpStatusFetcher::fetch(const std::string& status_url) {
  const auto url = parse_url(status_url);
  if (!url) return unexpected(StatusFetchError{"invalid status URL " + status_url});
  auto res = pool_->get(*url);
  if (!res) return unexpected(StatusFetchError{res.error().message});
  if (res->status != 200) return unexpected(StatusFetchError{"status list answered HTTP " + std::to_string(res->status)});
  try {
    auto list = status_list_from_json(json::parse(res->body));
    if (!list) return unexpected(StatusFetchError{list.error()});
    return std::move(*list);
  } catch (const json::exception& e) {
    return unexpected(StatusFetchError{e.what()});
  }
}

CachingResolver::CachingResolver(DidResolver& inner, std::int64_t ttl_seconds, Clock clock)
    : inner_(inner), ttl_(ttl_seconds), clock_(std::move(clock)) {}

Expected<DidDocument, ResolveError> CachingResolver::resolve(std::string_view did) {
  const auto now = clock_();
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(did); it != cache_.end() && now - it->second.first < ttl_) return it->second.second;
  }
  auto doc = inner_.resolve(did);
  if (doc) {
    std::lock_guard lock(mu_);
    cache_.insert_or_assign(std::string(did), std::make_pair(now, *doc));
  }
  return doc;
}

CachingStatusFetcher::CachingStatusFetcher(StatusFetcher& inner, std::int64_t ttl_seconds, Clock clock)
    : inner_(inner), ttl_(ttl_seconds), clock_(std::move(clock)) {}

Expected<StatusList, StatusFetchError> CachingStatusFetcher::fetch(const std::string& status_url) {
  const auto now = clock_();
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(status_url); it != cache_.end() && now - it->second.first < ttl_) {
      return it->second.second;
    }
  }
  auto list = inner_.fetch(status_url);
  if (list) {
    std::lock_guard lock(mu_);
    cache_.insert_or_assign(status_url, std::make_pair(now, *list));
  }
  return list;
}

}  // namespace edgeiam::identity
