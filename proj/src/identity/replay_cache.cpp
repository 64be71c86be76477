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

#include "edgeiam/identity/replay_cache.hpp"

namespace edgeiam::identity {

bool ReplayCache::contains(std::string_view nonce, std::int64_t now) const {
  std::lock_guard lock(mu_);
  const auto it = seen_.find(std::string(nonce));
  return it != seen_.end() && now - it->second <= ttl_;
}

bool ReplayCache::insert_if_absent(std::string_view nonce, std::int64_t now) {
  std::lock_guard lock(mu_);
  evict(now);
  auto [it, inserted] = seen_.try_emplace(std::string(nonce), now);
  if (!inserted) {
    if (now - it->second <= ttl_) return false;
    it->second = now;  // expired entry not yet evicted
  }
  order_.emplace_back(now, it->first);
  return true;
}

std::size_t ReplayCache::size() const {
  std::lock_guard lock(mu_);
  return seen_.size();
}

void ReplayCache::evict(std::int64_t now) {
  // Insertion times are non-decreasing only per wall clock; re-check the map
  // entry so a refreshed nonce is not dropped early.
  while (!order_.empty() && now - order_.front().first > ttl_) {
    auto it = seen_.find(order_.front().second);
    if (it != seen_.end() && it->second == order_.front().first) seen_.erase(it);
    order_.pop_front();
  }
}

}  // namespace edgeiam::identity
