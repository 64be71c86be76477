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
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace edgeiam::identity {

/// Nonces seen within the last `ttl` seconds. An entry inserted at t stays a
/// member through t + ttl and may be evicted afterwards.
class ReplayCache {
 public:
  explicit ReplayCache(std::int64_t ttl_seconds) : ttl_(ttl_seconds) {}

  bool contains(std::string_view nonce, std::int64_t now) const;

  /// Atomic check-and-insert: true if the nonce was absent and is now
  /// recorded, false if it was already present.
  bool insert_if_absent(std::string_view nonce, std::int64_t now);

  std::size_t size() const;
  std::int64_t ttl() const { return ttl_; }

 private:
  void evict(std::int64_t now);

  std::int64_t ttl_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::int64_t> seen_;
  std::deque<std::pair<std::int64_t, std::string>> order_;
};

}  // namespace edgeiam::identity
