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
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"

namespace edgeiam::identity {

/// Revocation bitstring published by an issuer. `bits` is lowercase hex;
/// bit i sits in nibble i/4 at mask 8 >> (i % 4) (MSB-first), and a set
/// bit means revoked.
struct StatusList {
  std::string id;
  std::uint64_t size = 0;
  std::string bits;

  static StatusList create(std::string id, std::uint64_t size);

  bool valid() const;
  Expected<bool, std::string> is_revoked(std::uint64_t index) const;
};

Expected<StatusList, std::string> revoke_index(StatusList list, std::uint64_t index);

/// Extends the list to `new_size` bits; new bits are clear.
StatusList grow_status_list(StatusList list, std::uint64_t new_size);

/// `revision` is a publication counter kept by the issuer, not part of the
/// list itself.
nlohmann::json status_list_to_json(const StatusList& list, std::uint64_t revision);
Expected<StatusList, std::string> status_list_from_json(const nlohmann::json& j);

}  // namespace edgeiam::identity
