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

#include "edgeiam/identity/status_list.hpp"

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"

namespace edgeiam::identity {

namespace {

std::uint64_t hex_length(std::uint64_t size) { return (size + 3) / 4; }

int nibble_value(char c) { return c <= '9' ? c - '0' : c - 'a' + 10; }

char nibble_char(int v) { return "0123456789abcdef"[v & 0xF]; }

}  // namespace

StatusList StatusList::create(std::string id, std::uint64_t size) {
  return StatusList{std::move(id), size, std::string(hex_length(size), '0')};
}

bool StatusList::valid() const {
  return size > 0 && bits.size() == hex_length(size) && is_lower_hex(bits);
}

Expected<bool, std::string> StatusList::is_revoked(std::uint64_t index) const {
  if (!valid()) return unexpected(std::string("status list is malformed"));
  if (index >= size) return unexpected("index " + std::to_string(index) + " outside list of size " + std::to_string(size));
  return (nibble_value(bits[index / 4]) & (8 >> (index % 4))) != 0;
}

Expected<StatusList, std::string> revoke_index(StatusList list, std::uint64_t index) {
  if (!list.valid()) return unexpected(std::string("status list is malformed"));
  if (index >= list.size) {
    return unexpected("index " + std::to_string(index) + " outside list of size " + std::to_string(list.size));
  }
  auto& c = list.bits[index / 4];
  c = nibble_char(nibble_value(c) | (8 >> (index % 4)));
  return list;
}

StatusList grow_status_list(StatusList list, std::uint64_t new_size) {
  if (new_size <= list.size) return list;
  list.bits.resize(hex_length(new_size), '0');
  list.size = new_size;
  return list;
}

nlohmann::json status_list_to_json(const StatusList& list, std::uint64_t revision) {
  return nlohmann::json{{"id", list.id}, {"size", list.size}, {"bits", list.bits}, {"revision", revision}};
}

Expected<StatusList, std::string> status_list_from_json(const nlohmann::json& j) {
  if (!j.is_object()) return unexpected(std::string("status list must be an object"));
  const auto id = j.find("id");
  const auto size = j.find("size");
  const auto bits = j.find("bits");
  if (id == j.end() || size == j.end() || bits == j.end() || !id->is_string() || !size->is_number_unsigned() ||
      !bits->is_string()) {
    return unexpected(std::string("status list requires string id, unsigned size, string bits"));
  }
  StatusList list{id->get<std::string>(), size->get<std::uint64_t>(), bits->get<std::string>()};
  if (!list.valid()) return unexpected(std::string("status list bits do not match its size"));
  return list;
}

}  // namespace edgeiam::identity
