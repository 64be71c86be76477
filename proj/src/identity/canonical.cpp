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

#include "edgeiam/identity/canonical.hpp"

#include <algorithm>
#include <vector>

#include <nlohmann/json.hpp>

namespace edgeiam::identity {
namespace {

using nlohmann::json;

bool write_string(const std::string& s, std::string& out) {
  try {
    out += json(s).dump();  // strict UTF-8, minimal escaping
  } catch (const json::type_error&) {
    return false;
  }
  return true;
}

bool write(const json& j, std::string& out, std::string& error) {
  switch (j.type()) {
    case json::value_t::object: {
      std::vector<const std::string*> keys;
      keys.reserve(j.size());
      for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(&it.key());
      // std::string compares as unsigned bytes via char_traits, i.e. UTF-8 byte order.
      std::sort(keys.begin(), keys.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
      out.push_back('{');
      bool first = true;
      for (const auto* key : keys) {
        if (!first) out.push_back(',');
        first = false;
        if (!write_string(*key, out)) {
          error = "invalid UTF-8 in object key";
          return false;
        }
        out.push_back(':');
        if (!write(j.at(*key), out, error)) return false;
      }
      out.push_back('}');
      return true;
    }
    case json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : j) {
        if (!first) out.push_back(',');
        first = false;
        if (!write(item, out, error)) return false;
      }
      out.push_back(']');
      return true;
    }
    case json::value_t::string:
      if (!write_string(j.get_ref<const std::string&>(), out)) {
        error = "invalid UTF-8 in string value";
        return false;
      }
      return true;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return true;
    case json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return true;
    case json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return true;
    case json::value_t::number_float:
      error = "floating-point value " + j.dump() + " has no canonical form";
      return false;
    case json::value_t::null:
      error = "null has no canonical form";
      return false;
    default:
      error = "unsupported JSON value";
      return false;
  }
}

}  // namespace

Expected<std::string, CanonicalError> canonical_bytes(const json& document) {
  std::string out;
  std::string error;
  if (!write(document, out, error)) return unexpected(CanonicalError{std::move(error)});
  return out;
}

}  // namespace edgeiam::identity
