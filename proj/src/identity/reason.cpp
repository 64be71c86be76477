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

#include "edgeiam/identity/reason.hpp"

#include <array>
#include <utility>

namespace edgeiam::identity {
namespace {

constexpr std::array<std::pair<ReasonCode, const char*>, 14> kNames{{
    {ReasonCode::ok, "ok"},
    {ReasonCode::untrusted_issuer, "untrusted_issuer"},
    {ReasonCode::bad_signature, "bad_signature"},
    {ReasonCode::expired, "expired"},
    {ReasonCode::revoked, "revoked"},
    {ReasonCode::status_unavailable, "status_unavailable"},
    {ReasonCode::malformed, "malformed"},
    {ReasonCode::stale, "stale"},
    {ReasonCode::binding_mismatch, "binding_mismatch"},
    {ReasonCode::replayed, "replayed"},
    {ReasonCode::holder_signature_invalid, "holder_signature_invalid"},
    {ReasonCode::holder_key_mismatch, "holder_key_mismatch"},
    {ReasonCode::no_relation, "no_relation"},
    {ReasonCode::upstream_unavailable, "upstream_unavailable"},
}};

}  // namespace

const char* to_string(ReasonCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "malformed";
}

std::optional<ReasonCode> reason_from_string(std::string_view text) {
  for (const auto& [c, name] : kNames) {
    if (text == name) return c;
  }
  return std::nullopt;
}

}  // namespace edgeiam::identity
