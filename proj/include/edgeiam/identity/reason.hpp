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

#include <optional>
#include <string>
#include <string_view>

namespace edgeiam::identity {

/// Machine-readable outcome codes shared by credential/presentation
/// verification and access decisions.
enum class ReasonCode {
  ok,
  untrusted_issuer,
  bad_signature,
  expired,
  revoked,
  status_unavailable,
  malformed,
  stale,
  binding_mismatch,
  replayed,
  holder_signature_invalid,
  holder_key_mismatch,
  no_relation,
  upstream_unavailable,
};

const char* to_string(ReasonCode code);
std::optional<ReasonCode> reason_from_string(std::string_view text);

struct VerificationFailure {
  ReasonCode code;
  std::string detail;
};

}  // namespace edgeiam::identity
