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

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"

namespace edgeiam::identity {

struct CanonicalError {
  std::string message;
};

/// Signature input encoding: compact JSON, object keys sorted by UTF-8
/// bytes at every level, integers in shortest decimal form. Floats and nulls
/// have no canonical form here and are rejected, as is invalid UTF-8.
Expected<std::string, CanonicalError> canonical_bytes(const nlohmann::json& document);

}  // namespace edgeiam::identity
