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
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/rebac/types.hpp"

namespace edgeiam::rebac {

/// `{"object":"type:id","relation":"r","subject":"user:id"}` or, for a
/// userset subject, `"subject":{"object":"type:id","relation":"r"}`.
nlohmann::json tuple_to_json(const RelationTuple& tuple);
Expected<RelationTuple, std::string> tuple_from_json(const nlohmann::json& j);

Expected<std::vector<RelationTuple>, std::string> tuples_from_json(const nlohmann::json& array);
nlohmann::json tuples_to_json(const std::vector<RelationTuple>& tuples);

}  // namespace edgeiam::rebac
