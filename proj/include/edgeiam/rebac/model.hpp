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

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"

namespace edgeiam::rebac {

/// Tuples written directly on the relation.
struct Direct {
  auto operator<=>(const Direct&) const = default;
};

/// Holding `relation` on the same object implies this relation.
struct ComputedRelation {
  std::string relation;
  auto operator<=>(const ComputedRelation&) const = default;
};

/// Follow the objects named by `tupleset` tuples and require `computed` there.
struct TupleToUserset {
  std::string tupleset;
  std::string computed;
  auto operator<=>(const TupleToUserset&) const = default;
};

using RewriteNode = std::variant<Direct, ComputedRelation, TupleToUserset>;

std::string describe(const RewriteNode& node);

struct RelationDefinition {
  std::string name;
  std::vector<RewriteNode> rewrite;  // union

  bool allows_direct() const;
};

struct TypeDefinition {
  std::map<std::string, RelationDefinition> relations;
};

struct AuthorizationModel {
  std::map<std::string, TypeDefinition> types;
  std::string model_id;

  const RelationDefinition* find(std::string_view type, std::string_view relation) const;
  bool has_relation(std::string_view type, std::string_view relation) const {
    return find(type, relation) != nullptr;
  }
};

struct ModelViolation {
  std::string type;
  std::string relation;  // empty for type-level violations
  std::string message;
};

/// Empty result means the model is valid.
std::vector<ModelViolation> validate_model(const AuthorizationModel& model);

/// Parses the wire schema
/// `{"types":{"<type>":{"relations":{"<rel>":[rewrite...]}}}}`.
/// Schema errors and duplicate type/relation keys are reported as
/// violations. The result is not semantically validated; call
/// `validate_model` for that.
Expected<AuthorizationModel, std::vector<ModelViolation>> parse_model(std::string_view json_text);
Expected<AuthorizationModel, std::vector<ModelViolation>> model_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const AuthorizationModel& model);

}  // namespace edgeiam::rebac
