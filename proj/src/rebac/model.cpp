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

#include "edgeiam/rebac/model.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"

namespace edgeiam::rebac {

using nlohmann::json;

std::string describe(const RewriteNode& node) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Direct>) {
          return "direct";
        } else if constexpr (std::is_same_v<T, ComputedRelation>) {
          return "computed(" + n.relation + ")";
        } else {
          return "tupleToUserset(" + n.tupleset + "->" + n.computed + ")";
        }
      },
      node);
}

bool RelationDefinition::allows_direct() const {
  return std::any_of(rewrite.begin(), rewrite.end(),
                     [](const RewriteNode& n) { return std::holds_alternative<Direct>(n); });
}

const RelationDefinition* AuthorizationModel::find(std::string_view type, std::string_view relation) const {
  const auto t = types.find(std::string(type));
  if (t == types.end()) return nullptr;
  const auto r = t->second.relations.find(std::string(relation));
  return r == t->second.relations.end() ? nullptr : &r->second;
}

std::vector<ModelViolation> validate_model(const AuthorizationModel& model) {
  std::vector<ModelViolation> out;
  auto unknown = [&](const std::string& type, const std::string& relation, const std::string& target) {
    out.push_back({type, relation, "unknown relation " + target + " on type " + type});
  };

  for (const auto& [type_name, type] : model.types) {
    if (!is_identifier(type_name)) out.push_back({type_name, "", "invalid type name '" + type_name + "'"});
    for (const auto& [rel_name, def] : type.relations) {
      if (!is_identifier(rel_name)) {
        out.push_back({type_name, rel_name, "invalid relation name '" + rel_name + "'"});
      }
      if (def.rewrite.empty()) {
        out.push_back({type_name, rel_name, "relation " + rel_name + " on type " + type_name + " has an empty rewrite"});
      }
      for (std::size_t i = 0; i < def.rewrite.size(); ++i) {
        const auto& node = def.rewrite[i];
        for (std::size_t j = 0; j < i; ++j) {
          if (def.rewrite[j] == node) {
            out.push_back({type_name, rel_name, "duplicate rewrite node " + describe(node)});
            break;
          }
        }
        if (const auto* c = std::get_if<ComputedRelation>(&node)) {
          if (!type.relations.contains(c->relation)) unknown(type_name, rel_name, c->relation);
        } else if (const auto* t = std::get_if<TupleToUserset>(&node)) {
          if (!type.relations.contains(t->tupleset)) unknown(type_name, rel_name, t->tupleset);
          if (!is_identifier(t->computed)) {
            out.push_back({type_name, rel_name, "invalid computed relation name '" + t->computed + "'"});
          }
        }
      }
    }
  }
  return out;
}

namespace {

std::optional<RewriteNode> node_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "direct") return Direct{};
  if (!j.is_object() || j.size() != 1) return std::nullopt;
  if (auto it = j.find("computed"); it != j.end()) {
    if (!it->is_string()) return std::nullopt;
    return ComputedRelation{it->get<std::string>()};
  }
  if (auto it = j.find("tupleToUserset"); it != j.end()) {
    if (!it->is_object() || it->size() != 2) return std::nullopt;
    const auto ts = it->find("tupleset");
    const auto cr = it->find("computed");
    if (ts == it->end() || cr == it->end() || !ts->is_string() || !cr->is_string()) return std::nullopt;
    return TupleToUserset{ts->get<std::string>(), cr->get<std::string>()};
  }
  return std::nullopt;
}

json node_to_json(const RewriteNode& node) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Direct>) {
          return "direct";
        } else if constexpr (std::is_same_v<T, ComputedRelation>) {
          return json{{"computed", n.relation}};
        } else {
          return json{{"tupleToUserset", {{"tupleset", n.tupleset}, {"computed", n.computed}}}};
        }
      },
      node);
}

}  // namespace

Expected<AuthorizationModel, std::vector<ModelViolation>> model_from_json(const json& j) {
  std::vector<ModelViolation> errors;
  AuthorizationModel model;
  if (!j.is_object()) return unexpected(std::vector<ModelViolation>{{"", "", "model must be a JSON object"}});
  if (j.empty()) return model;
  const auto types = j.find("types");
  if (types == j.end() || !types->is_object()) {
    return unexpected(std::vector<ModelViolation>{{"", "", "model requires a \"types\" object"}});
  }
  for (const auto& [type_name, type_json] : types->items()) {
    TypeDefinition type;
    const json* relations = nullptr;
    if (type_json.is_object()) {
      if (auto it = type_json.find("relations"); it != type_json.end()) relations = &*it;
    }
    if (relations == nullptr || !relations->is_object()) {
      errors.push_back({type_name, "", "type " + type_name + " requires a \"relations\" object"});
      continue;
    }
    for (const auto& [rel_name, rewrite_json] : relations->items()) {
      RelationDefinition def{rel_name, {}};
      if (!rewrite_json.is_array()) {
        errors.push_back({type_name, rel_name, "rewrite of " + rel_name + " must be an array"});
        continue;
      }
      for (const auto& n : rewrite_json) {
        auto node = node_from_json(n);
        if (!node) {
          errors.push_back({type_name, rel_name, "unrecognized rewrite node " + n.dump()});
          continue;
        }
        def.rewrite.push_back(std::move(*node));
      }
      type.relations.emplace(rel_name, std::move(def));
    }
    model.types.emplace(type_name, std::move(type));
  }
  if (!errors.empty()) return unexpected(std::move(errors));
  return model;
}

Expected<AuthorizationModel, std::vector<ModelViolation>> parse_model(std::string_view json_text) {
  // nlohmann keeps the last of duplicate keys silently, so collisions are
  // caught while parsing.
  std::vector<std::set<std::string>> key_stack;
  std::vector<ModelViolation> collisions;
  json parsed;
  try {
    parsed = json::parse(
        json_text.begin(), json_text.end(),
        [&](int depth, json::parse_event_t event, json& value) {
          switch (event) {
            case json::parse_event_t::object_start:
              key_stack.emplace_back();
              break;
            case json::parse_event_t::object_end:
              if (!key_stack.empty()) key_stack.pop_back();
              break;
            case json::parse_event_t::key: {
              const auto key = value.get<std::string>();
              if (!key_stack.empty() && !key_stack.back().insert(key).second) {
                const bool is_type = depth == 2;
                collisions.push_back({is_type ? key : "", is_type ? "" : key,
                                      std::string(is_type ? "duplicate type " : "duplicate key ") + key});
              }
              break;
            }
            default:
              break;
          }
          return true;
        });
  } catch (const json::exception& e) {
    return unexpected(std::vector<ModelViolation>{{"", "", std::string("invalid JSON: ") + e.what()}});
  }
  if (!collisions.empty()) return unexpected(std::move(collisions));
  return model_from_json(parsed);
}

json model_to_json(const AuthorizationModel& model) {
  json types = json::object();
  for (const auto& [type_name, type] : model.types) {
    json relations = json::object();
    for (const auto& [rel_name, def] : type.relations) {
      json rewrite = json::array();
      for (const auto& n : def.rewrite) rewrite.push_back(node_to_json(n));
      relations[rel_name] = std::move(rewrite);
    }
    types[type_name] = json{{"relations", std::move(relations)}};
  }
  return json{{"types", std::move(types)}};
}

}  // namespace edgeiam::rebac
