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

#include "edgeiam/rebac/tuple_json.hpp"

#include <nlohmann/json.hpp>

namespace edgeiam::rebac {

using nlohmann::json;

json tuple_to_json(const RelationTuple& tuple) {
  json subject;
  if (const auto* d = tuple.subject.as_direct()) {
    subject = d->id;
  } else {
    const auto* u = tuple.subject.as_userset();
    subject = json{{"object", u->object.str()}, {"relation", u->relation}};
  }
  return json{{"object", tuple.object.str()}, {"relation", tuple.relation}, {"subject", std::move(subject)}};
}

Expected<RelationTuple, std::string> tuple_from_json(const json& j) {
  if (!j.is_object()) return unexpected(std::string("tuple must be an object"));
  const auto obj = j.find("object");
  const auto rel = j.find("relation");
  const auto sub = j.find("subject");
  if (obj == j.end() || rel == j.end() || sub == j.end() || j.size() != 3) {
    return unexpected(std::string("tuple requires exactly object, relation and subject: ") + j.dump());
  }
  if (!obj->is_string() || !rel->is_string()) return unexpected(std::string("tuple object/relation must be strings"));
  auto object = ObjectRef::parse(obj->get<std::string>());
  if (!object) return unexpected("invalid object reference '" + obj->get<std::string>() + "'");

  RelationTuple tuple{std::move(*object), rel->get<std::string>(), SubjectRef::direct("")};
  if (sub->is_string()) {
    tuple.subject = SubjectRef::direct(sub->get<std::string>());
  } else if (sub->is_object() && sub->size() == 2 && sub->contains("object") && sub->contains("relation") &&
             (*sub)["object"].is_string() && (*sub)["relation"].is_string()) {
    auto set_object = ObjectRef::parse((*sub)["object"].get<std::string>());
    if (!set_object) return unexpected("invalid subject object '" + (*sub)["object"].get<std::string>() + "'");
    tuple.subject = SubjectRef::userset(std::move(*set_object), (*sub)["relation"].get<std::string>());
  } else {
    return unexpected("invalid subject " + sub->dump());
  }
  if (!tuple.well_formed()) return unexpected("malformed tuple " + j.dump());
  return tuple;
}

Expected<std::vector<RelationTuple>, std::string> tuples_from_json(const json& array) {
  if (array.is_null()) return std::vector<RelationTuple>{};
  if (!array.is_array()) return unexpected(std::string("expected an array of tuples"));
  std::vector<RelationTuple> out;
  out.reserve(array.size());
  for (const auto& item : array) {
    auto t = tuple_from_json(item);
    if (!t) return unexpected(t.error());
    out.push_back(std::move(*t));
  }
  return out;
}

json tuples_to_json(const std::vector<RelationTuple>& tuples) {
  json out = json::array();
  for (const auto& t : tuples) out.push_back(tuple_to_json(t));
  return out;
}

}  // namespace edgeiam::rebac
