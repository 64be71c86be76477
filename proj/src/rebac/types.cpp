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

#include "edgeiam/rebac/types.hpp"

#include "edgeiam/common/encoding.hpp"

namespace edgeiam::rebac {

std::optional<ObjectRef> ObjectRef::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  ObjectRef ref{std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
  if (!ref.valid()) return std::nullopt;
  return ref;
}

bool ObjectRef::valid() const {
  return is_identifier(type) && !id.empty() && id.size() <= kMaxObjectIdBytes;
}

std::string SubjectRef::str() const {
  if (const auto* d = as_direct()) return d->id;
  const auto& u = std::get<UsersetSubject>(value);
  return u.object.str() + "#" + u.relation;
}

bool SubjectRef::valid() const {
  if (const auto* d = as_direct()) return !d->id.empty();
  const auto& u = std::get<UsersetSubject>(value);
  return u.object.valid() && is_identifier(u.relation);
}

bool RelationTuple::well_formed() const {
  return object.valid() && is_identifier(relation) && subject.valid();
}

std::string RelationTuple::str() const { return object.str() + "#" + relation + "@" + subject.str(); }

}  // namespace edgeiam::rebac
