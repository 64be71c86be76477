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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace edgeiam::rebac {

inline constexpr std::size_t kMaxObjectIdBytes = 512;

/// `type:id`. The id is opaque and may itself contain colons (DIDs do), so
/// textual forms are split on the first colon only.
struct ObjectRef {
  std::string type;
  std::string id;

  static std::optional<ObjectRef> parse(std::string_view text);
  std::string str() const { return type + ":" + id; }
  bool valid() const;

  auto operator<=>(const ObjectRef&) const = default;
};

struct DirectSubject {
  std::string id;
  auto operator<=>(const DirectSubject&) const = default;
};

/// All subjects holding `relation` on `object` (a Zanzibar userset).
struct UsersetSubject {
  ObjectRef object;
  std::string relation;
  auto operator<=>(const UsersetSubject&) const = default;
};

struct SubjectRef {
  std::variant<DirectSubject, UsersetSubject> value;

  static SubjectRef direct(std::string id) { return SubjectRef{DirectSubject{std::move(id)}}; }
  static SubjectRef userset(ObjectRef object, std::string relation) {
    return SubjectRef{UsersetSubject{std::move(object), std::move(relation)}};
  }

  bool is_direct() const { return std::holds_alternative<DirectSubject>(value); }
  const DirectSubject* as_direct() const { return std::get_if<DirectSubject>(&value); }
  const UsersetSubject* as_userset() const { return std::get_if<UsersetSubject>(&value); }

  /// `id` for direct subjects, `type:id#relation` for usersets.
  std::string str() const;
  bool valid() const;

  auto operator<=>(const SubjectRef&) const = default;
};

struct RelationTuple {
  ObjectRef object;
  std::string relation;
  SubjectRef subject;

  /// Shape rules only: identifier grammar, id lengths, non-empty subject.
  bool well_formed() const;
  std::string str() const;

  auto operator<=>(const RelationTuple&) const = default;
};

}  // namespace edgeiam::rebac
