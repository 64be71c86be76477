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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/common/http.hpp"
#include "edgeiam/rebac/types.hpp"

namespace edgeiam::pep {

struct RouteRule {
  std::string path_prefix;           // begins with '/'
  std::vector<std::string> methods;  // uppercase
  Url upstream;
  rebac::ObjectRef object;
  std::string relation;
};

/// Immutable after load. Matching is by path segments: "/energy" covers
/// "/energy" and "/energy/plug1" but not "/energyx". The longest matching
/// prefix wins and ties go to the earlier rule.
class RouteTable {
 public:
  /// `source` names the input in diagnostics, which read
  /// "<source>:<line>:<col>: <message>" or "<source>:<line>: <message>".
  static Expected<RouteTable, std::string> parse(std::string_view text, std::string_view source = "routes");
  static Expected<RouteTable, std::string> load(const std::filesystem::path& path);

  const RouteRule* match(std::string_view method, std::string_view path) const;
  const std::vector<RouteRule>& rules() const { return rules_; }

 private:
  std::vector<RouteRule> rules_;
};

bool prefix_covers(std::string_view prefix, std::string_view path);

}  // namespace edgeiam::pep
