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

#include "edgeiam/pep/routes.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/presentation.hpp"

namespace edgeiam::pep {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Line on which each top-level array element starts. Tracks strings so
// brackets inside them are ignored.
std::vector<std::size_t> element_lines(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  bool expect_element = false;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (depth == 1 && expect_element && !std::isspace(static_cast<unsigned char>(c)) && c != ']') {
      out.push_back(line);
      expect_element = false;
    }
    switch (c) {
      case '"':
        in_string = true;
        break;
      case '[':
      case '{':
        if (++depth == 1) expect_element = true;
        break;
      case ']':
      case '}':
        --depth;
        break;
      case ',':
        if (depth == 1) expect_element = true;
        break;
      default:
        break;
    }
  }
  return out;
}

std::optional<std::string> string_field(const json& rule, const char* key, std::string& error) {
  auto it = rule.find(key);
  if (it == rule.end() || !it->is_string()) {
    error = std::string(key) + " must be a string";
    return std::nullopt;
  }
  return it->get<std::string>();
}

Expected<RouteRule, std::string> parse_rule(const json& j) {
  if (!j.is_object()) return unexpected(std::string("rule must be an object"));
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known{"path_prefix", "methods", "upstream_url", "object", "relation"};
    if (std::find(known.begin(), known.end(), key) == known.end()) return unexpected("unknown field " + key);
  }
  std::string error;
  auto prefix = string_field(j, "path_prefix", error);
  auto upstream = prefix ? string_field(j, "upstream_url", error) : std::nullopt;
  auto object = upstream ? string_field(j, "object", error) : std::nullopt;
  auto relation = object ? string_field(j, "relation", error) : std::nullopt;
  if (!relation) return unexpected(error);

  RouteRule rule;
  rule.path_prefix = *prefix;
  if (!rule.path_prefix.starts_with('/')) return unexpected(std::string("path_prefix must begin with '/'"));
  auto url = parse_url(*upstream);
  if (!url) return unexpected("upstream_url '" + *upstream + "' is not an absolute http URL");
  rule.upstream = *url;
  auto obj = rebac::ObjectRef::parse(*object);
  if (!obj) return unexpected("object '" + *object + "' is not type:id");
  rule.object = *obj;
  if (!is_identifier(*relation)) return unexpected("relation '" + *relation + "' is not an identifier");
  rule.relation = *relation;

  auto methods = j.find("methods");
  if (methods == j.end() || !methods->is_array() || methods->empty()) {
    return unexpected(std::string("methods must be a non-empty array"));
  }
  for (const auto& m : *methods) {
    if (!m.is_string()) return unexpected(std::string("methods must be strings"));
    identity::RequestBinding probe{to_upper_ascii(m.get<std::string>()), "/", "h", "-"};
    if (probe.validation_error()) return unexpected("unsupported method " + m.get<std::string>());
    rule.methods.push_back(probe.method);
  }
  return rule;
}

}  // namespace

bool prefix_covers(std::string_view prefix, std::string_view path) {
  if (!path.starts_with(prefix)) return false;
  if (path.size() == prefix.size() || prefix.ends_with('/')) return true;
  return path[prefix.size()] == '/';
}

Expected<RouteTable, std::string> RouteTable::parse(std::string_view text, std::string_view source) {
  const std::string where(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    return unexpected(where + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON: " + e.what());
  } catch (const json::exception& e) {
    return unexpected(where + ": invalid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) return unexpected(where + ":1: route file must be a JSON array of rules");
  const auto lines = element_lines(text);
  RouteTable table;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto rule = parse_rule(doc[i]);
    if (!rule) {
      const auto line = i < lines.size() ? lines[i] : 1;
      return unexpected(where + ":" + std::to_string(line) + ": rule " + std::to_string(i) + ": " + rule.error());
    }
    table.rules_.push_back(std::move(*rule));
  }
  return table;
}

Expected<RouteTable, std::string> RouteTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return unexpected("cannot read route file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const RouteRule* RouteTable::match(std::string_view method, std::string_view path) const {
  const RouteRule* best = nullptr;
  for (const auto& rule : rules_) {
    if (!prefix_covers(rule.path_prefix, path)) continue;
    if (std::find(rule.methods.begin(), rule.methods.end(), method) == rule.methods.end()) continue;
    if (best == nullptr || rule.path_prefix.size() > best->path_prefix.size()) best = &rule;
  }
  return best;
}

}  // namespace edgeiam::pep
