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

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace edgeiam {

inline void reply_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, status, nlohmann::json{{"error", message}});
}

/// Sends 401 and returns false unless the request carries the admin token.
bool require_admin(const httplib::Request& req, httplib::Response& res, const std::string& admin_token);

/// Parses the body as JSON; on failure sends 400 and returns nullopt.
std::optional<nlohmann::json> parse_json_body(const httplib::Request& req, httplib::Response& res);

}  // namespace edgeiam
