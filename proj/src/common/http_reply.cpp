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

#include "edgeiam/common/http_reply.hpp"

#include "edgeiam/common/http.hpp"

namespace edgeiam {

bool require_admin(const httplib::Request& req, httplib::Response& res, const std::string& admin_token) {
  if (bearer_token_matches(req.get_header_value("Authorization"), admin_token)) return true;
  res.set_header("WWW-Authenticate", "Bearer");
  reply_error(res, 401, "missing or invalid admin token");
  return false;
}

std::optional<nlohmann::json> parse_json_body(const httplib::Request& req, httplib::Response& res) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    reply_error(res, 400, std::string("invalid JSON: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace edgeiam
