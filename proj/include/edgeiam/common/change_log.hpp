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
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

namespace edgeiam {

/// Append-only JSON-lines journal. Each record is one line, written and
/// fsync'ed before `append` returns. A torn final line (crash mid-write) is
/// dropped on replay; corruption anywhere else is an error.
class ChangeLog {
 public:
  explicit ChangeLog(std::filesystem::path path);
  ~ChangeLog();

  ChangeLog(const ChangeLog&) = delete;
  ChangeLog& operator=(const ChangeLog&) = delete;

  void replay(const std::function<void(const nlohmann::json&)>& visit) const;
  void append(const nlohmann::json& record);

  /// Replaces the whole journal with `records` via write-to-temp + rename.
  void rewrite(const std::vector<nlohmann::json>& records);

  const std::filesystem::path& path() const { return path_; }

 private:
  void open_for_append();

  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace edgeiam
