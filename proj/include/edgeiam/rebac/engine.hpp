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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/rebac/model.hpp"
#include "edgeiam/rebac/types.hpp"

namespace edgeiam {
class ChangeLog;
}

namespace edgeiam::rebac {

inline constexpr int kDefaultMaxDepth = 25;

struct CheckRequest {
  std::string subject_id;
  std::string relation;
  ObjectRef object;
  std::vector<RelationTuple> contextual_tuples;  // live for this call only
  int max_depth = kDefaultMaxDepth;
};

struct CheckResult {
  bool allowed = false;
  std::vector<std::string> reasons;  // satisfying chain(s); empty when denied
  int depth_reached = 0;
};

enum class EngineErrorCode {
  no_model,
  unknown_type,
  unknown_relation,
  malformed_tuple,
  invalid_request,
};

struct EngineError {
  EngineErrorCode code;
  std::string message;
};

const char* to_string(EngineErrorCode code);

/// Every field that is set must match. `object_type` alone matches all
/// objects of that type; `object` matches one object exactly.
struct TupleFilter {
  std::optional<std::string> object_type;
  std::optional<ObjectRef> object;
  std::optional<std::string> relation;
  std::optional<SubjectRef> subject;

  bool matches(const RelationTuple& t) const;
};

/// Subjects reachable from `label`, grouped by rewrite branch.
struct ExpandNode {
  std::string label;
  std::vector<std::string> subjects;  // direct leaves
  std::vector<ExpandNode> children;
};

/// Union of every leaf subject in the tree.
std::set<std::string> collect_subjects(const ExpandNode& root);

using TupleIndex = std::map<std::pair<ObjectRef, std::string>, std::vector<SubjectRef>>;

/// Immutable view of (model, tuples) at one revision.
struct Snapshot {
  std::shared_ptr<const AuthorizationModel> model;
  std::set<RelationTuple> tuples;
  TupleIndex index;
  std::uint64_t revision = 0;
  std::uint64_t model_revision = 0;
};

/// Pure evaluation functions over a snapshot.
Expected<CheckResult, EngineError> check(const Snapshot& snapshot, const CheckRequest& request);
Expected<ExpandNode, EngineError> expand(const Snapshot& snapshot, const ObjectRef& object,
                                         const std::string& relation, int max_depth = kDefaultMaxDepth);

/// Tuple store plus evaluator. Readers take a snapshot and never block
/// writers; writers are serialized and publish a fresh snapshot. With a data
/// directory every accepted write is journaled before it becomes visible and
/// the journal is replayed on construction.
class Engine {
 public:
  Engine();
  explicit Engine(const std::filesystem::path& data_dir);
  ~Engine();

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Validates and installs a model; returns its model id.
  Expected<std::string, std::vector<ModelViolation>> write_model(AuthorizationModel model);

  /// Atomic batch: deletes apply first, then adds. Returns the new revision.
  Expected<std::uint64_t, EngineError> write_tuples(const std::vector<RelationTuple>& adds,
                                                    const std::vector<RelationTuple>& deletes);

  /// Matching tuples in (object, relation, subject) order.
  std::vector<RelationTuple> read_tuples(const TupleFilter& filter = {}) const;

  Expected<CheckResult, EngineError> check(const CheckRequest& request) const;
  Expected<ExpandNode, EngineError> expand(const ObjectRef& object, const std::string& relation,
                                           int max_depth = kDefaultMaxDepth) const;

  std::shared_ptr<const Snapshot> snapshot() const;
  std::uint64_t revision() const { return snapshot()->revision; }
  std::shared_ptr<const AuthorizationModel> model() const { return snapshot()->model; }

 private:
  void replay();
  void apply_model(std::shared_ptr<const AuthorizationModel> model, std::uint64_t model_revision);
  void apply_tuples(const std::vector<RelationTuple>& adds, const std::vector<RelationTuple>& deletes,
                    std::uint64_t revision);
  void publish(std::shared_ptr<const Snapshot> next);

  std::unique_ptr<ChangeLog> log_;
  std::mutex write_mu_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const Snapshot> current_;
};

}  // namespace edgeiam::rebac
