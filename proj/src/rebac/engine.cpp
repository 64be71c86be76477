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

#include "edgeiam/rebac/engine.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include <nlohmann/json.hpp>

#include "edgeiam/common/change_log.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/rebac/tuple_json.hpp"

namespace edgeiam::rebac {

using nlohmann::json;

const char* to_string(EngineErrorCode code) {
  switch (code) {
    case EngineErrorCode::no_model: return "no_model";
    case EngineErrorCode::unknown_type: return "unknown_type";
    case EngineErrorCode::unknown_relation: return "unknown_relation";
    case EngineErrorCode::malformed_tuple: return "malformed_tuple";
    case EngineErrorCode::invalid_request: return "invalid_request";
  }
  return "unknown";
}

bool TupleFilter::matches(const RelationTuple& t) const {
  if (object_type && t.object.type != *object_type) return false;
  if (object && t.object != *object) return false;
  if (relation && t.relation != *relation) return false;
  if (subject && t.subject != *subject) return false;
  return true;
}

namespace {

using Frame = std::pair<ObjectRef, std::string>;

std::string frame_label(const Frame& f) { return f.first.str() + "#" + f.second; }

struct SubjectEntry {
  const SubjectRef* subject;
  bool contextual;
};

/// Stored and per-call tuples behind one lookup.
class TupleView {
 public:
  TupleView(const TupleIndex& stored, const TupleIndex* contextual) : stored_(stored), contextual_(contextual) {}

  std::vector<SubjectEntry> lookup(const ObjectRef& object, const std::string& relation) const {
    std::vector<SubjectEntry> out;
    const Frame key{object, relation};
    if (auto it = stored_.find(key); it != stored_.end()) {
      for (const auto& s : it->second) out.push_back({&s, false});
    }
    if (contextual_ != nullptr) {
      if (auto it = contextual_->find(key); it != contextual_->end()) {
        for (const auto& s : it->second) out.push_back({&s, true});
      }
    }
    return out;
  }

 private:
  const TupleIndex& stored_;
  const TupleIndex* contextual_;
};

void index_insert(TupleIndex& index, const RelationTuple& t) {
  auto& subjects = index[{t.object, t.relation}];
  const auto pos = std::lower_bound(subjects.begin(), subjects.end(), t.subject);
  if (pos == subjects.end() || *pos != t.subject) subjects.insert(pos, t.subject);
}

void index_erase(TupleIndex& index, const RelationTuple& t) {
  auto it = index.find({t.object, t.relation});
  if (it == index.end()) return;
  auto& subjects = it->second;
  const auto pos = std::lower_bound(subjects.begin(), subjects.end(), t.subject);
  if (pos != subjects.end() && *pos == t.subject) subjects.erase(pos);
  if (subjects.empty()) index.erase(it);
}

Expected<const RelationDefinition*, EngineError> resolve_root(const Snapshot& snapshot, const ObjectRef& object,
                                                              const std::string& relation) {
  if (!snapshot.model) return unexpected(EngineError{EngineErrorCode::no_model, "no authorization model loaded"});
  if (!object.valid()) {
    return unexpected(EngineError{EngineErrorCode::invalid_request, "invalid object '" + object.str() + "'"});
  }
  if (!snapshot.model->types.contains(object.type)) {
    return unexpected(EngineError{EngineErrorCode::unknown_type, "unknown type " + object.type});
  }
  const auto* def = snapshot.model->find(object.type, relation);
  if (def == nullptr) {
    return unexpected(
        EngineError{EngineErrorCode::unknown_relation, "unknown relation " + relation + " on type " + object.type});
  }
  return def;
}

}  // namespace

Expected<CheckResult, EngineError> check(const Snapshot& snapshot, const CheckRequest& request) {
  auto root_def = resolve_root(snapshot, request.object, request.relation);
  if (!root_def) return unexpected(root_def.error());
  if (request.subject_id.empty()) {
    return unexpected(EngineError{EngineErrorCode::invalid_request, "empty subject"});
  }
  if (request.max_depth <= 0) {
    return unexpected(EngineError{EngineErrorCode::invalid_request, "max_depth must be positive"});
  }

  TupleIndex contextual;
  for (const auto& t : request.contextual_tuples) {
    if (!t.well_formed()) {
      return unexpected(EngineError{EngineErrorCode::malformed_tuple, "malformed contextual tuple " + t.str()});
    }
    index_insert(contextual, t);
  }
  const TupleView view(snapshot.index, contextual.empty() ? nullptr : &contextual);
  const auto& model = *snapshot.model;

  // Breadth-first over (object, relation) frames for the fixed subject. The
  // rewrite grammar is a pure union, so the query is reachability and the
  // first visit of a frame is at its minimal depth.
  struct Node {
    Frame frame;
    int depth;
    int parent;
    std::string via;
  };
  std::vector<Node> nodes;
  std::set<Frame> visited;
  std::deque<int> queue;
  CheckResult result;
  bool truncated = false;

  auto enqueue = [&](Frame frame, int parent, std::string via) {
    if (!model.has_relation(frame.first.type, frame.second)) return;
    if (visited.contains(frame)) return;
    const int depth = nodes[parent].depth + 1;
    if (depth > request.max_depth) {
      truncated = true;
      return;
    }
    visited.insert(frame);
    nodes.push_back({std::move(frame), depth, parent, std::move(via)});
    queue.push_back(static_cast<int>(nodes.size()) - 1);
  };

  auto succeed = [&](int at, const std::string& leaf) {
    std::vector<std::string> parts{leaf};
    for (int i = at; i >= 0; i = nodes[i].parent) {
      parts.push_back(frame_label(nodes[i].frame));
      if (!nodes[i].via.empty()) parts.push_back(nodes[i].via);
    }
    std::string path;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      if (!path.empty()) path += " > ";
      path += *it;
    }
    result.allowed = true;
    result.reasons.push_back(std::move(path));
  };

  nodes.push_back({{request.object, request.relation}, 0, -1, {}});
  visited.insert(nodes.front().frame);
  queue.push_back(0);

  while (!queue.empty() && !result.allowed) {
    const int current = queue.front();
    queue.pop_front();
    result.depth_reached = std::max(result.depth_reached, nodes[current].depth);
    const ObjectRef object = nodes[current].frame.first;
    const std::string relation = nodes[current].frame.second;
    const auto* def = model.find(object.type, relation);

    for (const auto& node : def->rewrite) {
      if (std::holds_alternative<Direct>(node)) {
        for (const auto& entry : view.lookup(object, relation)) {
          if (const auto* d = entry.subject->as_direct()) {
            if (d->id == request.subject_id) {
              succeed(current, "direct(" + d->id + (entry.contextual ? ")[contextual]" : ")"));
              break;
            }
          } else {
            const auto* u = entry.subject->as_userset();
            enqueue({u->object, u->relation}, current, entry.contextual ? "userset[contextual]" : "userset");
          }
        }
      } else if (const auto* c = std::get_if<ComputedRelation>(&node)) {
        enqueue({object, c->relation}, current, describe(node));
      } else {
        const auto& ttu = std::get<TupleToUserset>(node);
        for (const auto& entry : view.lookup(object, ttu.tupleset)) {
          std::optional<ObjectRef> target;
          if (const auto* d = entry.subject->as_direct()) {
            target = ObjectRef::parse(d->id);
          } else {
            target = entry.subject->as_userset()->object;
          }
          if (target) enqueue({std::move(*target), ttu.computed}, current, describe(node));
        }
      }
      if (result.allowed) break;
    }
  }

  if (truncated && !result.allowed) result.depth_reached = request.max_depth;
  return result;
}

namespace {

class Expander {
 public:
  Expander(const Snapshot& snapshot, int max_depth)
      : model_(*snapshot.model), view_(snapshot.index, nullptr), max_depth_(max_depth) {}

  ExpandNode frame(const Frame& f, int depth) {
    ExpandNode node{frame_label(f), {}, {}};
    if (on_path_.contains(f)) {
      node.label += " (cycle)";
      return node;
    }
    if (depth > max_depth_) {
      node.label += " (depth limit)";
      return node;
    }
    const auto* def = model_.find(f.first.type, f.second);
    if (def == nullptr) {
      node.label += " (undefined)";
      return node;
    }
    on_path_.insert(f);
    for (const auto& rw : def->rewrite) node.children.push_back(branch(f, rw, depth));
    on_path_.erase(f);
    return node;
  }

 private:
  ExpandNode branch(const Frame& f, const RewriteNode& rw, int depth) {
    ExpandNode node{describe(rw), {}, {}};
    if (std::holds_alternative<Direct>(rw)) {
      for (const auto& entry : view_.lookup(f.first, f.second)) {
        if (const auto* d = entry.subject->as_direct()) {
          node.subjects.push_back(d->id);
        } else {
          const auto* u = entry.subject->as_userset();
          node.children.push_back(frame({u->object, u->relation}, depth + 1));
        }
      }
    } else if (const auto* c = std::get_if<ComputedRelation>(&rw)) {
      node.children.push_back(frame({f.first, c->relation}, depth + 1));
    } else {
      const auto& ttu = std::get<TupleToUserset>(rw);
      for (const auto& entry : view_.lookup(f.first, ttu.tupleset)) {
        std::optional<ObjectRef> target;
        if (const auto* d = entry.subject->as_direct()) {
          target = ObjectRef::parse(d->id);
        } else {
          target = entry.subject->as_userset()->object;
        }
        if (target) node.children.push_back(frame({std::move(*target), ttu.computed}, depth + 1));
      }
    }
    return node;
  }

  const AuthorizationModel& model_;
  TupleView view_;
  int max_depth_;
  std::set<Frame> on_path_;
};

void collect_into(const ExpandNode& node, std::set<std::string>& out) {
  out.insert(node.subjects.begin(), node.subjects.end());
  for (const auto& child : node.children) collect_into(child, out);
}

}  // namespace

Expected<ExpandNode, EngineError> expand(const Snapshot& snapshot, const ObjectRef& object,
                                         const std::string& relation, int max_depth) {
  auto root_def = resolve_root(snapshot, object, relation);
  if (!root_def) return unexpected(root_def.error());
  Expander expander(snapshot, max_depth);
  return expander.frame({object, relation}, 0);
}

std::set<std::string> collect_subjects(const ExpandNode& root) {
  std::set<std::string> out;
  collect_into(root, out);
  return out;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

Engine::Engine() : current_(std::make_shared<Snapshot>()) {}

Engine::Engine(const std::filesystem::path& data_dir)
    : log_(std::make_unique<ChangeLog>(data_dir / "tuples.log")), current_(std::make_shared<Snapshot>()) {
  replay();
}

Engine::~Engine() = default;

std::shared_ptr<const Snapshot> Engine::snapshot() const {
  std::lock_guard lock(snapshot_mu_);
  return current_;
}

void Engine::publish(std::shared_ptr<const Snapshot> next) {
  std::lock_guard lock(snapshot_mu_);
  current_ = std::move(next);
}

void Engine::replay() {
  log_->replay([this](const json& record) {
    const auto op = record.at("op").get<std::string>();
    if (op == "model") {
      auto model = model_from_json(record.at("model"));
      if (!model) throw std::runtime_error("tuple log: unreadable model record");
      model->model_id = record.at("model_id").get<std::string>();
      apply_model(std::make_shared<const AuthorizationModel>(std::move(*model)),
                  record.at("model_revision").get<std::uint64_t>());
    } else if (op == "tuples") {
      auto adds = tuples_from_json(record.at("writes"));
      auto deletes = tuples_from_json(record.at("deletes"));
      if (!adds || !deletes) throw std::runtime_error("tuple log: unreadable tuple record");
      apply_tuples(*adds, *deletes, record.at("revision").get<std::uint64_t>());
    } else {
      throw std::runtime_error("tuple log: unknown op " + op);
    }
  });
}

void Engine::apply_model(std::shared_ptr<const AuthorizationModel> model, std::uint64_t model_revision) {
  auto next = std::make_shared<Snapshot>(*snapshot());
  next->model = std::move(model);
  next->model_revision = model_revision;
  publish(std::move(next));
}

void Engine::apply_tuples(const std::vector<RelationTuple>& adds, const std::vector<RelationTuple>& deletes,
                          std::uint64_t revision) {
  auto next = std::make_shared<Snapshot>(*snapshot());
  for (const auto& t : deletes) {
    if (next->tuples.erase(t) > 0) index_erase(next->index, t);
  }
  for (const auto& t : adds) {
    if (next->tuples.insert(t).second) index_insert(next->index, t);
  }
  next->revision = revision;
  publish(std::move(next));
}

Expected<std::string, std::vector<ModelViolation>> Engine::write_model(AuthorizationModel model) {
  auto violations = validate_model(model);
  if (!violations.empty()) return unexpected(std::move(violations));

  std::lock_guard lock(write_mu_);
  const auto model_revision = snapshot()->model_revision + 1;
  model.model_id = std::to_string(model_revision);
  if (log_) {
    log_->append(json{{"op", "model"},
                      {"model_id", model.model_id},
                      {"model_revision", model_revision},
                      {"model", model_to_json(model)}});
  }
  auto id = model.model_id;
  apply_model(std::make_shared<const AuthorizationModel>(std::move(model)), model_revision);
  return id;
}

Expected<std::uint64_t, EngineError> Engine::write_tuples(const std::vector<RelationTuple>& adds,
                                                          const std::vector<RelationTuple>& deletes) {
  std::lock_guard lock(write_mu_);
  const auto base = snapshot();
  if (!base->model) return unexpected(EngineError{EngineErrorCode::no_model, "no authorization model loaded"});
  for (const auto& t : adds) {
    if (!t.well_formed()) return unexpected(EngineError{EngineErrorCode::malformed_tuple, "malformed tuple " + t.str()});
    if (!base->model->types.contains(t.object.type)) {
      return unexpected(EngineError{EngineErrorCode::unknown_type, "unknown type " + t.object.type});
    }
    if (!base->model->has_relation(t.object.type, t.relation)) {
      return unexpected(EngineError{EngineErrorCode::unknown_relation,
                                    "unknown relation " + t.relation + " on type " + t.object.type});
    }
  }
  for (const auto& t : deletes) {
    if (!t.well_formed()) return unexpected(EngineError{EngineErrorCode::malformed_tuple, "malformed tuple " + t.str()});
  }

  const auto revision = base->revision + 1;
  if (log_) {
    log_->append(json{{"op", "tuples"},
                      {"revision", revision},
                      {"writes", tuples_to_json(adds)},
                      {"deletes", tuples_to_json(deletes)}});
  }
  apply_tuples(adds, deletes, revision);
  return revision;
}

std::vector<RelationTuple> Engine::read_tuples(const TupleFilter& filter) const {
  const auto snap = snapshot();
  std::vector<RelationTuple> out;
  for (const auto& t : snap->tuples) {
    if (filter.matches(t)) out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(), [](const RelationTuple& a, const RelationTuple& b) {
    return std::tie(a.object, a.relation) < std::tie(b.object, b.relation) ||
           (std::tie(a.object, a.relation) == std::tie(b.object, b.relation) && a.subject.str() < b.subject.str());
  });
  return out;
}

Expected<CheckResult, EngineError> Engine::check(const CheckRequest& request) const {
  const auto snap = snapshot();
  return rebac::check(*snap, request);
}

Expected<ExpandNode, EngineError> Engine::expand(const ObjectRef& object, const std::string& relation,
                                                 int max_depth) const {
  const auto snap = snapshot();
  return rebac::expand(*snap, object, relation, max_depth);
}

}  // namespace edgeiam::rebac
