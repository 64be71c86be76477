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

#include "edgeiam/idm/idm.hpp"

#include <stdexcept>

#include "edgeiam/common/crypto.hpp"
#include "edgeiam/identity/canonical.hpp"
#include "edgeiam/identity/did.hpp"

namespace edgeiam::idm {

using nlohmann::json;

namespace {

IdmError bad_request(std::string message) { return {IdmErrorCode::bad_request, std::move(message)}; }

// Relative "#frag" references become "<did>#frag".
void absolutize(json& value, const std::string& did) {
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s.starts_with('#')) value = did + s;
  }
}

}  // namespace

Idm::Idm(identity::KeyPair issuer_key, std::optional<std::filesystem::path> data_dir)
    : key_(issuer_key),
      issuer_did_(identity::did_from_key(key_.public_key())),
      status_(identity::StatusList::create(kStatusListId, kInitialStatusListSize)) {
  if (data_dir) {
    log_ = std::make_unique<ChangeLog>(*data_dir / "idm.log");
    replay();
  }
}

Idm::~Idm() = default;

void Idm::replay() {
  log_->replay([this](const json& record) { apply(record); });
}

void Idm::commit(const json& record) {
  if (log_) log_->append(record);
  apply(record);
}

// Single place where journal records turn into state, shared by live writes
// and replay so both paths produce identical state.
void Idm::apply(const json& record) {
  const auto op = record.at("op").get<std::string>();
  if (op == "did") {
    EnrollmentRecord e{record.at("did").get<std::string>(), record.at("document").get<std::string>(),
                       record.at("enrolled_at").get<std::int64_t>()};
    registry_.insert_or_assign(e.did, std::move(e));
  } else if (op == "issue") {
    auto vc = identity::credential_from_json(record.at("credential"));
    if (!vc) throw std::runtime_error("idm log: unreadable credential: " + vc.error());
    const auto index = vc->status.index;
    while (index >= status_.size) status_ = identity::grow_status_list(std::move(status_), status_.size * 2);
    next_index_ = std::max(next_index_, index + 1);
    IssuedCredentialRecord rec{vc->id, vc->subject, index, false, *vc};
    issued_.insert_or_assign(vc->id, std::move(rec));
  } else if (op == "revoke") {
    auto it = issued_.find(record.at("credential_id").get<std::string>());
    if (it == issued_.end()) throw std::runtime_error("idm log: revoke of unknown credential");
    status_ = identity::revoke_index(std::move(status_), it->second.status_index).value();
    it->second.revoked = true;
    status_revision_ = record.at("revision").get<std::uint64_t>();
  } else {
    throw std::runtime_error("idm log: unknown op " + op);
  }
}

Expected<Registration, IdmError> Idm::register_did(const json& document, std::int64_t now) {
  if (!document.is_object()) return unexpected(bad_request("did_document must be an object"));
  json doc = document;
  std::string did;
  if (auto it = doc.find("id"); it == doc.end() || (it->is_string() && it->get<std::string>().empty())) {
    did = std::string(identity::kRegPrefix) + random_uuid();
  } else if (it->is_string()) {
    did = it->get<std::string>();
  } else {
    return unexpected(bad_request("id must be a string"));
  }
  if (identity::did_method(did) != identity::DidMethod::reg) {
    return unexpected(bad_request("only did:reg identifiers can be registered"));
  }
  doc["id"] = did;
  if (auto it = doc.find("verification_methods"); it != doc.end() && it->is_array()) {
    for (auto& vm : *it) {
      if (vm.is_object() && vm.contains("id")) absolutize(vm["id"], did);
    }
  }
  if (!doc.contains("authentication")) doc["authentication"] = json::array();
  if (auto it = doc.find("authentication"); it->is_array()) {
    for (auto& ref : *it) absolutize(ref, did);
  }
  auto parsed = identity::did_document_from_json(doc);
  if (!parsed) return unexpected(bad_request(parsed.error()));
  const auto bytes = identity::canonical_bytes(identity::did_document_to_json(*parsed)).value();

  std::lock_guard lock(mu_);
  if (auto it = registry_.find(did); it != registry_.end()) {
    if (it->second.document == bytes) return Registration{did, false};
    return unexpected(IdmError{IdmErrorCode::conflict, did + " is registered with a different document"});
  }
  commit(json{{"op", "did"}, {"did", did}, {"document", bytes}, {"enrolled_at", now}});
  return Registration{did, true};
}

std::optional<std::string> Idm::document(std::string_view did) const {
  std::lock_guard lock(mu_);
  auto it = registry_.find(did);
  if (it == registry_.end()) return std::nullopt;
  return it->second.document;
}

Expected<identity::VerifiableCredential, IdmError> Idm::issue(const std::string& subject_did,
                                                              const std::vector<std::string>& raw_attributes,
                                                              std::int64_t ttl_seconds, std::int64_t now,
                                                              const std::string& status_url) {
  const auto method = identity::did_method(subject_did);
  if (!method) return unexpected(bad_request("subject_did is not a supported DID"));
  if (ttl_seconds <= 0) return unexpected(bad_request("ttl_seconds must be positive"));
  if (raw_attributes.empty()) return unexpected(bad_request("attributes must not be empty"));
  std::vector<std::string> attributes;
  for (const auto& raw : raw_attributes) {
    auto clean = identity::sanitize_attribute(raw);
    if (!clean) return unexpected(bad_request("attribute '" + raw + "' is not a valid relation name"));
    attributes.push_back(std::move(*clean));
  }

  std::lock_guard lock(mu_);
  if (*method == identity::DidMethod::reg && !registry_.contains(subject_did)) {
    return unexpected(IdmError{IdmErrorCode::not_found, subject_did + " is not registered"});
  }
  identity::UnsignedCredential fields{"urn:uuid:" + random_uuid(), subject_did, std::move(attributes), now,
                                      now + ttl_seconds, {status_url, next_index_}};
  auto vc = identity::issue_credential(fields, key_, issuer_did_);
  if (!vc) return unexpected(bad_request(vc.error().message));
  commit(json{{"op", "issue"}, {"credential", identity::credential_to_json(*vc)}});
  return std::move(*vc);
}

std::optional<IdmError> Idm::revoke(const std::string& credential_id) {
  std::lock_guard lock(mu_);
  auto it = issued_.find(credential_id);
  if (it == issued_.end()) return IdmError{IdmErrorCode::not_found, "unknown credential " + credential_id};
  if (it->second.revoked) return std::nullopt;
  commit(json{{"op", "revoke"}, {"credential_id", credential_id}, {"revision", status_revision_ + 1}});
  return std::nullopt;
}

std::optional<json> Idm::status_list_json(std::string_view list_id) const {
  std::lock_guard lock(mu_);
  if (list_id != status_.id) return std::nullopt;
  return identity::status_list_to_json(status_, status_revision_);
}

std::vector<IssuedCredentialRecord> Idm::credentials() const {
  std::lock_guard lock(mu_);
  std::vector<IssuedCredentialRecord> out;
  for (const auto& [_, rec] : issued_) out.push_back(rec);
  return out;
}

std::vector<EnrollmentRecord> Idm::enrollments() const {
  std::lock_guard lock(mu_);
  std::vector<EnrollmentRecord> out;
  for (const auto& [_, rec] : registry_) out.push_back(rec);
  return out;
}

}  // namespace edgeiam::idm
