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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgeiam/common/change_log.hpp"
#include "edgeiam/common/expected.hpp"
#include "edgeiam/identity/credential.hpp"
#include "edgeiam/identity/keys.hpp"
#include "edgeiam/identity/status_list.hpp"

namespace edgeiam::idm {

inline constexpr std::uint64_t kInitialStatusListSize = 4096;
inline constexpr const char* kStatusListId = "1";

enum class IdmErrorCode { bad_request, not_found, conflict };

struct IdmError {
  IdmErrorCode code;
  std::string message;
};

struct EnrollmentRecord {
  std::string did;
  std::string document;  // canonical JSON, served verbatim
  std::int64_t enrolled_at = 0;
};

struct IssuedCredentialRecord {
  std::string credential_id;
  std::string subject;
  std::uint64_t status_index = 0;
  bool revoked = false;
  identity::VerifiableCredential credential;
};

struct Registration {
  std::string did;
  bool created = false;  // false when an identical document was already registered
};

/// Registry and issuer state of one organization. All mutations are
/// journaled before they become visible; with a data directory the journal
/// is replayed on construction.
class Idm {
 public:
  Idm(identity::KeyPair issuer_key, std::optional<std::filesystem::path> data_dir);
  ~Idm();

  const std::string& issuer_did() const { return issuer_did_; }

  /// `document` may leave `id` empty (a fresh did:reg id is assigned) and may
  /// use relative `#fragment` method ids.
  Expected<Registration, IdmError> register_did(const nlohmann::json& document, std::int64_t now);
  std::optional<std::string> document(std::string_view did) const;

  /// `status_url` is the absolute URL of this issuer's status list as the
  /// verifiers will reach it.
  Expected<identity::VerifiableCredential, IdmError> issue(const std::string& subject_did,
                                                           const std::vector<std::string>& raw_attributes,
                                                           std::int64_t ttl_seconds, std::int64_t now,
                                                           const std::string& status_url);
  /// Idempotent. Only a state change advances the status list revision.
  std::optional<IdmError> revoke(const std::string& credential_id);

  std::optional<nlohmann::json> status_list_json(std::string_view list_id) const;
  std::vector<IssuedCredentialRecord> credentials() const;
  std::vector<EnrollmentRecord> enrollments() const;

 private:
  void replay();
  void apply(const nlohmann::json& record);
  void commit(const nlohmann::json& record);

  identity::KeyPair key_;
  std::string issuer_did_;
  std::unique_ptr<ChangeLog> log_;

  mutable std::mutex mu_;
  std::map<std::string, EnrollmentRecord, std::less<>> registry_;
  std::map<std::string, IssuedCredentialRecord, std::less<>> issued_;
  identity::StatusList status_;
  std::uint64_t next_index_ = 0;
  std::uint64_t status_revision_ = 0;
};

}  // namespace edgeiam::idm
