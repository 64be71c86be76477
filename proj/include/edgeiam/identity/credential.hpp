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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/identity/did.hpp"
#include "edgeiam/identity/keys.hpp"
#include "edgeiam/identity/reason.hpp"
#include "edgeiam/identity/status_list.hpp"

namespace edgeiam::identity {

struct CredentialStatus {
  std::string status_url;
  std::uint64_t index = 0;
};

struct CredentialProof {
  std::string verification_method;
  std::int64_t created = 0;
  std::string signature;  // base64url Ed25519
};

/// Issuer-signed attribute credential. The signature covers the canonical
/// JSON of every field except `proof`.
struct VerifiableCredential {
  std::string id;
  std::string issuer;
  std::string subject;
  std::vector<std::string> attributes;
  std::int64_t issued_at = 0;
  std::int64_t expires_at = 0;
  CredentialStatus status;
  CredentialProof proof;
};

nlohmann::json credential_to_json(const VerifiableCredential& vc, bool include_proof = true);
/// Strict schema: every field required, no extra fields.
Expected<VerifiableCredential, std::string> credential_from_json(const nlohmann::json& j);

/// Trims ASCII whitespace, lowercases and maps '-' to '_'; the result must
/// then be an identifier. Anything else (spaces, punctuation) is rejected.
std::optional<std::string> sanitize_attribute(std::string_view raw);

/// Structural invariants (identifier attributes, uniqueness, validity
/// interval, DID grammar). Empty when well-formed.
std::optional<std::string> credential_shape_error(const VerifiableCredential& vc);

struct UnsignedCredential {
  std::string id;
  std::string subject;
  std::vector<std::string> attributes;
  std::int64_t issued_at = 0;
  std::int64_t expires_at = 0;
  CredentialStatus status;
};

struct IssueError {
  std::string message;
};

/// `verification_method` defaults to `<issuer_did>#key-1`.
Expected<VerifiableCredential, IssueError> issue_credential(const UnsignedCredential& fields,
                                                            const KeyPair& issuer_keypair,
                                                            const std::string& issuer_did,
                                                            std::optional<std::string> verification_method = {});

/// Checks only that the proof verifies under the given document.
bool credential_signature_valid(const VerifiableCredential& vc, const DidDocument& issuer_document);

struct StatusFetchError {
  std::string message;
};

class StatusFetcher {
 public:
  virtual ~StatusFetcher() = default;
  virtual Expected<StatusList, StatusFetchError> fetch(const std::string& status_url) = 0;
};

struct VerifiedCredential {
  std::string credential_id;
  std::string subject;
  std::string issuer;
  std::vector<std::string> attributes;
};

/// Succeeds iff the issuer is trusted, the signature verifies under the
/// issuer's resolved key, `now` lies in [issued_at, expires_at) and the
/// status bit is clear. Checks run in that order; the first failure wins.
Expected<VerifiedCredential, VerificationFailure> verify_credential(const VerifiableCredential& vc,
                                                                    DidResolver& resolver,
                                                                    const std::set<std::string>& trusted_issuers,
                                                                    StatusFetcher& status_fetcher,
                                                                    std::int64_t now);

}  // namespace edgeiam::identity
