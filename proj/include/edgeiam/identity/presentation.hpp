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
#include "edgeiam/identity/credential.hpp"
#include "edgeiam/identity/replay_cache.hpp"

namespace edgeiam::identity {

inline constexpr std::int64_t kDefaultFreshnessWindow = 120;

/// The request facts a presentation is bound to. Only semantics-bearing
/// fields are bound; hop-by-hop headers may be rewritten by proxies.
struct RequestBinding {
  std::string method;          // uppercase registered method
  std::string target;          // path and query
  std::string host;            // lowercase host[:port]
  std::string content_digest;  // base64url SHA-256 of the body, or "-"

  /// Normalizes case and digests the body (empty body means "-").
  static Expected<RequestBinding, std::string> make(std::string_view method, std::string_view target,
                                                    std::string_view host, std::string_view body);

  std::optional<std::string> validation_error() const;
  auto operator<=>(const RequestBinding&) const = default;
};

nlohmann::json binding_to_json(const RequestBinding& binding);
Expected<RequestBinding, std::string> binding_from_json(const nlohmann::json& j);

std::string body_digest(std::string_view body);

/// base64url(SHA-256(method \n target \n host \n digest \n timestamp \n random)).
Expected<std::string, std::string> compute_nonce(const RequestBinding& binding, std::int64_t timestamp,
                                                 std::string_view random_hex);

struct HolderProof {
  std::string verification_method;
  std::string signature;
};

struct VerifiablePresentation {
  VerifiableCredential credential;
  std::int64_t timestamp = 0;
  std::string random;  // 32 lowercase hex chars (128 bits)
  std::string nonce;
  HolderProof holder_proof;
};

nlohmann::json presentation_to_json(const VerifiablePresentation& vp, bool include_proof = true);
Expected<VerifiablePresentation, std::string> presentation_from_json(const nlohmann::json& j);

/// Value carried in `Authorization: VP <token>`: base64url of the canonical
/// JSON presentation.
std::string encode_presentation_token(const VerifiablePresentation& vp);
Expected<VerifiablePresentation, std::string> decode_presentation_token(std::string_view token);

struct BuildError {
  std::string message;
};

/// Fresh 128-bit random unless `random_hex` is supplied.
Expected<VerifiablePresentation, BuildError> build_vp(const VerifiableCredential& vc, const RequestBinding& binding,
                                                      const KeyPair& holder, DidResolver& resolver,
                                                      std::int64_t now,
                                                      std::optional<std::string> random_hex = std::nullopt);

struct PresentationClaims {
  std::string subject;
  std::string issuer;
  std::vector<std::string> attributes;
  std::string credential_id;
  std::string nonce;
};

/// Full presentation check. Order: credential, freshness, binding, replay,
/// holder key and signature; the first failure is reported. On success the
/// nonce is recorded in `replay_cache`.
Expected<PresentationClaims, VerificationFailure> verify_vp(const VerifiablePresentation& vp,
                                                            const RequestBinding& binding, DidResolver& resolver,
                                                            const std::set<std::string>& trusted_issuers,
                                                            StatusFetcher& status_fetcher, ReplayCache& replay_cache,
                                                            std::int64_t now,
                                                            std::int64_t freshness_window = kDefaultFreshnessWindow);

}  // namespace edgeiam::identity
