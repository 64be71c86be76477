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
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/identity/keys.hpp"

namespace edgeiam::identity {

// Two DID methods coexist:
//   did:lkey:<base64url(ed25519 public key)>  self-certifying, resolved locally
//   did:reg:<id>                              looked up in an IdM registry
inline constexpr std::string_view kLkeyPrefix = "did:lkey:";
inline constexpr std::string_view kRegPrefix = "did:reg:";
inline constexpr std::string_view kDefaultKeyFragment = "#key-1";

enum class DidMethod { lkey, reg };

/// Validates the method-specific grammar; nullopt for anything else.
std::optional<DidMethod> did_method(std::string_view did);

std::string did_from_key(const PublicKey& key);

struct VerificationMethod {
  std::string id;  // absolute: <did>#<fragment>
  PublicKey public_key{};
};

struct DidDocument {
  std::string id;
  std::vector<VerificationMethod> verification_methods;
  std::vector<std::string> authentication;

  const VerificationMethod* find_method(std::string_view method_id) const;
  bool is_authentication_method(std::string_view method_id) const;
};

/// Empty when the document satisfies its invariants.
std::optional<std::string> validate_did_document(const DidDocument& doc);

nlohmann::json did_document_to_json(const DidDocument& doc);
/// Strict: unknown fields, wrong types and invariant violations fail.
Expected<DidDocument, std::string> did_document_from_json(const nlohmann::json& j);

/// Document synthesized from a did:lkey identifier.
Expected<DidDocument, std::string> lkey_document(std::string_view did);

enum class ResolveErrorCode { unknown_method, not_found, unavailable, malformed };

struct ResolveError {
  ResolveErrorCode code;
  std::string message;
};

const char* to_string(ResolveErrorCode code);

/// Source of did:reg documents.
class RegistryClient {
 public:
  virtual ~RegistryClient() = default;
  virtual Expected<DidDocument, ResolveError> fetch(std::string_view did) = 0;
};

/// lkey resolves without any I/O; reg goes to `registry` (unavailable when
/// no registry is configured).
Expected<DidDocument, ResolveError> resolve_did(std::string_view did, RegistryClient* registry);

class DidResolver {
 public:
  virtual ~DidResolver() = default;
  virtual Expected<DidDocument, ResolveError> resolve(std::string_view did) = 0;
};

class StandardResolver final : public DidResolver {
 public:
  explicit StandardResolver(RegistryClient* registry = nullptr) : registry_(registry) {}
  Expected<DidDocument, ResolveError> resolve(std::string_view did) override { return resolve_did(did, registry_); }

 private:
  RegistryClient* registry_;
};

}  // namespace edgeiam::identity
