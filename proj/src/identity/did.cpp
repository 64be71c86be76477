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

#include "edgeiam/identity/did.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"

namespace edgeiam::identity {

using nlohmann::json;

namespace {

bool is_reg_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_';
}

std::optional<PublicKey> decode_key(std::string_view text) {
  const auto bytes = base64url_decode(text);
  if (!bytes || bytes->size() != 32) return std::nullopt;
  PublicKey key{};
  std::copy(bytes->begin(), bytes->end(), key.begin());
  return key;
}

}  // namespace

std::optional<DidMethod> did_method(std::string_view did) {
  if (did.starts_with(kLkeyPrefix)) {
    if (!decode_key(did.substr(kLkeyPrefix.size()))) return std::nullopt;
    return DidMethod::lkey;
  }
  if (did.starts_with(kRegPrefix)) {
    const auto id = did.substr(kRegPrefix.size());
    if (id.empty() || id.size() > 128 || !std::all_of(id.begin(), id.end(), is_reg_id_char)) return std::nullopt;
    return DidMethod::reg;
  }
  return std::nullopt;
}

std::string did_from_key(const PublicKey& key) { return std::string(kLkeyPrefix) + base64url_encode(key); }

const VerificationMethod* DidDocument::find_method(std::string_view method_id) const {
  for (const auto& vm : verification_methods) {
    if (vm.id == method_id) return &vm;
  }
  return nullptr;
}

bool DidDocument::is_authentication_method(std::string_view method_id) const {
  return std::find(authentication.begin(), authentication.end(), method_id) != authentication.end();
}

std::optional<std::string> validate_did_document(const DidDocument& doc) {
  const auto method = did_method(doc.id);
  if (!method) return "document id '" + doc.id + "' is not a supported DID";
  if (doc.verification_methods.empty()) return std::string("document lists no verification methods");
  if (*method == DidMethod::lkey && doc.verification_methods.size() != 1) {
    return std::string("did:lkey documents carry exactly one verification method");
  }
  std::set<std::string> ids;
  const std::string prefix = doc.id + "#";
  for (const auto& vm : doc.verification_methods) {
    if (!vm.id.starts_with(prefix) || vm.id.size() == prefix.size()) {
      return "verification method id '" + vm.id + "' is not a fragment of " + doc.id;
    }
    if (!ids.insert(vm.id).second) return "duplicate verification method id '" + vm.id + "'";
  }
  for (const auto& ref : doc.authentication) {
    if (!ids.contains(ref)) return "authentication reference '" + ref + "' does not resolve";
  }
  if (*method == DidMethod::lkey) {
    const auto key = decode_key(std::string_view(doc.id).substr(kLkeyPrefix.size()));
    if (!key || doc.verification_methods.front().public_key != *key) {
      return std::string("did:lkey key does not match the identifier");
    }
  }
  return std::nullopt;
}

json did_document_to_json(const DidDocument& doc) {
  json vms = json::array();
  for (const auto& vm : doc.verification_methods) {
    vms.push_back(json{{"id", vm.id}, {"public_key", base64url_encode(vm.public_key)}});
  }
  return json{{"id", doc.id}, {"verification_methods", std::move(vms)}, {"authentication", doc.authentication}};
}

Expected<DidDocument, std::string> did_document_from_json(const json& j) {
  if (!j.is_object() || j.size() != 3 || !j.contains("id") || !j.contains("verification_methods") ||
      !j.contains("authentication")) {
    return unexpected(std::string("DID document requires exactly id, verification_methods, authentication"));
  }
  const auto& id = j["id"];
  const auto& vms = j["verification_methods"];
  const auto& auth = j["authentication"];
  if (!id.is_string() || !vms.is_array() || !auth.is_array()) {
    return unexpected(std::string("DID document fields have wrong types"));
  }
  DidDocument doc;
  doc.id = id.get<std::string>();
  for (const auto& vm : vms) {
    if (!vm.is_object() || vm.size() != 2 || !vm.contains("id") || !vm.contains("public_key") ||
        !vm["id"].is_string() || !vm["public_key"].is_string()) {
      return unexpected(std::string("verification method requires string id and public_key"));
    }
    const auto key = decode_key(vm["public_key"].get<std::string>());
    if (!key) return unexpected(std::string("public_key must be base64url of 32 bytes"));
    doc.verification_methods.push_back({vm["id"].get<std::string>(), *key});
  }
  for (const auto& ref : auth) {
    if (!ref.is_string()) return unexpected(std::string("authentication entries must be strings"));
    doc.authentication.push_back(ref.get<std::string>());
  }
  if (auto problem = validate_did_document(doc)) return unexpected(std::move(*problem));
  return doc;
}

Expected<DidDocument, std::string> lkey_document(std::string_view did) {
  if (did_method(did) != DidMethod::lkey) return unexpected("not a did:lkey identifier: " + std::string(did));
  const auto key = decode_key(did.substr(kLkeyPrefix.size()));
  const std::string vm_id = std::string(did) + std::string(kDefaultKeyFragment);
  return DidDocument{std::string(did), {{vm_id, *key}}, {vm_id}};
}

const char* to_string(ResolveErrorCode code) {
  switch (code) {
    case ResolveErrorCode::unknown_method: return "unknown_method";
    case ResolveErrorCode::not_found: return "not_found";
    case ResolveErrorCode::unavailable: return "unavailable";
    case ResolveErrorCode::malformed: return "malformed";
  }
  return "malformed";
}

Expected<DidDocument, ResolveError> resolve_did(std::string_view did, RegistryClient* registry) {
  const auto method = did_method(did);
  if (!method) return unexpected(ResolveError{ResolveErrorCode::unknown_method, "unsupported DID " + std::string(did)});
  if (*method == DidMethod::lkey) {
    auto doc = lkey_document(did);
    if (!doc) return unexpected(ResolveError{ResolveErrorCode::malformed, doc.error()});
    return std::move(*doc);
  }
  if (registry == nullptr) {
    return unexpected(ResolveError{ResolveErrorCode::unavailable, "no registry configured for " + std::string(did)});
  }
  auto doc = registry->fetch(did);
  if (!doc) return doc;
  if (doc->id != did) {
    return unexpected(ResolveError{ResolveErrorCode::malformed, "registry returned a document for " + doc->id});
  }
  return doc;
}

}  // namespace edgeiam::identity
