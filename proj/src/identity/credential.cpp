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

#include "edgeiam/identity/credential.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/canonical.hpp"

namespace edgeiam::identity {

using nlohmann::json;

namespace {

bool has_exact_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object() || j.size() != keys.size()) return false;
  return std::all_of(keys.begin(), keys.end(), [&](const char* k) { return j.contains(k); });
}

std::optional<Signature> decode_signature(std::string_view text) {
  const auto bytes = base64url_decode(text);
  if (!bytes || bytes->size() != 64) return std::nullopt;
  Signature sig{};
  std::copy(bytes->begin(), bytes->end(), sig.begin());
  return sig;
}

std::string signing_input(const VerifiableCredential& vc) {
  // The unsigned view holds only strings and integers, so this cannot fail.
  return canonical_bytes(credential_to_json(vc, false)).value();
}

}  // namespace

json credential_to_json(const VerifiableCredential& vc, bool include_proof) {
  json j{{"id", vc.id},
         {"issuer", vc.issuer},
         {"subject", vc.subject},
         {"attributes", vc.attributes},
         {"issued_at", vc.issued_at},
         {"expires_at", vc.expires_at},
         {"status", {{"status_url", vc.status.status_url}, {"index", vc.status.index}}}};
  if (include_proof) {
    j["proof"] = json{{"verification_method", vc.proof.verification_method},
                      {"created", vc.proof.created},
                      {"signature", vc.proof.signature}};
  }
  return j;
}

Expected<VerifiableCredential, std::string> credential_from_json(const json& j) {
  if (!has_exact_keys(j, {"id", "issuer", "subject", "attributes", "issued_at", "expires_at", "status", "proof"})) {
    return unexpected(std::string("credential does not match the schema"));
  }
  const auto& status = j["status"];
  const auto& proof = j["proof"];
  if (!j["id"].is_string() || !j["issuer"].is_string() || !j["subject"].is_string() || !j["attributes"].is_array() ||
      !j["issued_at"].is_number_integer() || !j["expires_at"].is_number_integer() ||
      !has_exact_keys(status, {"status_url", "index"}) || !status["status_url"].is_string() ||
      !status["index"].is_number_unsigned() || !has_exact_keys(proof, {"verification_method", "created", "signature"}) ||
      !proof["verification_method"].is_string() || !proof["created"].is_number_integer() ||
      !proof["signature"].is_string()) {
    return unexpected(std::string("credential fields have wrong types"));
  }
  VerifiableCredential vc;
  vc.id = j["id"].get<std::string>();
  vc.issuer = j["issuer"].get<std::string>();
  vc.subject = j["subject"].get<std::string>();
  for (const auto& a : j["attributes"]) {
    if (!a.is_string()) return unexpected(std::string("attributes must be strings"));
    vc.attributes.push_back(a.get<std::string>());
  }
  vc.issued_at = j["issued_at"].get<std::int64_t>();
  vc.expires_at = j["expires_at"].get<std::int64_t>();
  vc.status = {status["status_url"].get<std::string>(), status["index"].get<std::uint64_t>()};
  vc.proof = {proof["verification_method"].get<std::string>(), proof["created"].get<std::int64_t>(),
              proof["signature"].get<std::string>()};
  return vc;
}

std::optional<std::string> sanitize_attribute(std::string_view raw) {
  auto begin = raw.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return std::nullopt;
  auto end = raw.find_last_not_of(" \t\r\n");
  std::string out = to_lower_ascii(raw.substr(begin, end - begin + 1));
  std::replace(out.begin(), out.end(), '-', '_');
  if (!is_identifier(out)) return std::nullopt;
  return out;
}

std::optional<std::string> credential_shape_error(const VerifiableCredential& vc) {
  if (vc.id.empty()) return std::string("credential id is empty");
  if (!did_method(vc.issuer)) return "issuer '" + vc.issuer + "' is not a supported DID";
  if (!did_method(vc.subject)) return "subject '" + vc.subject + "' is not a supported DID";
  if (vc.expires_at <= vc.issued_at) return std::string("expires_at must be after issued_at");
  std::set<std::string> seen;
  for (const auto& a : vc.attributes) {
    if (!is_identifier(a)) return "attribute '" + a + "' is not a valid tag";
    if (!seen.insert(a).second) return "duplicate attribute '" + a + "'";
  }
  if (vc.status.status_url.empty()) return std::string("status_url is empty");
  if (!vc.proof.verification_method.starts_with(vc.issuer + "#")) {
    return std::string("proof verification method does not belong to the issuer");
  }
  // The proof is outside the signed bytes; tie its timestamp to a signed field.
  if (vc.proof.created != vc.issued_at) return std::string("proof created must equal issued_at");
  return std::nullopt;
}

Expected<VerifiableCredential, IssueError> issue_credential(const UnsignedCredential& fields,
                                                            const KeyPair& issuer_keypair,
                                                            const std::string& issuer_did,
                                                            std::optional<std::string> verification_method) {
  VerifiableCredential vc;
  vc.id = fields.id;
  vc.issuer = issuer_did;
  vc.subject = fields.subject;
  vc.attributes = fields.attributes;
  vc.issued_at = fields.issued_at;
  vc.expires_at = fields.expires_at;
  vc.status = fields.status;
  vc.proof.verification_method = verification_method.value_or(issuer_did + std::string(kDefaultKeyFragment));
  vc.proof.created = fields.issued_at;
  if (auto problem = credential_shape_error(vc)) return unexpected(IssueError{std::move(*problem)});
  vc.proof.signature = base64url_encode(issuer_keypair.sign(signing_input(vc)));
  return vc;
}

bool credential_signature_valid(const VerifiableCredential& vc, const DidDocument& issuer_document) {
  if (issuer_document.id != vc.issuer) return false;
  const auto* vm = issuer_document.find_method(vc.proof.verification_method);
  if (vm == nullptr) return false;
  const auto sig = decode_signature(vc.proof.signature);
  if (!sig) return false;
  return verify_signature(vm->public_key, signing_input(vc), *sig);
}

Expected<VerifiedCredential, VerificationFailure> verify_credential(const VerifiableCredential& vc,
                                                                    DidResolver& resolver,
                                                                    const std::set<std::string>& trusted_issuers,
                                                                    StatusFetcher& status_fetcher,
                                                                    std::int64_t now) {
  if (auto problem = credential_shape_error(vc)) {
    return unexpected(VerificationFailure{ReasonCode::malformed, *problem});
  }
  if (!trusted_issuers.contains(vc.issuer)) {
    return unexpected(VerificationFailure{ReasonCode::untrusted_issuer, vc.issuer + " is not a trusted issuer"});
  }

  auto issuer_doc = resolver.resolve(vc.issuer);
  if (!issuer_doc) {
    const auto& err = issuer_doc.error();
    const auto code =
        err.code == ResolveErrorCode::unavailable ? ReasonCode::upstream_unavailable : ReasonCode::bad_signature;
    return unexpected(VerificationFailure{code, "issuer resolution failed: " + err.message});
  }
  if (!credential_signature_valid(vc, *issuer_doc)) {
    return unexpected(VerificationFailure{ReasonCode::bad_signature, "credential signature does not verify"});
  }

  if (now < vc.issued_at || now >= vc.expires_at) {
    return unexpected(VerificationFailure{ReasonCode::expired, "outside validity interval [issued_at, expires_at)"});
  }

  auto list = status_fetcher.fetch(vc.status.status_url);
  if (!list) return unexpected(VerificationFailure{ReasonCode::status_unavailable, list.error().message});
  auto revoked = list->is_revoked(vc.status.index);
  if (!revoked) return unexpected(VerificationFailure{ReasonCode::malformed, revoked.error()});
  if (*revoked) return unexpected(VerificationFailure{ReasonCode::revoked, "credential " + vc.id + " is revoked"});

  return VerifiedCredential{vc.id, vc.subject, vc.issuer, vc.attributes};
}

}  // namespace edgeiam::identity
