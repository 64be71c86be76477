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

#include "edgeiam/identity/presentation.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "edgeiam/common/crypto.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/canonical.hpp"

namespace edgeiam::identity {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 9> kMethods{"GET",     "HEAD",    "POST",  "PUT",  "DELETE",
                                                   "CONNECT", "OPTIONS", "TRACE", "PATCH"};

bool has_exact_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object() || j.size() != keys.size()) return false;
  return std::all_of(keys.begin(), keys.end(), [&](const char* k) { return j.contains(k); });
}

bool printable_no_space(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c > 0x20 && c < 0x7F; });
}

bool is_digest(std::string_view s) {
  if (s == "-") return true;
  const auto bytes = base64url_decode(s);
  return bytes && bytes->size() == 32;
}

std::string holder_signing_input(const VerifiablePresentation& vp) {
  return canonical_bytes(presentation_to_json(vp, false)).value();
}

std::optional<Signature> decode_signature(std::string_view text) {
  const auto bytes = base64url_decode(text);
  if (!bytes || bytes->size() != 64) return std::nullopt;
  Signature sig{};
  std::copy(bytes->begin(), bytes->end(), sig.begin());
  return sig;
}

}  // namespace

std::string body_digest(std::string_view body) {
  if (body.empty()) return "-";
  return base64url_encode(sha256(body));
}

Expected<RequestBinding, std::string> RequestBinding::make(std::string_view method, std::string_view target,
                                                           std::string_view host, std::string_view body) {
  RequestBinding b{to_upper_ascii(method), std::string(target), to_lower_ascii(host), body_digest(body)};
  if (auto problem = b.validation_error()) return unexpected(std::move(*problem));
  return b;
}

std::optional<std::string> RequestBinding::validation_error() const {
  if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end()) {
    return "unsupported HTTP method '" + method + "'";
  }
  if (target.empty() || target.front() != '/' || !printable_no_space(target)) {
    return "target must be a path starting with '/'";
  }
  if (host.empty() || !printable_no_space(host) || to_lower_ascii(host) != host) {
    return "host must be a non-empty lowercase host[:port]";
  }
  if (!is_digest(content_digest)) return std::string("content_digest must be \"-\" or base64url SHA-256");
  return std::nullopt;
}

json binding_to_json(const RequestBinding& b) {
  return json{{"method", b.method}, {"target", b.target}, {"host", b.host}, {"content_digest", b.content_digest}};
}

Expected<RequestBinding, std::string> binding_from_json(const json& j) {
  if (!has_exact_keys(j, {"method", "target", "host", "content_digest"}) || !j["method"].is_string() ||
      !j["target"].is_string() || !j["host"].is_string() || !j["content_digest"].is_string()) {
    return unexpected(std::string("binding requires string method, target, host, content_digest"));
  }
  RequestBinding b{j["method"].get<std::string>(), j["target"].get<std::string>(), j["host"].get<std::string>(),
                   j["content_digest"].get<std::string>()};
  if (auto problem = b.validation_error()) return unexpected(std::move(*problem));
  return b;
}

Expected<std::string, std::string> compute_nonce(const RequestBinding& binding, std::int64_t timestamp,
                                                 std::string_view random_hex) {
  if (random_hex.size() != 32 || !is_lower_hex(random_hex)) {
    return unexpected(std::string("random must be 32 lowercase hex characters"));
  }
  std::string input;
  input.reserve(256);
  input.append(binding.method).push_back('\n');
  input.append(binding.target).push_back('\n');
  input.append(binding.host).push_back('\n');
  input.append(binding.content_digest).push_back('\n');
  input.append(std::to_string(timestamp)).push_back('\n');
  input.append(random_hex);
  return base64url_encode(sha256(input));
}

json presentation_to_json(const VerifiablePresentation& vp, bool include_proof) {
  json j{{"credential", credential_to_json(vp.credential)},
         {"timestamp", vp.timestamp},
         {"random", vp.random},
         {"nonce", vp.nonce}};
  if (include_proof) {
    j["holder_proof"] =
        json{{"verification_method", vp.holder_proof.verification_method}, {"signature", vp.holder_proof.signature}};
  }
  return j;
}

Expected<VerifiablePresentation, std::string> presentation_from_json(const json& j) {
  if (!has_exact_keys(j, {"credential", "timestamp", "random", "nonce", "holder_proof"})) {
    return unexpected(std::string("presentation does not match the schema"));
  }
  const auto& proof = j["holder_proof"];
  if (!j["timestamp"].is_number_integer() || !j["random"].is_string() || !j["nonce"].is_string() ||
      !has_exact_keys(proof, {"verification_method", "signature"}) || !proof["verification_method"].is_string() ||
      !proof["signature"].is_string()) {
    return unexpected(std::string("presentation fields have wrong types"));
  }
  auto vc = credential_from_json(j["credential"]);
  if (!vc) return unexpected(vc.error());
  VerifiablePresentation vp;
  vp.credential = std::move(*vc);
  vp.timestamp = j["timestamp"].get<std::int64_t>();
  vp.random = j["random"].get<std::string>();
  vp.nonce = j["nonce"].get<std::string>();
  vp.holder_proof = {proof["verification_method"].get<std::string>(), proof["signature"].get<std::string>()};
  return vp;
}

std::string encode_presentation_token(const VerifiablePresentation& vp) {
  return base64url_encode(canonical_bytes(presentation_to_json(vp)).value());
}

Expected<VerifiablePresentation, std::string> decode_presentation_token(std::string_view token) {
  const auto bytes = base64url_decode(token);
  if (!bytes) return unexpected(std::string("token is not base64url"));
  json j;
  try {
    j = json::parse(bytes->begin(), bytes->end());
  } catch (const json::exception&) {
    return unexpected(std::string("token is not JSON"));
  }
  return presentation_from_json(j);
}

Expected<VerifiablePresentation, BuildError> build_vp(const VerifiableCredential& vc, const RequestBinding& binding,
                                                      const KeyPair& holder, DidResolver& resolver, std::int64_t now,
                                                      std::optional<std::string> random_hex) {
  auto doc = resolver.resolve(vc.subject);
  if (!doc) return unexpected(BuildError{"cannot resolve credential subject: " + doc.error().message});
  const VerificationMethod* method = nullptr;
  for (const auto& vm : doc->verification_methods) {
    if (vm.public_key == holder.public_key() && doc->is_authentication_method(vm.id)) {
      method = &vm;
      break;
    }
  }
  if (method == nullptr) return unexpected(BuildError{"holder key does not belong to " + vc.subject});

  VerifiablePresentation vp;
  vp.credential = vc;
  vp.timestamp = now;
  vp.random = random_hex ? *random_hex : hex_encode(random_bytes(16));
  auto nonce = compute_nonce(binding, now, vp.random);
  if (!nonce) return unexpected(BuildError{nonce.error()});
  vp.nonce = std::move(*nonce);
  vp.holder_proof.verification_method = method->id;
  vp.holder_proof.signature = base64url_encode(holder.sign(holder_signing_input(vp)));
  return vp;
}

Expected<PresentationClaims, VerificationFailure> verify_vp(const VerifiablePresentation& vp,
                                                            const RequestBinding& binding, DidResolver& resolver,
                                                            const std::set<std::string>& trusted_issuers,
                                                            StatusFetcher& status_fetcher, ReplayCache& replay_cache,
                                                            std::int64_t now, std::int64_t freshness_window) {
  if (vp.random.size() != 32 || !is_lower_hex(vp.random) || vp.nonce.empty()) {
    return unexpected(VerificationFailure{ReasonCode::malformed, "presentation random/nonce malformed"});
  }
  if (auto problem = binding.validation_error()) {
    return unexpected(VerificationFailure{ReasonCode::malformed, *problem});
  }

  auto verified = verify_credential(vp.credential, resolver, trusted_issuers, status_fetcher, now);
  if (!verified) return unexpected(verified.error());

  if (std::llabs(now - vp.timestamp) > freshness_window) {
    return unexpected(VerificationFailure{ReasonCode::stale, "presentation timestamp outside freshness window"});
  }

  const auto expected_nonce = compute_nonce(binding, vp.timestamp, vp.random);
  if (!expected_nonce || *expected_nonce != vp.nonce) {
    return unexpected(VerificationFailure{ReasonCode::binding_mismatch, "nonce does not match this request"});
  }

  if (replay_cache.contains(vp.nonce, now)) {
    return unexpected(VerificationFailure{ReasonCode::replayed, "nonce already used"});
  }

  auto holder_doc = resolver.resolve(vp.credential.subject);
  if (!holder_doc) {
    const auto code = holder_doc.error().code == ResolveErrorCode::unavailable ? ReasonCode::upstream_unavailable
                                                                               : ReasonCode::holder_key_mismatch;
    return unexpected(VerificationFailure{code, "holder resolution failed: " + holder_doc.error().message});
  }
  const auto* method = holder_doc->find_method(vp.holder_proof.verification_method);
  if (method == nullptr || !holder_doc->is_authentication_method(method->id)) {
    return unexpected(VerificationFailure{ReasonCode::holder_key_mismatch, "holder proof key is not the subject's"});
  }
  const auto sig = decode_signature(vp.holder_proof.signature);
  if (!sig || !verify_signature(method->public_key, holder_signing_input(vp), *sig)) {
    return unexpected(VerificationFailure{ReasonCode::holder_signature_invalid, "holder signature does not verify"});
  }

  if (!replay_cache.insert_if_absent(vp.nonce, now)) {
    return unexpected(VerificationFailure{ReasonCode::replayed, "nonce already used"});
  }
  return PresentationClaims{verified->subject, verified->issuer, verified->attributes, verified->credential_id,
                            vp.nonce};
}

}  // namespace edgeiam::identity
