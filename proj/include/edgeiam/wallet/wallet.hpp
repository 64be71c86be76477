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
#include <optional>
#include <string>
#include <vector>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/common/http.hpp"
#include "edgeiam/identity/credential.hpp"
#include "edgeiam/identity/keys.hpp"
#include "edgeiam/identity/presentation.hpp"

namespace edgeiam::wallet {

// Directory layout (all files 0600, directories 0700):
//   keypair.json             {"seed": "<hex>"}
//   wallet.json              {"did": "did:lkey:..."}
//   credentials/<hash>.json  one VC each, named by SHA-256 of its id
//   last_presentation.json   {"token", "method", "url"} of the latest present
struct WalletError {
  std::string message;
};

class Wallet {
 public:
  /// Fails if a wallet already exists in `dir` unless `force` is set.
  static Expected<Wallet, WalletError> create(const std::filesystem::path& dir,
                                              std::optional<identity::Seed> seed = std::nullopt, bool force = false);
  static Expected<Wallet, WalletError> open(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& did() const { return did_; }
  const identity::KeyPair& keys() const { return keys_; }
  std::string verification_method() const;

  Expected<std::monostate, WalletError> store_credential(const identity::VerifiableCredential& vc) const;
  std::vector<identity::VerifiableCredential> credentials() const;
  std::optional<identity::VerifiableCredential> credential(std::string_view id) const;

 private:
  Wallet(std::filesystem::path dir, identity::KeyPair keys);

  std::filesystem::path dir_;
  identity::KeyPair keys_;
  std::string did_;
};

struct VcRequest {
  std::string idm_url;
  std::string token;
  std::vector<std::string> attributes;
  std::int64_t ttl_seconds = 0;
};

enum class ErrorKind { local, transport, rejected };

struct OperationError {
  ErrorKind kind;
  std::string message;
  int http_status = 0;
};

/// Asks the IdM for a credential and stores it only after checking the
/// signature against the issuer's key, the subject, the attributes and the
/// validity interval.
Expected<identity::VerifiableCredential, OperationError> request_vc(const Wallet& wallet, const VcRequest& request,
                                                                    HttpClientPool& pool, std::int64_t now);

struct PresentOptions {
  std::string credential_id{};
  std::string method = "GET";
  std::string url{};
  std::string body{};
  bool reuse_nonce = false;    // resend the previous token verbatim
  std::int64_t backdate = 0;   // seconds subtracted from the VP timestamp
};

/// Token for one request. A fresh 128-bit random (and so a fresh nonce)
/// on every call.
Expected<std::string, OperationError> presentation_token(const Wallet& wallet,
                                                         const identity::VerifiableCredential& vc,
                                                         std::string_view method, const Url& url,
                                                         std::string_view body, std::int64_t timestamp);

/// Sends `method url` with `Authorization: VP <token>` and the Host header
/// the token is bound to.
Expected<HttpResponse, OperationError> send_with_token(HttpClientPool& pool, std::string_view method, const Url& url,
                                                       const std::string& body, const std::string& token);

/// The `wallet present` operation. Records the token it sent.
Expected<HttpResponse, OperationError> present(const Wallet& wallet, const PresentOptions& options,
                                               HttpClientPool& pool, std::int64_t now);

/// 0 for 2xx, 3 for denials and other 4xx, 4 for transport failures and
/// 5xx, 5 for local errors.
int exit_code(const Expected<HttpResponse, OperationError>& outcome);

}  // namespace edgeiam::wallet
