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

#include "edgeiam/wallet/wallet.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "edgeiam/common/crypto.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/identity/did.hpp"
#include "edgeiam/identity/http_sources.hpp"

namespace edgeiam::wallet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kKeyFile = "keypair.json";
constexpr const char* kWalletFile = "wallet.json";
constexpr const char* kLastPresentation = "last_presentation.json";
constexpr const char* kCredentialDir = "credentials";

WalletError io_error(const std::string& what) { return WalletError{what}; }

void ensure_private_dir(const fs::path& dir) {
  fs::create_directories(dir);
  fs::permissions(dir, fs::perms::owner_all, fs::perm_options::replace);
}

// Written to a temp file first so a crash never leaves a half-written file.
void write_private_file(const fs::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw std::runtime_error("cannot write " + tmp);
  ::fchmod(fd, 0600);
  std::size_t done = 0;
  while (done < content.size()) {
    const auto n = ::write(fd, content.data() + done, content.size() - done);
    if (n < 0) {
      ::close(fd);
      throw std::runtime_error("write failed for " + tmp);
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  fs::rename(tmp, path);
}

std::optional<json> read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string credential_file(const std::string& id) { return hex_encode(sha256(id)) + ".json"; }

}  // namespace

Wallet::Wallet(fs::path dir, identity::KeyPair keys)
    : dir_(std::move(dir)), keys_(keys), did_(identity::did_from_key(keys_.public_key())) {}

std::string Wallet::verification_method() const { return did_ + std::string(identity::kDefaultKeyFragment); }

Expected<Wallet, WalletError> Wallet::create(const fs::path& dir, std::optional<identity::Seed> seed, bool force) {
  if (fs::exists(dir / kKeyFile) && !force) {
    return unexpected(io_error("a wallet already exists in " + dir.string() + " (use --force to replace it)"));
  }
  auto keys = seed ? identity::generate_keypair(std::span<const std::uint8_t>(*seed)) : identity::generate_keypair();
  if (!keys) return unexpected(io_error(keys.error().message));
  try {
    ensure_private_dir(dir);
    ensure_private_dir(dir / kCredentialDir);
    Wallet w(dir, *keys);
    write_private_file(dir / kKeyFile, json{{"seed", hex_encode(keys->seed())}}.dump());
    write_private_file(dir / kWalletFile, json{{"did", w.did_}}.dump());
    return w;
  } catch (const std::exception& e) {
    return unexpected(io_error(e.what()));
  }
}

Expected<Wallet, WalletError> Wallet::open(const fs::path& dir) {
  auto key_doc = read_json(dir / kKeyFile);
  if (!key_doc || !key_doc->is_object() || !key_doc->contains("seed") || !(*key_doc)["seed"].is_string()) {
    return unexpected(io_error("no wallet in " + dir.string() + " (run keygen first)"));
  }
  auto keys = identity::keypair_from_hex((*key_doc)["seed"].get<std::string>());
  if (!keys) return unexpected(io_error("corrupt keypair: " + keys.error().message));
  Wallet w(dir, *keys);
  auto meta = read_json(dir / kWalletFile);
  if (!meta || meta->value("did", "") != w.did_) {
    return unexpected(io_error("wallet.json does not match the stored key"));
  }
  return w;
}

Expected<std::monostate, WalletError> Wallet::store_credential(const identity::VerifiableCredential& vc) const {
  try {
    ensure_private_dir(dir_ / kCredentialDir);
    write_private_file(dir_ / kCredentialDir / credential_file(vc.id), identity::credential_to_json(vc).dump(2));
    return std::monostate{};
  } catch (const std::exception& e) {
    return unexpected(io_error(e.what()));
  }
}

std::vector<identity::VerifiableCredential> Wallet::credentials() const {
  std::vector<identity::VerifiableCredential> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir_ / kCredentialDir, ec)) {
    if (entry.path().extension() != ".json") continue;
    auto j = read_json(entry.path());
    if (!j) continue;
    if (auto vc = identity::credential_from_json(*j)) out.push_back(std::move(*vc));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.issued_at < b.issued_at; });
  return out;
}

std::optional<identity::VerifiableCredential> Wallet::credential(std::string_view id) const {
  auto j = read_json(dir_ / kCredentialDir / credential_file(std::string(id)));
  if (!j) return std::nullopt;
  auto vc = identity::credential_from_json(*j);
  if (!vc || vc->id != id) return std::nullopt;
  return std::move(*vc);
}

Expected<identity::VerifiableCredential, OperationError> request_vc(const Wallet& wallet, const VcRequest& request,
                                                                    HttpClientPool& pool, std::int64_t now) {
  auto base = parse_url(request.idm_url);
  if (!base) return unexpected(OperationError{ErrorKind::local, "invalid IdM URL " + request.idm_url});
  Url url = *base;
  url.target = base->join_target("/v1/credentials");
  const json body{{"subject_did", wallet.did()}, {"attributes", request.attributes}, {"ttl_seconds", request.ttl_seconds}};
  auto res = pool.post_json(url, body.dump(), {{"Authorization", "Bearer " + request.token}});
  if (!res) return unexpected(OperationError{ErrorKind::transport, res.error().message});
  if (res->status != 201) {
    std::string message = "IdM answered HTTP " + std::to_string(res->status);
    try {
      message += ": " + json::parse(res->body).value("error", "");
    } catch (const json::exception&) {
    }
    return unexpected(OperationError{ErrorKind::rejected, message, res->status});
  }

  Expected<identity::VerifiableCredential, std::string> vc = unexpected(std::string("unparsed"));
  try {
    vc = identity::credential_from_json(json::parse(res->body));
  } catch (const json::exception& e) {
    vc = unexpected(std::string(e.what()));
  }
  auto refuse = [](const std::string& why) {
    return unexpected(OperationError{ErrorKind::local, "credential rejected, nothing stored: " + why});
  };
  if (!vc) return refuse(vc.error());
  if (auto shape = identity::credential_shape_error(*vc)) return refuse(*shape);

  auto pool_ptr = std::shared_ptr<HttpClientPool>(&pool, [](HttpClientPool*) {});
  identity::HttpRegistryClient registry(*base, pool_ptr);
  identity::StandardResolver resolver(&registry);
  auto issuer_doc = resolver.resolve(vc->issuer);
  if (!issuer_doc) return refuse("cannot resolve issuer " + vc->issuer + ": " + issuer_doc.error().message);
  if (!identity::credential_signature_valid(*vc, *issuer_doc)) return refuse("issuer signature does not verify");
  if (vc->subject != wallet.did()) return refuse("credential subject is not this wallet");
  std::set<std::string> wanted;
  for (const auto& a : request.attributes) {
    if (auto clean = identity::sanitize_attribute(a)) wanted.insert(*clean);
  }
  if (std::set<std::string>(vc->attributes.begin(), vc->attributes.end()) != wanted) {
    return refuse("attributes differ from the request");
  }
  if (now < vc->issued_at || now >= vc->expires_at) return refuse("credential is not currently valid");
  if (auto stored = wallet.store_credential(*vc); !stored) {
    return unexpected(OperationError{ErrorKind::local, stored.error().message});
  }
  return std::move(*vc);
}

Expected<std::string, OperationError> presentation_token(const Wallet& wallet,
                                                         const identity::VerifiableCredential& vc,
                                                         std::string_view method, const Url& url,
                                                         std::string_view body, std::int64_t timestamp) {
  auto binding = identity::RequestBinding::make(method, url.target, url.host_header(), body);
  if (!binding) return unexpected(OperationError{ErrorKind::local, binding.error()});
  identity::StandardResolver resolver;
  auto vp = identity::build_vp(vc, *binding, wallet.keys(), resolver, timestamp);
  if (!vp) return unexpected(OperationError{ErrorKind::local, vp.error().message});
  return identity::encode_presentation_token(*vp);
}

Expected<HttpResponse, OperationError> send_with_token(HttpClientPool& pool, std::string_view method, const Url& url,
                                                       const std::string& body, const std::string& token) {
  HttpRequest req{to_upper_ascii(method), url.target,
                  {{"Host", url.host_header()}, {"Authorization", "VP " + token}}, body};
  auto res = pool.send(url, req);
  if (!res) return unexpected(OperationError{ErrorKind::transport, res.error().message});
  return std::move(*res);
}

Expected<HttpResponse, OperationError> present(const Wallet& wallet, const PresentOptions& options,
                                               HttpClientPool& pool, std::int64_t now) {
  auto url = parse_url(options.url);
  if (!url) return unexpected(OperationError{ErrorKind::local, "invalid URL " + options.url});
  auto vc = wallet.credential(options.credential_id);
  if (!vc) return unexpected(OperationError{ErrorKind::local, "no credential " + options.credential_id});
  if (now >= vc->expires_at) std::cerr << "warning: credential " << vc->id << " has expired\n";

  std::string token;
  if (options.reuse_nonce) {
    auto last = read_json(wallet.dir() / kLastPresentation);
    if (!last || !last->contains("token") || !(*last)["token"].is_string()) {
      return unexpected(OperationError{ErrorKind::local, "no previous presentation to reuse"});
    }
    token = (*last)["token"].get<std::string>();
  } else {
    auto fresh = presentation_token(wallet, *vc, options.method, *url, options.body, now - options.backdate);
    if (!fresh) return unexpected(fresh.error());
    token = std::move(*fresh);
  }
  try {
    write_private_file(wallet.dir() / kLastPresentation,
                       json{{"token", token}, {"method", to_upper_ascii(options.method)}, {"url", options.url}}.dump());
  } catch (const std::exception& e) {
    return unexpected(OperationError{ErrorKind::local, e.what()});
  }
  return send_with_token(pool, options.method, *url, options.body, token);
}

int exit_code(const Expected<HttpResponse, OperationError>& outcome) {
  if (!outcome) {
    switch (outcome.error().kind) {
      case ErrorKind::transport:
        return 4;
      case ErrorKind::rejected:
        return outcome.error().http_status >= 500 ? 4 : 3;
      case ErrorKind::local:
        return 5;
    }
  }
  const int status = outcome->status;
  if (status >= 200 && status < 300) return 0;
  if (status >= 500) return 4;
  return 3;
}

}  // namespace edgeiam::wallet
