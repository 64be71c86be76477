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

#include <CLI11.hpp>

#include <ctime>
#include <iostream>

#include <nlohmann/json.hpp>

#include "cli_support.hpp"
#include "edgeiam/common/clock.hpp"
#include "edgeiam/common/encoding.hpp"
#include "edgeiam/wallet/wallet.hpp"

namespace {

using namespace edgeiam;

std::string utc(std::int64_t t) {
  const std::time_t tt = static_cast<std::time_t>(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int fail(const wallet::OperationError& e) {
  std::cerr << "error: " << e.message << "\n";
  return wallet::exit_code(unexpected(e));
}

Expected<wallet::Wallet, wallet::OperationError> open_wallet(const std::string& dir) {
  auto w = wallet::Wallet::open(dir);
  if (!w) return unexpected(wallet::OperationError{wallet::ErrorKind::local, w.error().message});
  return std::move(*w);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holder wallet: keys, credentials and request-bound presentations"};
  app.require_subcommand(1);
  std::string dir = "wallet";
  app.add_option("--dir", dir, "wallet directory")->envname("EDGEIAM_WALLET_DIR")->capture_default_str();

  auto* keygen = app.add_subcommand("keygen", "create a key pair and print the holder DID");
  std::string seed_hex;
  bool force = false;
  keygen->add_option("--seed", seed_hex, "hex Ed25519 seed (random when omitted)");
  keygen->add_flag("--force", force, "replace an existing wallet");

  auto* request = app.add_subcommand("request-vc", "request a credential from an IdM and store it");
  wallet::VcRequest vc_request;
  request->add_option("--idm", vc_request.idm_url, "IdM base URL")->envname("EDGEIAM_IDM_URL")->required();
  request->add_option("--token", vc_request.token, "IdM bearer token")->envname("EDGEIAM_ADMIN_TOKEN")->required();
  request->add_option("--attrs", vc_request.attributes, "comma-separated attributes")->delimiter(',')->required();
  request->add_option("--ttl", vc_request.ttl_seconds, "validity in seconds")->check(CLI::PositiveNumber)->required();

  auto* present = app.add_subcommand("present", "send a request carrying a fresh presentation");
  wallet::PresentOptions opts;
  std::string body_file;
  present->add_option("--vc", opts.credential_id, "credential id")->required();
  present->add_option("--method", opts.method, "HTTP method")->capture_default_str();
  present->add_option("--url", opts.url, "absolute URL behind the enforcement proxy")->required();
  present->add_option("--body", body_file, "file whose bytes form the request body");
  present->add_flag("--reuse-nonce", opts.reuse_nonce)->group("");
  present->add_option("--backdate", opts.backdate)->group("");

  auto* show = app.add_subcommand("show", "list the holder DID and stored credentials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  if (keygen->parsed()) {
    std::optional<identity::Seed> seed;
    if (!seed_hex.empty()) {
      auto bytes = hex_decode(seed_hex);
      if (!bytes || bytes->size() != 32) {
        std::cerr << "error: --seed must be 64 hex characters\n";
        return cli::kLocalError;
      }
      seed.emplace();
      std::copy(bytes->begin(), bytes->end(), seed->begin());
    }
    auto w = wallet::Wallet::create(dir, seed, force);
    if (!w) {
      std::cerr << "error: " << w.error().message << "\n";
      return cli::kLocalError;
    }
    std::cout << w->did() << "\n";
    return 0;
  }

  auto w = open_wallet(dir);
  if (!w) return fail(w.error());

  if (request->parsed()) {
    HttpClientPool pool(std::chrono::seconds(30));
    auto vc = wallet::request_vc(*w, vc_request, pool, unix_now());
    if (!vc) return fail(vc.error());
    std::cout << vc->id << "\n";
    return 0;
  }

  if (present->parsed()) {
    if (!body_file.empty()) {
      try {
        opts.body = cli::read_file(body_file);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kLocalError;
      }
    }
    HttpClientPool pool(std::chrono::seconds(30));
    auto res = wallet::present(*w, opts, pool, unix_now());
    if (!res) return fail(res.error());
    std::cout << "HTTP " << res->status << "\n" << res->body;
    if (!res->body.empty() && res->body.back() != '\n') std::cout << "\n";
    if (res->status >= 300) {
      try {
        const auto j = nlohmann::json::parse(res->body);
        if (j.contains("reason_code")) std::cerr << "reason_code: " << j["reason_code"].get<std::string>() << "\n";
      } catch (const std::exception&) {
      }
    }
    return wallet::exit_code(res);
  }

  if (show->parsed()) {
    const auto now = unix_now();
    std::cout << "did " << w->did() << "\n";
    for (const auto& vc : w->credentials()) {
      std::string attrs;
      for (const auto& a : vc.attributes) attrs += (attrs.empty() ? "" : ",") + a;
      std::cout << vc.id << "  issuer=" << vc.issuer << "  attributes=" << attrs << "  expires=" << utc(vc.expires_at)
                << (now >= vc.expires_at ? "  EXPIRED" : "") << "\n";
    }
  }
  return 0;
}
