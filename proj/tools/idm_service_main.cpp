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

#include <iostream>

#include "cli_support.hpp"
#include "edgeiam/idm/service.hpp"

int main(int argc, char** argv) {
  using namespace edgeiam;
  const auto signals = cli::block_shutdown_signals();

  CLI::App app{"Identity management service: DID registry, credential issuance and revocation status"};
  std::string listen = "127.0.0.1:8081";
  std::string data_dir;
  std::size_t workers = 512;
  idm::IdmConfig config;
  app.add_option("--listen", listen, "host:port to bind")->envname("EDGEIAM_IDM_LISTEN")->capture_default_str();
  app.add_option("--data-dir", data_dir, "directory for the change log (in-memory when omitted)")
      ->envname("EDGEIAM_IDM_DATA_DIR");
  app.add_option("--admin-token", config.admin_token, "bearer token for enrollment and issuance")
      ->envname("EDGEIAM_ADMIN_TOKEN")
      ->required();
  app.add_option("--issuer-seed", config.issuer_seed_hex, "hex Ed25519 seed of the issuer key")
      ->envname("EDGEIAM_ISSUER_SEED")
      ->required();
  app.add_option("--public-url", config.public_base_url, "base URL verifiers use to reach this service")
      ->envname("EDGEIAM_IDM_PUBLIC_URL");
  app.add_option("--workers", workers, "worker threads")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  try {
    config.listen = cli::parse_listen(listen, workers);
    if (!data_dir.empty()) config.data_dir = data_dir;
    idm::IdmService service(config);
    service.start();
    std::cout << "idm-service listening on " << service.base_url() << "\n"
              << "issuer " << service.idm().issuer_did() << std::endl;
    cli::wait_for_signal(signals);
    service.stop();
  } catch (const std::exception& e) {
    std::cerr << "idm-service: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
