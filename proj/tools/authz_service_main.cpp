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
#include "edgeiam/authz/service.hpp"

int main(int argc, char** argv) {
  using namespace edgeiam;
  const auto signals = cli::block_shutdown_signals();

  CLI::App app{"Authorization service: model and tuple administration and access decisions"};
  std::string listen = "127.0.0.1:8082";
  std::string data_dir;
  std::size_t workers = 512;
  std::vector<std::string> trusted;
  int pip_timeout_ms = 5000;
  authz::AuthzConfig config;
  app.add_option("--listen", listen, "host:port to bind")->envname("EDGEIAM_AUTHZ_LISTEN")->capture_default_str();
  app.add_option("--data-dir", data_dir, "directory for the model and tuple log (in-memory when omitted)")
      ->envname("EDGEIAM_AUTHZ_DATA_DIR");
  app.add_option("--admin-token", config.admin_token, "bearer token for model and tuple writes")
      ->envname("EDGEIAM_ADMIN_TOKEN")
      ->required();
  app.add_option("--trusted-issuer", trusted, "issuer DID whose credentials are accepted (repeatable)")
      ->envname("EDGEIAM_TRUSTED_ISSUERS")
      ->delimiter(',');
  app.add_option("--idm-url", config.pip.idm_base_url, "base URL of the IdM registry")->envname("EDGEIAM_IDM_URL");
  app.add_option("--freshness-window", config.pip.freshness_window, "accepted presentation age in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--cache", config.pip.cache_enabled, "cache DID documents and status lists");
  app.add_option("--cache-ttl", config.pip.cache_ttl, "cache lifetime in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pip-timeout-ms", pip_timeout_ms, "timeout for registry and status fetches")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--metrics-path", config.metrics_path, "path of the latency metrics endpoint")->capture_default_str();
  app.add_option("--workers", workers, "worker threads")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  try {
    config.listen = cli::parse_listen(listen, workers);
    if (!data_dir.empty()) config.data_dir = data_dir;
    config.pip.trusted_issuers.insert(trusted.begin(), trusted.end());
    config.pip.upstream_timeout = std::chrono::milliseconds(pip_timeout_ms);
    if (config.pip.trusted_issuers.empty()) {
      std::clog << "authz-service: no trusted issuers configured, every presentation will be denied\n";
    }
    authz::AuthzService service(config);
    service.start();
    std::cout << "authz-service listening on " << service.base_url() << std::endl;
    cli::wait_for_signal(signals);
    service.stop();
  } catch (const std::exception& e) {
    std::cerr << "authz-service: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
