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
#include "edgeiam/pep/proxy.hpp"

int main(int argc, char** argv) {
  using namespace edgeiam;
  const auto signals = cli::block_shutdown_signals();

  CLI::App app{"Enforcement proxy: forwards a request only after the authorization service allowed it"};
  std::string listen = "127.0.0.1:8080";
  std::string routes_path;
  std::size_t workers = 512;
  int pdp_timeout_ms = 5000;
  int upstream_timeout_ms = 30000;
  pep::PepConfig config;
  app.add_option("--listen", listen, "host:port to bind")->envname("EDGEIAM_PEP_LISTEN")->capture_default_str();
  app.add_option("--pdp-url", config.pdp_url, "base URL of the authorization service")
      ->envname("EDGEIAM_PDP_URL")
      ->required();
  app.add_option("--routes", routes_path, "JSON route table")->envname("EDGEIAM_PEP_ROUTES")->required();
  app.add_option("--pdp-timeout-ms", pdp_timeout_ms, "decision request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--upstream-timeout-ms", upstream_timeout_ms, "protected resource timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--body-limit", config.body_limit, "largest accepted request body in bytes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--workers", workers, "worker threads")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  auto routes = pep::RouteTable::load(routes_path);
  if (!routes) {
    std::cerr << routes.error() << "\n";
    return 2;
  }
  try {
    config.listen = cli::parse_listen(listen, workers);
    config.routes = std::move(*routes);
    config.pdp_timeout = std::chrono::milliseconds(pdp_timeout_ms);
    config.upstream_timeout = std::chrono::milliseconds(upstream_timeout_ms);
    pep::PepProxy proxy(config);
    proxy.start();
    std::cout << "pep-proxy listening on " << proxy.base_url() << " with " << config.routes.rules().size()
              << " route(s)" << std::endl;
    cli::wait_for_signal(signals);
    proxy.stop();
  } catch (const std::exception& e) {
    std::cerr << "pep-proxy: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
