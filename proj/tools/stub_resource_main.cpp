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
#include "edgeiam/bench/bench.hpp"

int main(int argc, char** argv) {
  using namespace edgeiam;
  const auto signals = cli::block_shutdown_signals();

  CLI::App app{"Protected resource stand-in: answers every request with a JSON echo after a fixed delay"};
  std::string listen = "127.0.0.1:9000";
  int delay_ms = 0;
  std::size_t workers = 512;
  app.add_option("--listen", listen, "host:port to bind")->capture_default_str();
  app.add_option("--delay-ms", delay_ms, "delay before each response")->check(CLI::NonNegativeNumber);
  app.add_option("--workers", workers, "worker threads")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  try {
    const auto where = cli::parse_listen(listen, workers);
    bench::StubResource stub(std::chrono::milliseconds(delay_ms), where.worker_threads);
    const int port = stub.start(where.host, where.port);
    std::cout << "stub-resource listening on http://" << where.host << ":" << port << std::endl;
    cli::wait_for_signal(signals);
    stub.stop();
    std::cout << "served " << stub.served() << " request(s)\n";
  } catch (const std::exception& e) {
    std::cerr << "stub-resource: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
