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

#include <iomanip>
#include <iostream>

#include "cli_support.hpp"
#include "edgeiam/bench/bench.hpp"

int main(int argc, char** argv) {
  using namespace edgeiam;
  CLI::App app{"Virtual-user load generator against a deployed stack"};
  bench::BenchPlan plan;
  std::string body_file;
  std::string wallet_dir = "wallet";
  std::string output_dir = ".";
  app.add_option("--target", plan.target_url, "URL behind the enforcement proxy")->required();
  app.add_option("--method", plan.method, "HTTP method")->capture_default_str();
  app.add_option("--body", body_file, "file whose bytes form each request body");
  app.add_option("--wallet", wallet_dir, "wallet directory")->envname("EDGEIAM_WALLET_DIR")->capture_default_str();
  app.add_option("--vc", plan.credential_id, "credential id (newest stored credential when omitted)");
  app.add_option("--levels", plan.vu_levels, "comma-separated VU counts")->delimiter(',')->capture_default_str();
  app.add_option("--cycle-seconds", plan.cycle_seconds, "length of each cycle")->capture_default_str();
  app.add_option("--cooldown-seconds", plan.cooldown_seconds, "idle time between cycles")->capture_default_str();
  app.add_option("--out", output_dir, "directory for bench.csv and bench.json")->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kLocalError;
  }

  plan.wallet_dir = wallet_dir;
  plan.output_dir = output_dir;
  try {
    if (!body_file.empty()) plan.body = cli::read_file(body_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kLocalError;
  }

  std::cout << std::fixed << std::setprecision(2);
  auto reports = bench::run(plan, [](const bench::CycleReport& r) {
    std::cout << "vu=" << r.vu_count << " requests=" << r.requests << " rps=" << r.rps;
    if (r.avg_ms) std::cout << " avg=" << *r.avg_ms << " p90=" << *r.p90_ms << " p95=" << *r.p95_ms << " max=" << *r.max_ms;
    std::cout << " errors=" << r.error_count;
    for (const auto& [reason, n] : r.error_reasons) std::cout << " " << reason << ":" << n;
    std::cout << (r.aborted ? " ABORTED (target unreachable)" : "") << std::endl;
  });
  if (!reports) {
    std::cerr << "error: " << reports.error() << "\n";
    return cli::kLocalError;
  }
  std::cout << "wrote " << (plan.output_dir / "bench.csv").string() << " and " << (plan.output_dir / "bench.json").string()
            << "\n";
  return !reports->empty() && reports->back().aborted ? 4 : 0;
}
