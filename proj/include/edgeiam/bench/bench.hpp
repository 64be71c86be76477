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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgeiam/common/expected.hpp"
#include "edgeiam/common/server.hpp"
#include "edgeiam/common/stats.hpp"

namespace edgeiam::bench {

struct BenchPlan {
  std::vector<int> vu_levels{50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  int cycle_seconds = 30;
  int cooldown_seconds = 30;
  std::string target_url;
  std::string method = "GET";
  std::string body;
  std::filesystem::path wallet_dir;
  std::string credential_id;  // newest stored credential when empty
  std::filesystem::path output_dir = ".";
};

/// Levels strictly increasing and positive; durations positive.
std::optional<std::string> plan_error(const BenchPlan& plan);

struct CycleReport {
  int vu_count = 0;
  std::size_t requests = 0;  // completed exchanges, failed ones included
  std::optional<double> avg_ms;
  std::optional<double> max_ms;
  std::optional<double> p90_ms;
  std::optional<double> p95_ms;
  double rps = 0;  // requests / cycle_seconds
  std::size_t error_count = 0;
  std::map<std::string, std::size_t> error_reasons;
  bool aborted = false;  // target unreachable; later cycles were skipped
};

/// p90 <= p95 <= max, rps = requests / cycle_seconds, null latencies exactly
/// when there were no requests. Empty when the report is consistent.
std::optional<std::string> report_error(const CycleReport& report, double cycle_seconds);

/// One request of a VU. Returns nullopt on success or an error reason.
/// The reason "transport" marks an unreachable target.
using Request = std::function<std::optional<std::string>()>;

/// Runs `vus` workers for `duration`. Each worker issues its requests
/// strictly one after another and records wall-clock latency per request
/// into its own buffer; buffers are merged after the cycle.
CycleReport run_cycle(int vus, std::chrono::milliseconds duration, const std::function<Request(int vu)>& make_worker);

/// Full plan against a deployed stack through the wallet in
/// `plan.wallet_dir`. Each request carries a freshly built presentation;
/// building it is part of the measured latency. Writes bench.csv and
/// bench.json into `plan.output_dir`.
Expected<std::vector<CycleReport>, std::string> run(const BenchPlan& plan,
                                                    const std::function<void(const CycleReport&)>& on_cycle = {});

nlohmann::json report_to_json(const CycleReport& report);
std::string reports_to_csv(const std::vector<CycleReport>& reports);
void write_reports(const std::vector<CycleReport>& reports, const BenchPlan& plan);

/// Minimal protected resource: answers every request with 200 and a JSON
/// echo of method, path and the X-Subject-Did header after `delay`.
class StubResource {
 public:
  StubResource(std::chrono::milliseconds delay, std::size_t worker_threads = 512);
  int start(const std::string& host, int port);
  void stop();
  void wait();
  std::size_t served() const;

 private:
  std::chrono::milliseconds delay_;
  std::atomic<std::size_t> served_{0};
  ServerRunner runner_;
};

}  // namespace edgeiam::bench
