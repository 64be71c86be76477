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

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "edgeiam/common/expected.hpp"

namespace edgeiam {

/// Nearest-rank percentile: the value at 1-based rank ceil(p/100 * n) of the
/// ascending samples. Requires a non-empty sample set and 0 < p <= 100.
Expected<double, std::string> percentile(std::vector<double> samples, double p);

struct LatencySummary {
  std::size_t count = 0;
  std::optional<double> avg_ms;  // all empty when count == 0
  std::optional<double> max_ms;
  std::optional<double> p90_ms;
  std::optional<double> p95_ms;
};

LatencySummary summarize(std::vector<double> samples_ms);
nlohmann::json summary_to_json(const LatencySummary& summary);

/// Thread-safe accumulator of latency samples since construction.
class LatencyRecorder {
 public:
  void record(double ms);
  LatencySummary summary() const;

 private:
  mutable std::mutex mu_;
  std::vector<double> samples_;
};

}  // namespace edgeiam
