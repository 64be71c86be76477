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

#include "edgeiam/common/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace edgeiam {

Expected<double, std::string> percentile(std::vector<double> samples, double p) {
  if (samples.empty()) return unexpected(std::string("percentile of an empty sample set"));
  if (!(p > 0.0 && p <= 100.0)) return unexpected(std::string("percentile rank must be in (0, 100]"));
  std::sort(samples.begin(), samples.end());
  // The epsilon keeps exact products (90% of 100) from rounding up a rank.
  const auto n = static_cast<double>(samples.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, samples.size());
  return samples[rank - 1];
}

LatencySummary summarize(std::vector<double> samples_ms) {
  LatencySummary out;
  out.count = samples_ms.size();
  if (samples_ms.empty()) return out;
  std::sort(samples_ms.begin(), samples_ms.end());
  out.avg_ms = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / static_cast<double>(out.count);
  out.max_ms = samples_ms.back();
  out.p90_ms = percentile(samples_ms, 90).value();
  out.p95_ms = percentile(samples_ms, 95).value();
  return out;
}

nlohmann::json summary_to_json(const LatencySummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"count", s.count}, {"avg_ms", opt(s.avg_ms)}, {"max_ms", opt(s.max_ms)},
          {"p90_ms", opt(s.p90_ms)}, {"p95_ms", opt(s.p95_ms)}};
}

void LatencyRecorder::record(double ms) {
  std::lock_guard lock(mu_);
  samples_.push_back(ms);
}

LatencySummary LatencyRecorder::summary() const {
  std::vector<double> copy;
  {
    std::lock_guard lock(mu_);
    copy = samples_;
  }
  return summarize(std::move(copy));
}

}  // namespace edgeiam
