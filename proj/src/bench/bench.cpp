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

#include "edgeiam/bench/bench.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "edgeiam/common/clock.hpp"
#include "edgeiam/common/http.hpp"
#include "edgeiam/wallet/wallet.hpp"

namespace edgeiam::bench {

using nlohmann::json;

std::optional<std::string> plan_error(const BenchPlan& plan) {
  if (plan.vu_levels.empty()) return "vu_levels must not be empty";
  for (std::size_t i = 0; i < plan.vu_levels.size(); ++i) {
    if (plan.vu_levels[i] <= 0) return "vu_levels must be positive";
    if (i > 0 && plan.vu_levels[i] <= plan.vu_levels[i - 1]) return "vu_levels must be strictly increasing";
  }
  if (plan.cycle_seconds <= 0) return "cycle_seconds must be positive";
  if (plan.cooldown_seconds < 0) return "cooldown_seconds must not be negative";
  return std::nullopt;
}

std::optional<std::string> report_error(const CycleReport& r, double cycle_seconds) {
  const bool empty = r.requests == 0;
  if (empty != !r.avg_ms.has_value() || empty != !r.max_ms.has_value() || empty != !r.p90_ms.has_value() ||
      empty != !r.p95_ms.has_value()) {
    return "latency fields must be null exactly when there were no requests";
  }
  if (!empty && !(*r.p90_ms <= *r.p95_ms && *r.p95_ms <= *r.max_ms)) return "expected p90 <= p95 <= max";
  if (!empty && *r.avg_ms > *r.max_ms) return "average exceeds maximum";
  if (std::abs(r.rps - static_cast<double>(r.requests) / cycle_seconds) > 1e-9) return "rps != requests / cycle";
  if (r.error_count > r.requests) return "more errors than requests";
  std::size_t reasons = 0;
  for (const auto& [_, n] : r.error_reasons) reasons += n;
  if (reasons != r.error_count) return "error reasons do not add up to error_count";
  return std::nullopt;
}

CycleReport run_cycle(int vus, std::chrono::milliseconds duration, const std::function<Request(int vu)>& make_worker) {
  struct Buffer {
    std::vector<double> latencies;
    std::map<std::string, std::size_t> errors;
  };
  std::vector<Buffer> buffers(static_cast<std::size_t>(vus));
  std::vector<Request> workers;
  workers.reserve(buffers.size());
  for (int i = 0; i < vus; ++i) workers.push_back(make_worker(i));

  const auto deadline = std::chrono::steady_clock::now() + duration;
  std::vector<std::thread> threads;
  threads.reserve(buffers.size());
  for (std::size_t i = 0; i < buffers.size(); ++i) {
    threads.emplace_back([&, i] {
      auto& buf = buffers[i];
      while (std::chrono::steady_clock::now() < deadline) {
        const auto started = std::chrono::steady_clock::now();
        const auto error = workers[i]();
        buf.latencies.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count());
        if (error) ++buf.errors[*error];
      }
    });
  }
  for (auto& t : threads) t.join();

  CycleReport report;
  report.vu_count = vus;
  std::vector<double> all;
  for (auto& buf : buffers) {
    all.insert(all.end(), buf.latencies.begin(), buf.latencies.end());
    for (const auto& [reason, n] : buf.errors) {
      report.error_reasons[reason] += n;
      report.error_count += n;
    }
  }
  const auto summary = summarize(std::move(all));
  report.requests = summary.count;
  report.avg_ms = summary.avg_ms;
  report.max_ms = summary.max_ms;
  report.p90_ms = summary.p90_ms;
  report.p95_ms = summary.p95_ms;
  const double seconds = std::chrono::duration<double>(duration).count();
  report.rps = seconds > 0 ? static_cast<double>(report.requests) / seconds : 0;
  const auto transport = report.error_reasons.find("transport");
  report.aborted = transport != report.error_reasons.end() && transport->second == report.requests;
  return report;
}

namespace {

std::optional<std::string> classify(const Expected<HttpResponse, wallet::OperationError>& res) {
  if (!res) return res.error().kind == wallet::ErrorKind::transport ? "transport" : "local";
  if (res->status >= 200 && res->status < 300) return std::nullopt;
  try {
    const auto j = json::parse(res->body);
    if (j.contains("reason_code") && j["reason_code"].is_string()) return j["reason_code"].get<std::string>();
    if (j.contains("reason") && j["reason"].is_string()) return j["reason"].get<std::string>();
  } catch (const json::exception&) {
  }
  return "http_" + std::to_string(res->status);
}

}  // namespace

Expected<std::vector<CycleReport>, std::string> run(const BenchPlan& plan,
                                                    const std::function<void(const CycleReport&)>& on_cycle) {
  if (auto err = plan_error(plan)) return unexpected(*err);
  auto url = parse_url(plan.target_url);
  if (!url) return unexpected("invalid target URL " + plan.target_url);
  auto w = wallet::Wallet::open(plan.wallet_dir);
  if (!w) return unexpected(w.error().message);
  std::optional<identity::VerifiableCredential> vc;
  if (plan.credential_id.empty()) {
    auto all = w->credentials();
    if (!all.empty()) vc = all.back();
  } else {
    vc = w->credential(plan.credential_id);
  }
  if (!vc) return unexpected(std::string("wallet holds no usable credential"));

  HttpClientPool pool(std::chrono::seconds(30));
  std::vector<CycleReport> reports;
  for (std::size_t level = 0; level < plan.vu_levels.size(); ++level) {
    auto report = run_cycle(plan.vu_levels[level], std::chrono::seconds(plan.cycle_seconds), [&](int) -> Request {
      return [&]() -> std::optional<std::string> {
        auto token = wallet::presentation_token(*w, *vc, plan.method, *url, plan.body, unix_now());
        if (!token) return "local";
        return classify(wallet::send_with_token(pool, plan.method, *url, plan.body, *token));
      };
    });
    reports.push_back(report);
    if (on_cycle) on_cycle(report);
    if (report.aborted) break;
    if (level + 1 < plan.vu_levels.size()) std::this_thread::sleep_for(std::chrono::seconds(plan.cooldown_seconds));
  }
  write_reports(reports, plan);
  return reports;
}

json report_to_json(const CycleReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"vu", r.vu_count},         {"requests", r.requests},     {"avg_ms", opt(r.avg_ms)},
          {"max_ms", opt(r.max_ms)},  {"p90_ms", opt(r.p90_ms)},    {"p95_ms", opt(r.p95_ms)},
          {"rps", r.rps},             {"errors", r.error_count},    {"error_reasons", r.error_reasons},
          {"aborted", r.aborted}};
}

std::string reports_to_csv(const std::vector<CycleReport>& reports) {
  std::ostringstream out;
  out << "vu,requests,avg_ms,max_ms,p90_ms,p95_ms,rps,errors\n";
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << std::fixed << std::setprecision(3) << *v;
  };
  for (const auto& r : reports) {
    out << r.vu_count << ',' << r.requests << ',';
    cell(r.avg_ms);
    out << ',';
    cell(r.max_ms);
    out << ',';
    cell(r.p90_ms);
    out << ',';
    cell(r.p95_ms);
    out << ',' << std::fixed << std::setprecision(3) << r.rps << ',' << r.error_count << '\n';
  }
  return out.str();
}

void write_reports(const std::vector<CycleReport>& reports, const BenchPlan& plan) {
  std::filesystem::create_directories(plan.output_dir);
  std::ofstream(plan.output_dir / "bench.csv") << reports_to_csv(reports);
  json cycles = json::array();
  for (const auto& r : reports) cycles.push_back(report_to_json(r));
  const json doc{{"plan",
                  {{"vu_levels", plan.vu_levels},
                   {"cycle_seconds", plan.cycle_seconds},
                   {"cooldown_seconds", plan.cooldown_seconds},
                   {"target_url", plan.target_url},
                   {"method", plan.method}}},
                 {"partial", !reports.empty() && reports.back().aborted},
                 {"cycles", std::move(cycles)}};
  std::ofstream(plan.output_dir / "bench.json") << doc.dump(2) << '\n';
}

StubResource::StubResource(std::chrono::milliseconds delay, std::size_t worker_threads)
    : delay_(delay), runner_(worker_threads) {
  auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
    ++served_;
    res.set_content(json{{"method", req.method},
                         {"path", req.path},
                         {"subject", req.get_header_value("X-Subject-Did")},
                         {"body_bytes", req.body.size()}}
                        .dump(),
                    "application/json");
  };
  auto& srv = runner_.server();
  srv.Get(".*", handle);
  srv.Post(".*", handle);
  srv.Put(".*", handle);
  srv.Delete(".*", handle);
  srv.Patch(".*", handle);
}

int StubResource::start(const std::string& host, int port) { return runner_.start(host, port); }
void StubResource::stop() { runner_.stop(); }
void StubResource::wait() { runner_.wait(); }
std::size_t StubResource::served() const { return served_.load(); }

}  // namespace edgeiam::bench
