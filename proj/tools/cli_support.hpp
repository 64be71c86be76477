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

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "edgeiam/common/server.hpp"

namespace edgeiam::cli {

inline constexpr int kLocalError = 5;

/// "host:port" or ":port".
inline ListenOptions parse_listen(const std::string& text, std::size_t worker_threads) {
  ListenOptions out;
  out.worker_threads = worker_threads;
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("listen address must be host:port, got " + text);
  if (colon > 0) out.host = text.substr(0, colon);
  try {
    std::size_t used = 0;
    out.port = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1 || out.port < 0 || out.port > 65535) throw std::out_of_range("port");
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid port in listen address " + text);
  }
  return out;
}

/// Blocks SIGINT and SIGTERM in every thread started afterwards. Call first
/// thing in main, then `wait_for_signal` once the servers run.
inline sigset_t block_shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

inline void wait_for_signal(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
  std::clog << "received signal " << sig << ", shutting down\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace edgeiam::cli
