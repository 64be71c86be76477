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

#include <cstddef>
#include <memory>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace edgeiam {

struct ListenOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  std::size_t worker_threads = 512;  // one per concurrent keep-alive connection
};

/// Owns an httplib::Server and its accept thread. Services register their
/// routes on `server()` and then call `start`.
class ServerRunner {
 public:
  explicit ServerRunner(std::size_t worker_threads);
  ~ServerRunner();

  ServerRunner(const ServerRunner&) = delete;
  ServerRunner& operator=(const ServerRunner&) = delete;

  httplib::Server& server() { return *server_; }

  /// Binds and starts serving in the background; returns the bound port.
  /// Throws std::runtime_error if the address cannot be bound.
  int start(const std::string& host, int port);
  void stop();

  /// Blocks until `stop` is called from another thread or a signal.
  void wait();

  int port() const { return port_; }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace edgeiam
