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

#include "edgeiam/common/change_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace edgeiam {
namespace {

void write_all(int fd, const std::string& data, const std::filesystem::path& path) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("write " + path.string() + ": " + std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

}  // namespace

ChangeLog::ChangeLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  open_for_append();
}

ChangeLog::~ChangeLog() {
  if (fd_ >= 0) ::close(fd_);
}

void ChangeLog::open_for_append() {
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0600);
  if (fd_ < 0) throw std::runtime_error("open " + path_.string() + ": " + std::strerror(errno));
}

void ChangeLog::replay(const std::function<void(const nlohmann::json&)>& visit) const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    ++line_no;
    if (nl == std::string::npos) break;  // torn tail
    const std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(line_no) + ": corrupt record: " + e.what());
    }
    visit(record);
  }
}

void ChangeLog::append(const nlohmann::json& record) {
  write_all(fd_, record.dump() + "\n", path_);
  if (::fsync(fd_) != 0) throw std::runtime_error("fsync " + path_.string() + ": " + std::strerror(errno));
}

void ChangeLog::rewrite(const std::vector<nlohmann::json>& records) {
  auto tmp = path_;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw std::runtime_error("open " + tmp.string() + ": " + std::strerror(errno));
  try {
    std::string data;
    for (const auto& r : records) data += r.dump() + "\n";
    write_all(fd, data, tmp);
    if (::fsync(fd) != 0) throw std::runtime_error("fsync " + tmp.string() + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  std::filesystem::rename(tmp, path_);
  ::close(fd_);
  open_for_append();
}

}  // namespace edgeiam
