// Copyright 2026 The tenantconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tenantconf/storage.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/file.h>
#include <unistd.h>

#include <atomic>
#include <charconv>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "tenantconf/errors.hpp"

namespace tenantconf::storage {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kTempMarker = ".tmp-";

std::atomic<FaultHook> g_fault_hook{nullptr};

void fire(WritePhase phase, const fs::path& target) {
  if (FaultHook hook = g_fault_hook.load()) hook(phase, target);
}

[[noreturn]] void fail(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::kStorage, what + " " + path.string() + ": " + std::strerror(errno));
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }

 private:
  int fd_;
};

void write_all(int fd, std::string_view bytes, const fs::path& path) {
  while (!bytes.empty()) {
    ssize_t n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("write", path);
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string temp_suffix() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << kTempMarker << ::getpid() << '-' << std::hex << rng();
  return out.str();
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("open", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail("read", path);
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path dir = path.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kStorage, "create " + dir.string() + ": " + ec.message());

  fs::path temp = path;
  temp += temp_suffix();
  {
    Fd fd(::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0640));
    if (fd.get() < 0) fail("create", temp);
    std::size_t half = bytes.size() / 2;
    write_all(fd.get(), bytes.substr(0, half), temp);
    fire(WritePhase::kTempPartial, path);
    write_all(fd.get(), bytes.substr(half), temp);
    if (::fsync(fd.get()) != 0) fail("fsync", temp);
    if (::close(fd.release()) != 0) fail("close", temp);
  }
  fire(WritePhase::kTempComplete, path);
  if (::rename(temp.c_str(), path.c_str()) != 0) {
    int saved = errno;
    ::unlink(temp.c_str());
    errno = saved;
    fail("rename", path);
  }
  Fd dir_fd(::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC));
  if (dir_fd.get() >= 0) ::fsync(dir_fd.get());
  fire(WritePhase::kRenamed, path);
}

void remove_stale_temporaries(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return;
  for (auto it = fs::recursive_directory_iterator(dir, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    const std::string name = it->path().filename().string();
    const auto at = name.find(kTempMarker);
    if (at == std::string::npos) continue;
    // "<file>.tmp-<pid>-<hex>": another live process may still be writing.
    pid_t writer = 0;
    const char* digits = name.c_str() + at + kTempMarker.size();
    std::from_chars(digits, name.c_str() + name.size(), writer);
    if (writer > 0 && writer != ::getpid() && (::kill(writer, 0) == 0 || errno == EPERM)) continue;
    fs::remove(it->path(), ec);
  }
}

FileLock::FileLock(const fs::path& path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0640);
  if (fd_ < 0) fail("open lock", path);
  while (::flock(fd_, LOCK_EX) != 0) {
    if (errno == EINTR) continue;
    int saved = errno;
    ::close(fd_);
    errno = saved;
    fail("lock", path);
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) ::close(fd_);  // releases the lock
}

void set_fault_hook(FaultHook hook) noexcept { g_fault_hook.store(hook); }

}  // namespace tenantconf::storage
