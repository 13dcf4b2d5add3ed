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

#ifndef TENANTCONF_STORAGE_HPP
#define TENANTCONF_STORAGE_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace tenantconf::storage {

/// Reads a whole file. Throws Error(kStorage).
std::string read_file(const std::filesystem::path& path);

/// Writes `bytes` to a temporary sibling, fsyncs it and renames it over
/// `path`. Readers observe either the previous or the new content.
/// Throws Error(kStorage).
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Removes temporaries left behind by interrupted writes under `dir`.
/// Temporaries whose writer is another live process are kept.
void remove_stale_temporaries(const std::filesystem::path& dir);

/// Exclusive advisory lock on `path` (created if missing), held for the
/// lifetime of the object. Serializes writers across processes.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

/// Points inside write_file_atomic where a failpoint fires.
enum class WritePhase {
  kTempPartial,   // half of the bytes are in the temporary file
  kTempComplete,  // temporary file written and synced, not yet renamed
  kRenamed,       // rename done
};

/// Test failpoint. The hook may throw or terminate the process; it is
/// process-global and not meant for production use.
using FaultHook = void (*)(WritePhase phase, const std::filesystem::path& target);
void set_fault_hook(FaultHook hook) noexcept;

}  // namespace tenantconf::storage

#endif  // TENANTCONF_STORAGE_HPP
