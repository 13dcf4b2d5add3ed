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

#ifndef TENANTCONF_ERRORS_HPP
#define TENANTCONF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tenantconf {

/// Closed set of failure kinds raised by the library. The string form
/// returned by error_code_name() is stable and travels over the wire.
enum class ErrorCode {
  kInvalidArgument,
  kCoordinate,
  kParse,
  kValidationFailed,
  kAuthzDenied,
  kUnauthenticated,
  kVersionConflict,
  kNotConfigured,
  kUnknownTenant,
  kTenantExists,
  kUnknownCategory,
  kUnknownLanguage,
  kUnknownRole,
  kUnknownBackendObject,
  kUnknownWorkflow,
  kDanglingConnection,
  kDanglingDatabase,
  kNoDefaultDatabase,
  kRegistryCorrupt,
  kMissingDefault,
  kDanglingLocation,
  kDatabaseAlreadyAssigned,
  kStorage,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace tenantconf

#endif  // TENANTCONF_ERRORS_HPP
