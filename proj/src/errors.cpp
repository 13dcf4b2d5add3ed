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

#include "tenantconf/errors.hpp"

#include <array>

namespace tenantconf {

namespace {

constexpr std::array<std::string_view, 23> kNames = {
    "InvalidArgument",
    "CoordinateError",
    "ParseError",
    "ValidationFailed",
    "AuthzDenied",
    "Unauthenticated",
    "VersionConflict",
    "NotConfigured",
    "UnknownTenant",
    "TenantExists",
    "UnknownCategory",
    "UnknownLanguage",
    "UnknownRole",
    "UnknownBackendObject",
    "UnknownWorkflow",
    "DanglingConnection",
    "DanglingDatabase",
    "NoDefaultDatabase",
    "RegistryCorrupt",
    "MissingDefault",
    "DanglingLocation",
    "DatabaseAlreadyAssigned",
    "StorageError",
};

static_assert(kNames.size() == static_cast<std::size_t>(ErrorCode::kStorage) + 1);

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  return kNames[static_cast<std::size_t>(code)];
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace tenantconf
