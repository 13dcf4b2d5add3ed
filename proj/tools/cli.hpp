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

#ifndef TENANTCONF_TOOLS_CLI_HPP
#define TENANTCONF_TOOLS_CLI_HPP

#include <iosfwd>

namespace tenantconf::cli {

/// Exit codes: 0 success, 1 domain failure (violations, duplicate tenant,
/// unknown role, ...), 2 environment failure (I/O, malformed XML, unusable
/// registry, unknown tenant or category, bad usage).
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kEnvironmentFailure = 2;

/// Runs `tenantconf <subcommand> ...` writing results to `out` and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tenantconf::cli

#endif  // TENANTCONF_TOOLS_CLI_HPP
