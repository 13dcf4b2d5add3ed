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

#ifndef TENANTCONF_VALIDATION_HPP
#define TENANTCONF_VALIDATION_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tenantconf/errors.hpp"
#include "tenantconf/model.hpp"

namespace tenantconf {

// Violation codes. Stable, machine readable.
namespace violation {
inline constexpr std::string_view kEmptyName = "EMPTY_NAME";
inline constexpr std::string_view kDupName = "DUP_NAME";
inline constexpr std::string_view kBadPropertyName = "BAD_PROPERTY_NAME";
inline constexpr std::string_view kBadSpan = "BAD_SPAN";
inline constexpr std::string_view kOverlapField = "OVERLAP_FIELD";
inline constexpr std::string_view kBadClient = "BAD_CLIENT";
inline constexpr std::string_view kDanglingConnection = "DANGLING_CONNECTION";
inline constexpr std::string_view kEmptyProfile = "EMPTY_PROFILE";
inline constexpr std::string_view kUnknownRole = "UNKNOWN_ROLE";
inline constexpr std::string_view kDupBol = "DUP_BOL";
inline constexpr std::string_view kDanglingDatabase = "DANGLING_DATABASE";
inline constexpr std::string_view kMultiDefaultDb = "MULTI_DEFAULT_DB";
inline constexpr std::string_view kNoDefaultDb = "NO_DEFAULT_DB";
inline constexpr std::string_view kEmptySet = "EMPTY_SET";
inline constexpr std::string_view kDupSetItem = "DUP_SET_ITEM";
inline constexpr std::string_view kEmptyWorkflow = "EMPTY_WF";
inline constexpr std::string_view kBadOrder = "BAD_ORDER";
inline constexpr std::string_view kBadTask = "BAD_TASK";
}  // namespace violation

struct Violation {
  std::string code;
  std::string subject;  // entry the violation is about, e.g. "Field2"
  std::string detail;
  auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted

  bool ok() const noexcept { return violations.empty(); }
  bool contains(std::string_view code) const;
  std::multiset<std::string> codes() const;
};

/// Names declared by the owner's other documents. A disengaged set skips
/// the corresponding referential check (e.g. a standalone file).
struct CrossRefs {
  std::optional<std::set<std::string>> connections;
  std::optional<std::set<std::string>> roles;
  std::optional<std::set<std::string>> databases;
};

/// Checks every per-type invariant of `doc`, plus references into `refs`.
/// Deterministic and insensitive to entry order.
ValidationReport validate_document(const ConfigDocument& doc, const CrossRefs& refs = {});

/// Per-workflow checks: EMPTY_WF, BAD_ORDER, BAD_TASK and, when `roles` is
/// engaged, UNKNOWN_ROLE.
ValidationReport validate_workflow_def(const WorkflowDef& wf,
                                       const std::optional<std::set<std::string>>& roles);

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace tenantconf

#endif  // TENANTCONF_VALIDATION_HPP
