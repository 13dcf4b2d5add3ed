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

#ifndef TENANTCONF_WORKFLOW_HPP
#define TENANTCONF_WORKFLOW_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tenantconf/guard.hpp"
#include "tenantconf/model.hpp"
#include "tenantconf/resolver.hpp"
#include "tenantconf/validation.hpp"

namespace tenantconf {

enum class Verdict { kOk, kBoDisabled, kBolForbidden };

std::string_view verdict_name(Verdict verdict) noexcept;

struct TraceStep {
  std::uint32_t step_no = 0;
  std::string bo_name;
  std::string method;
  std::string bol;  // BOL the BO was checked against
  Verdict verdict = Verdict::kOk;
  bool operator==(const TraceStep&) const = default;
};

struct DryRunTrace {
  std::string workflow_id;
  std::vector<TraceStep> steps;  // one per task, in step order
  bool operator==(const DryRunTrace&) const = default;
};

/// BOL that a business object belongs to when no `bol.of.<bo>` setting
/// says otherwise. No role is ever granted it.
inline constexpr std::string_view kUnassignedBol = "UNASSIGNED";

/// "bol.of.<bo>" scalar setting, else kUnassignedBol.
std::string bol_of(const KeyValuesDocument& settings, const std::string& bo);

/// Pure dry run over resolved documents. A disabled BO takes precedence
/// over a forbidden BOL. Task rules are carried but not evaluated.
DryRunTrace dry_run(const WorkflowDef& wf, const BosDocument& bos,
                    const BusinessRolesDocument& roles, const BolAccessDocument& access,
                    const KeyValuesDocument& settings);

/// Checks `wf` against the tenant's resolved business roles.
ValidationReport validate_workflow(Resolver& resolver, const Principal& caller,
                                   const TenantId& tenant, const WorkflowDef& wf);

/// Validates, then dry-runs `wf` against one consistent snapshot of the
/// tenant's configuration. Throws ValidationFailed for an invalid workflow.
DryRunTrace dry_run(Resolver& resolver, const Principal& caller, const TenantId& tenant,
                    const WorkflowDef& wf);

/// Dry-runs the stored workflow `id`. Throws UnknownWorkflow.
DryRunTrace dry_run_stored(Resolver& resolver, const Principal& caller, const TenantId& tenant,
                           const std::string& id);

}  // namespace tenantconf

#endif  // TENANTCONF_WORKFLOW_HPP
