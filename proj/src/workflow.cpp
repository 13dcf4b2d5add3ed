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

#include "tenantconf/workflow.hpp"

#include <set>

namespace tenantconf {

namespace {

DocKey plain(ConfigCategory category) { return DocKey{category, {}}; }

const std::vector<DocKey>& dry_run_inputs() {
  static const std::vector<DocKey> keys = {
      plain(ConfigCategory::kFrontendBOs), plain(ConfigCategory::kBusinessRoles),
      plain(ConfigCategory::kBolAccess), plain(ConfigCategory::kKeyValues),
      plain(ConfigCategory::kWorkflows)};
  return keys;
}

std::set<std::string> role_names(const BusinessRolesDocument& roles) {
  std::set<std::string> out;
  for (const auto& r : roles.entries) out.insert(r.name);
  return out;
}

DryRunTrace run_checked(const WorkflowDef& wf,
                        const std::map<DocKey, std::shared_ptr<const ConfigDocument>>& docs) {
  const auto& roles = docs.at(plain(ConfigCategory::kBusinessRoles))->as<BusinessRolesDocument>();
  ValidationReport report = validate_workflow_def(wf, role_names(roles));
  if (!report.ok()) throw ValidationFailed(std::move(report));
  return dry_run(wf, docs.at(plain(ConfigCategory::kFrontendBOs))->as<BosDocument>(), roles,
                 docs.at(plain(ConfigCategory::kBolAccess))->as<BolAccessDocument>(),
                 docs.at(plain(ConfigCategory::kKeyValues))->as<KeyValuesDocument>());
}

}  // namespace

std::string_view verdict_name(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::kOk: return "Ok";
    case Verdict::kBoDisabled: return "BoDisabled";
    case Verdict::kBolForbidden: return "BolForbidden";
  }
  return "?";
}

std::string bol_of(const KeyValuesDocument& settings, const std::string& bo) {
  auto value = rules::setting(settings, "bol.of." + bo);
  if (value && value->is_scalar() && !value->scalar_value().empty()) return value->scalar_value();
  return std::string(kUnassignedBol);
}

DryRunTrace dry_run(const WorkflowDef& wf, const BosDocument& bos,
                    const BusinessRolesDocument& roles, const BolAccessDocument& access,
                    const KeyValuesDocument& settings) {
  DryRunTrace trace{wf.id, {}};
  for (const auto& task : wf.tasks) {
    TraceStep step{task.step_no, task.bo_name, task.method, bol_of(settings, task.bo_name),
                   Verdict::kOk};
    if (!rules::bo_status(bos, task.bo_name).enabled) {
      step.verdict = Verdict::kBoDisabled;
    } else if (rules::bol_access(roles, access, wf.role_binding, step.bol) !=
               BolDecision::kAllowed) {
      step.verdict = Verdict::kBolForbidden;
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

ValidationReport validate_workflow(Resolver& resolver, const Principal& caller,
                                   const TenantId& tenant, const WorkflowDef& wf) {
  auto roles = resolver.resolve_category(caller, tenant, plain(ConfigCategory::kBusinessRoles));
  return validate_workflow_def(wf, role_names(roles->as<BusinessRolesDocument>()));
}

DryRunTrace dry_run(Resolver& resolver, const Principal& caller, const TenantId& tenant,
                    const WorkflowDef& wf) {
  return run_checked(wf, resolver.resolve_set(caller, tenant, dry_run_inputs()));
}

DryRunTrace dry_run_stored(Resolver& resolver, const Principal& caller, const TenantId& tenant,
                           const std::string& id) {
  auto docs = resolver.resolve_set(caller, tenant, dry_run_inputs());
  for (const auto& wf : docs.at(plain(ConfigCategory::kWorkflows))->as<WorkflowsDocument>().entries) {
    if (wf.id == id) return run_checked(wf, docs);
  }
  throw Error(ErrorCode::kUnknownWorkflow, id);
}

}  // namespace tenantconf
