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

#ifndef TENANTCONF_JSON_VIEWS_HPP
#define TENANTCONF_JSON_VIEWS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "tenantconf/cache.hpp"
#include "tenantconf/registry.hpp"
#include "tenantconf/resolver.hpp"
#include "tenantconf/validation.hpp"
#include "tenantconf/workflow.hpp"

// JSON shapes shared by the REST service and `tenantconf resolve`, so both
// print byte-identical bodies for the same state.
namespace tenantconf::json_views {

using Json = nlohmann::ordered_json;

Json page_view(const ResolvedPageView& view);
Json backend_call(const BackendCallPlan& plan);
Json database(const DatabaseDescriptor& db);
Json role_profiles(const RoleProfiles& profiles);
Json bo_status(const BoStatus& status);
Json bol_access(const std::string& role, const std::string& bol, BolDecision decision);
/// {"key","kind":"absent"|"scalar"|"set","value"}; set items sorted.
Json setting(const std::string& key, const std::optional<SettingValue>& value);
Json trace(const DryRunTrace& trace);
Json registry(const CentralRegistry& registry);
Json report(const ValidationReport& report);
Json error(const std::string& code, const std::string& detail);
/// [{"slug","root","languages"?}] for every category in enum order.
Json categories(const std::vector<DocKey>& keys);
Json branding(const std::string& name, const std::string& logo);

/// Two-space indented JSON plus a trailing newline.
std::string render(const Json& json);

/// "name value" lines for the document and view caches.
std::string metrics(const CacheStats& documents, const CacheStats& views, std::uint64_t audits);

}  // namespace tenantconf::json_views

#endif  // TENANTCONF_JSON_VIEWS_HPP
