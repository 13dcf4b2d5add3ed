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

#include "tenantconf/json_views.hpp"

#include <algorithm>
#include <map>

namespace tenantconf::json_views {

namespace {

template <typename T, typename F>
Json array_of(const std::vector<T>& items, F&& convert) {
  Json out = Json::array();
  for (const auto& item : items) out.push_back(convert(item));
  return out;
}

Json connection(const Connection& c) {
  return Json{{"name", c.name}, {"host", c.host}, {"client", c.client}};
}

std::string_view state_name(ConnectionState state) {
  return state == ConnectionState::kFull ? "Full" : "Less";
}

}  // namespace

Json page_view(const ResolvedPageView& v) {
  auto property = [](const PropertyEntry& p) { return Json{{"name", p.name}, {"value", p.value}}; };
  Json out;
  out["tenant"] = v.tenant;
  out["page"] = v.page;
  out["language"] = v.language;
  out["role"] = v.role;
  out["css"] = array_of(v.css, [](const CssElement& e) {
    return Json{{"name", e.name}, {"location", e.location}};
  });
  out["images"] = array_of(v.images, [](const ImageElement& e) {
    return Json{{"name", e.name}, {"src", e.src}};
  });
  out["scripts"] = array_of(v.scripts, [](const ScriptElement& e) {
    return Json{{"name", e.name}, {"src", e.src}};
  });
  out["labels"] = array_of(v.labels, property);
  out["texts"] = array_of(v.texts, property);
  out["blocks"] = array_of(v.blocks, [](const Block& b) {
    return Json{{"component", b.component},
                {"view_name", b.view_name},
                {"title", b.title},
                {"load_option", b.load_option == LoadOption::kDirect ? "Direct" : "Lazy"}};
  });
  out["fields"] = array_of(v.fields, [](const FieldPlacement& f) {
    return Json{{"field_name", f.field_name},
                {"from", f.position_from.to_string()},
                {"to", f.position_to.to_string()}};
  });
  out["missing"] = v.missing;
  return out;
}

Json backend_call(const BackendCallPlan& plan) {
  return Json{{"be_name", plan.be_name},
              {"api", plan.api},
              {"state", state_name(plan.state)},
              {"reuse_connection", plan.reuse_connection},
              {"connection", connection(plan.connection)}};
}

Json database(const DatabaseDescriptor& db) { return Json{{"name", db.name}, {"host", db.host}}; }

Json role_profiles(const RoleProfiles& p) {
  return Json{{"nav_bar", p.nav_bar},
              {"technical", p.technical},
              {"layout", p.layout},
              {"pfcg", p.pfcg}};
}

Json bo_status(const BoStatus& status) {
  return Json{{"bo_name", status.bo_name}, {"enabled", status.enabled}};
}

Json bol_access(const std::string& role, const std::string& bol, BolDecision decision) {
  return Json{{"role", role},
              {"bol", bol},
              {"decision", decision == BolDecision::kAllowed ? "Allowed" : "Forbidden"}};
}

Json setting(const std::string& key, const std::optional<SettingValue>& value) {
  Json out{{"key", key}};
  if (!value) {
    out["kind"] = "absent";
    out["value"] = nullptr;
  } else if (value->is_scalar()) {
    out["kind"] = "scalar";
    out["value"] = value->scalar_value();
  } else {
    auto items = value->set_items();
    std::sort(items.begin(), items.end());
    out["kind"] = "set";
    out["value"] = items;
  }
  return out;
}

Json trace(const DryRunTrace& t) {
  return Json{{"workflow_id", t.workflow_id},
              {"steps", array_of(t.steps, [](const TraceStep& s) {
                 return Json{{"step_no", s.step_no},
                             {"bo_name", s.bo_name},
                             {"method", s.method},
                             {"bol", s.bol},
                             {"verdict", verdict_name(s.verdict)}};
               })}};
}

Json registry(const CentralRegistry& reg) {
  Json tenants = Json::array();
  for (const auto& t : reg.tenants) tenants.push_back(t.str());
  Json sections = Json::array();
  for (const auto& [key, section] : reg.sections) {
    Json files = Json::object();
    for (const auto& [tenant, entry] : section.tenant_locations) {
      files[tenant.str()] = Json{{"location", entry.location}, {"version", entry.version}};
    }
    sections.push_back(Json{{"document", key.to_string()},
                            {"default", section.default_location},
                            {"tenants", files}});
  }
  Json dbs = Json::object();
  for (const auto& [tenant, db] : reg.tenant_databases) dbs[tenant.str()] = database(db);
  return Json{{"tenants", tenants}, {"sections", sections}, {"tenant_databases", dbs}};
}

Json report(const ValidationReport& r) {
  return array_of(r.violations, [](const Violation& v) {
    return Json{{"code", v.code}, {"subject", v.subject}, {"detail", v.detail}};
  });
}

Json error(const std::string& code, const std::string& detail) {
  return Json{{"code", code}, {"detail", detail}};
}

Json categories(const std::vector<DocKey>& keys) {
  std::map<ConfigCategory, std::vector<std::string>> languages;
  for (const auto& k : keys) {
    if (!k.language.empty()) languages[k.category].push_back(k.language);
  }
  Json out = Json::array();
  for (ConfigCategory c : kAllCategories) {
    Json entry{{"slug", category_slug(c)}, {"root", category_root_tag(c)}};
    if (c == ConfigCategory::kProperties) entry["languages"] = languages[c];
    out.push_back(std::move(entry));
  }
  return out;
}

Json branding(const std::string& name, const std::string& logo) {
  return Json{{"name", name}, {"logo", logo}};
}

std::string render(const Json& json) { return json.dump(2) + "\n"; }

std::string metrics(const CacheStats& documents, const CacheStats& views, std::uint64_t audits) {
  std::string out;
  auto line = [&](std::string_view name, std::uint64_t value) {
    out.append(name).append(" ").append(std::to_string(value)).append("\n");
  };
  line("tenantconf_document_cache_hits", documents.hits);
  line("tenantconf_document_cache_misses", documents.misses);
  line("tenantconf_document_cache_invalidations", documents.invalidations);
  line("tenantconf_document_cache_entries", documents.entries);
  line("tenantconf_view_cache_hits", views.hits);
  line("tenantconf_view_cache_misses", views.misses);
  line("tenantconf_view_cache_invalidations", views.invalidations);
  line("tenantconf_view_cache_entries", views.entries);
  line("tenantconf_audit_records", audits);
  return out;
}

}  // namespace tenantconf::json_views
