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

#include "tenantconf/resolver.hpp"

#include <algorithm>
#include <set>

namespace tenantconf {

namespace rules {
namespace {

const BusinessRole& find_role(const BusinessRolesDocument& roles, const std::string& role) {
  for (const auto& r : roles.entries) {
    if (r.name == role) return r;
  }
  throw Error(ErrorCode::kUnknownRole, role);
}

template <typename Entry>
const Entry* find_by_key(const std::vector<Entry>& entries, const std::string& key) {
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const Entry& e) { return entry_key(e) == key; });
  return it == entries.end() ? nullptr : &*it;
}

}  // namespace

BoStatus bo_status(const BosDocument& bos, const std::string& bo) {
  const BoToggle* toggle = find_by_key(bos.entries, bo);
  return BoStatus{bo, toggle == nullptr || toggle->enabled};
}

BackendCallPlan backend_call(const BackendBindingsDocument& bindings,
                             const ConnectionsDocument& connections, const std::string& be) {
  const BackendBinding* binding = find_by_key(bindings.entries, be);
  if (!binding) throw Error(ErrorCode::kUnknownBackendObject, be);
  const Connection* connection = find_by_key(connections.entries, binding->erp_backend);
  if (!connection) {
    throw Error(ErrorCode::kDanglingConnection,
                be + " uses undeclared connection '" + binding->erp_backend + "'");
  }
  return BackendCallPlan{binding->be_name, binding->api, binding->state, *connection,
                         binding->state == ConnectionState::kFull};
}

RoleProfiles role_profiles(const BusinessRolesDocument& roles, const std::string& role) {
  const BusinessRole& r = find_role(roles, role);
  return RoleProfiles{r.nav_bar_profile, r.technical_profile, r.layout_profile, r.pfcg_role};
}

BolDecision bol_access(const BusinessRolesDocument& roles, const BolAccessDocument& access,
                       const std::string& role, const std::string& bol) {
  find_role(roles, role);
  const BolAccessRule* rule = find_by_key(access.entries, role);
  if (!rule) return BolDecision::kForbidden;
  for (const auto& grant : rule->grants) {
    if (grant.bol_name == bol) return grant.use ? BolDecision::kAllowed : BolDecision::kForbidden;
  }
  return BolDecision::kForbidden;
}

DatabaseDescriptor database_for(const DataObjectsDocument& dos, const DatabasesDocument& dbs,
                                const std::string& data_object) {
  if (const DataObjectBinding* binding = find_by_key(dos.entries, data_object)) {
    const Database* db = find_by_key(dbs.entries, binding->database_name);
    if (!db) {
      throw Error(ErrorCode::kDanglingDatabase,
                  data_object + " uses undeclared database '" + binding->database_name + "'");
    }
    return DatabaseDescriptor{db->name, db->host};
  }
  const Database* fallback = nullptr;
  for (const auto& db : dbs.entries) {
    if (db.use != DatabaseUse::kDefault) continue;
    if (fallback) throw Error(ErrorCode::kNoDefaultDatabase, "more than one Default database");
    fallback = &db;
  }
  if (!fallback) throw Error(ErrorCode::kNoDefaultDatabase, "no Default database");
  return DatabaseDescriptor{fallback->name, fallback->host};
}

std::optional<SettingValue> setting(const KeyValuesDocument& kv, const std::string& key) {
  const KeyValueSetting* s = find_by_key(kv.entries, key);
  if (!s) return std::nullopt;
  return s->value;
}

ResolvedPageView page_view(const std::string& tenant, const std::string& page,
                           const std::string& role, const CssDocument& css,
                           const ImagesDocument& images, const ScriptsDocument& scripts,
                           const PropertyBundle& properties, const BlocksDocument& blocks,
                           const FieldsDocument& fields, const BusinessRolesDocument& roles) {
  find_role(roles, role);
  ResolvedPageView view;
  view.tenant = tenant;
  view.page = page;
  view.language = properties.language;
  view.role = role;
  view.css = css.entries;
  view.images = images.entries;
  view.scripts = scripts.entries;

  const std::string prefix = page + ".";
  auto on_page = [&](const PropertyEntry& e) { return e.name.compare(0, prefix.size(), prefix) == 0; };
  std::copy_if(properties.labels.begin(), properties.labels.end(),
               std::back_inserter(view.labels), on_page);
  std::copy_if(properties.texts.begin(), properties.texts.end(), std::back_inserter(view.texts),
               on_page);
  std::copy_if(blocks.entries.begin(), blocks.entries.end(), std::back_inserter(view.blocks),
               [](const Block& b) { return b.display; });
  std::copy_if(fields.entries.begin(), fields.entries.end(), std::back_inserter(view.fields),
               [](const FieldPlacement& f) { return f.display; });

  std::set<std::string> defined;
  for (const auto& l : view.labels) defined.insert(l.name);
  std::set<std::string> reported;
  for (const auto& f : view.fields) {
    std::string expected = prefix + f.field_name;
    if (!defined.contains(expected) && reported.insert(expected).second) {
      view.missing.push_back(std::move(expected));
    }
  }
  return view;
}

}  // namespace rules

struct Resolver::ViewCache {
  explicit ViewCache(std::size_t capacity) : cache(capacity) {}
  SingleFlightCache<ViewKey, ResolvedPageView> cache;
};

namespace {

DocKey plain(ConfigCategory category) { return DocKey{category, {}}; }

}  // namespace

Resolver::Resolver(TenantRegistry& registry, std::size_t cache_capacity,
                   std::size_t view_capacity)
    : registry_(registry),
      documents_(cache_capacity),
      views_(std::make_unique<ViewCache>(view_capacity)) {
  subscription_ = registry_.subscribe(
      [this](const TenantId& tenant, const DocKey& key) { on_change(tenant, key); });
}

Resolver::~Resolver() { registry_.unsubscribe(subscription_); }

CacheStats Resolver::view_stats() const { return views_->cache.stats(); }

void Resolver::on_change(const TenantId& tenant, const DocKey& key) {
  documents_.invalidate(tenant, key);
  views_->cache.invalidate_if([&](const ViewKey& k) { return k.tenant == tenant; });
}

std::shared_ptr<const ConfigDocument> Resolver::load(const TenantRegistry::ReadSession& session,
                                                     const DocKey& key) {
  std::optional<TenantOverride> entry = session.override_for(key);
  if (!entry) return session.default_document(key);
  return documents_.get_or_load(session.tenant(), key, entry->version, [&] {
    ++storage_reads_;
    return session.read_override(key, *entry);
  });
}

std::shared_ptr<const ConfigDocument> Resolver::resolve_category(const Principal& caller,
                                                                 const TenantId& tenant,
                                                                 const DocKey& key) {
  registry_.guard().require(caller, Action::kRead, tenant, key.category);
  auto session = registry_.open_read(tenant);
  registry_.require_key(key);
  return load(session, key);
}

std::map<DocKey, std::shared_ptr<const ConfigDocument>> Resolver::resolve_set(
    const Principal& caller, const TenantId& tenant, const std::vector<DocKey>& keys) {
  registry_.guard().require(caller, Action::kRead, tenant);
  auto session = registry_.open_read(tenant);
  std::map<DocKey, std::shared_ptr<const ConfigDocument>> out;
  for (const auto& key : keys) {
    registry_.require_key(key);
    out.emplace(key, load(session, key));
  }
  return out;
}

std::shared_ptr<const ResolvedPageView> Resolver::resolve_page_view(const Principal& caller,
                                                                    const TenantId& tenant,
                                                                    const std::string& page,
                                                                    const std::string& language,
                                                                    const std::string& role) {
  registry_.guard().require(caller, Action::kRead, tenant);
  auto session = registry_.open_read(tenant);
  if (!is_language_tag(language) ||
      !registry_.has_key(DocKey{ConfigCategory::kProperties, language})) {
    throw Error(ErrorCode::kUnknownLanguage, "no properties for language '" + language + "'");
  }

  const std::array<DocKey, kViewInputs> inputs = {
      plain(ConfigCategory::kCssElements), plain(ConfigCategory::kImages),
      plain(ConfigCategory::kScripts),     DocKey{ConfigCategory::kProperties, language},
      plain(ConfigCategory::kBlocks),      plain(ConfigCategory::kFields),
      plain(ConfigCategory::kBusinessRoles)};
  ViewKey key{tenant, page, language, role, {}};
  for (std::size_t i = 0; i < kViewInputs; ++i) {
    auto entry = session.override_for(inputs[i]);
    key.versions[i] = entry ? entry->version : kDefaultVersion;
  }
  return views_->cache.get_or_load(key, [&] {
    std::array<std::shared_ptr<const ConfigDocument>, kViewInputs> docs;
    for (std::size_t i = 0; i < kViewInputs; ++i) docs[i] = load(session, inputs[i]);
    return std::make_shared<ResolvedPageView>(rules::page_view(
        tenant.str(), page, role, docs[0]->as<CssDocument>(), docs[1]->as<ImagesDocument>(),
        docs[2]->as<ScriptsDocument>(), docs[3]->as<PropertyBundle>(),
        docs[4]->as<BlocksDocument>(), docs[5]->as<FieldsDocument>(),
        docs[6]->as<BusinessRolesDocument>()));
  });
}

BoStatus Resolver::check_bo_enabled(const Principal& caller, const TenantId& tenant,
                                    const std::string& bo) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kFrontendBOs);
  auto session = registry_.open_read(tenant);
  return rules::bo_status(load(session, plain(ConfigCategory::kFrontendBOs))->as<BosDocument>(),
                          bo);
}

BackendCallPlan Resolver::resolve_backend_call(const Principal& caller, const TenantId& tenant,
                                               const std::string& be) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kBackendBindings);
  auto session = registry_.open_read(tenant);
  auto bindings = load(session, plain(ConfigCategory::kBackendBindings));
  auto connections = load(session, plain(ConfigCategory::kConnections));
  return rules::backend_call(bindings->as<BackendBindingsDocument>(),
                             connections->as<ConnectionsDocument>(), be);
}

RoleProfiles Resolver::resolve_role_profiles(const Principal& caller, const TenantId& tenant,
                                             const std::string& role) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kBusinessRoles);
  auto session = registry_.open_read(tenant);
  return rules::role_profiles(
      load(session, plain(ConfigCategory::kBusinessRoles))->as<BusinessRolesDocument>(), role);
}

BolDecision Resolver::check_bol_access(const Principal& caller, const TenantId& tenant,
                                       const std::string& role, const std::string& bol) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kBolAccess);
  auto session = registry_.open_read(tenant);
  auto roles = load(session, plain(ConfigCategory::kBusinessRoles));
  auto access = load(session, plain(ConfigCategory::kBolAccess));
  return rules::bol_access(roles->as<BusinessRolesDocument>(), access->as<BolAccessDocument>(),
                           role, bol);
}

DatabaseDescriptor Resolver::resolve_database(const Principal& caller, const TenantId& tenant,
                                              const std::string& data_object) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kDataObjects);
  auto session = registry_.open_read(tenant);
  auto dos = load(session, plain(ConfigCategory::kDataObjects));
  auto dbs = load(session, plain(ConfigCategory::kDatabases));
  return rules::database_for(dos->as<DataObjectsDocument>(), dbs->as<DatabasesDocument>(),
                             data_object);
}

std::optional<SettingValue> Resolver::get_setting(const Principal& caller,
                                                  const TenantId& tenant,
                                                  const std::string& key) {
  registry_.guard().require(caller, Action::kRead, tenant, ConfigCategory::kKeyValues);
  auto session = registry_.open_read(tenant);
  return rules::setting(load(session, plain(ConfigCategory::kKeyValues))->as<KeyValuesDocument>(),
                        key);
}

}  // namespace tenantconf
