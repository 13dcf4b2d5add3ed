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

#include "tenantconf/registry.hpp"

#include <algorithm>
#include <utility>

#include "tenantconf/codec.hpp"
#include "tenantconf/storage.hpp"
#include "tenantconf/xml.hpp"

namespace tenantconf {

namespace fs = std::filesystem;

struct TenantRegistry::TenantState {
  mutable std::shared_mutex mu;
  std::map<DocKey, TenantOverride> overrides;
};

namespace {

Error corrupt(const std::string& why) { return Error(ErrorCode::kRegistryCorrupt, why); }

const xml::Element* child(const xml::Element& parent, std::string_view tag) {
  const xml::Element* found = nullptr;
  for (const auto& c : parent.children) {
    if (c.name == tag) {
      if (found) throw corrupt("repeated <" + std::string(tag) + "> in <" + parent.name + ">");
      found = &c;
    }
  }
  return found;
}

const xml::Element& required(const xml::Element& parent, std::string_view tag) {
  const xml::Element* found = child(parent, tag);
  if (!found) throw corrupt("missing <" + std::string(tag) + "> in <" + parent.name + ">");
  return *found;
}

void only(const xml::Element& parent, std::initializer_list<std::string_view> tags) {
  for (const auto& c : parent.children) {
    if (std::find(tags.begin(), tags.end(), c.name) == tags.end()) {
      throw corrupt("unexpected <" + c.name + "> in <" + parent.name + ">");
    }
  }
}

TenantId tenant_of(const xml::Element& e) {
  if (!TenantId::is_valid(e.text)) throw corrupt("invalid tenant id '" + e.text + "'");
  return TenantId(e.text);
}

// Lexical containment check: `location` must be "tenants/<id>/<file>".
bool inside_tenant_root(const std::string& location, const TenantId& tenant) {
  fs::path p = fs::path(location).lexically_normal();
  if (p.is_absolute()) return false;
  auto it = p.begin();
  if (it == p.end() || *it != "tenants") return false;
  if (++it == p.end() || *it != tenant.str()) return false;
  if (++it == p.end()) return false;
  for (; it != p.end(); ++it) {
    if (*it == ".." || *it == ".") return false;
  }
  return true;
}

std::string_view default_dir = "defaults";

}  // namespace

// --- CentralRegistry --------------------------------------------------------

std::optional<std::string> CentralRegistry::lookup(const TenantId& tenant,
                                                   const DocKey& key) const {
  auto section = sections.find(key);
  if (section == sections.end()) return std::nullopt;
  auto entry = section->second.tenant_locations.find(tenant);
  if (entry == section->second.tenant_locations.end()) return std::nullopt;
  return entry->second.location;
}

CentralRegistry CentralRegistry::parse(std::string_view bytes) {
  xml::Element root;
  try {
    root = xml::parse(bytes);
  } catch (const xml::SyntaxError& e) {
    throw corrupt("central.xml:" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                  ": " + e.what());
  }
  if (root.name != "CENTRAL") throw corrupt("root must be <CENTRAL>");
  only(root, {"TENANTS", "SECTIONS", "TENANTDATABASES"});

  CentralRegistry reg;
  if (const auto* tenants = child(root, "TENANTS")) {
    only(*tenants, {"TENANT"});
    for (const auto& t : tenants->children) {
      if (!reg.tenants.insert(tenant_of(t)).second) throw corrupt("duplicate tenant " + t.text);
    }
  }

  for (const auto& s : required(root, "SECTIONS").children) {
    if (s.name != "SECTION") throw corrupt("unexpected <" + s.name + "> in <SECTIONS>");
    only(s, {"CATEGORY", "LANGUAGE", "DEFAULT", "TENANTFILES"});
    const auto& cat = required(s, "CATEGORY");
    auto category = category_from_slug(cat.text);
    if (!category) throw corrupt("unknown category '" + cat.text + "'");
    const auto* lang = child(s, "LANGUAGE");
    DocKey key;
    try {
      key = DocKey::make(*category, lang ? lang->text : std::string());
    } catch (const Error& e) {
      throw corrupt("section " + cat.text + ": " + e.detail());
    }
    const auto* def = child(s, "DEFAULT");
    if (!def || def->text.empty()) {
      throw Error(ErrorCode::kMissingDefault, "section " + key.to_string() + " has no default");
    }
    RegistrySection section{key, def->text, {}};
    if (const auto* files = child(s, "TENANTFILES")) {
      only(*files, {"TENANTFILE"});
      for (const auto& f : files->children) {
        only(f, {"TENANT", "LOCATION", "VERSION"});
        TenantId tenant = tenant_of(required(f, "TENANT"));
        const std::string& location = required(f, "LOCATION").text;
        const std::string& version = required(f, "VERSION").text;
        if (!reg.tenants.contains(tenant)) {
          throw corrupt("section " + key.to_string() + " names unregistered tenant " +
                        tenant.str());
        }
        if (!inside_tenant_root(location, tenant)) {
          throw corrupt("location '" + location + "' is outside tenant " + tenant.str());
        }
        if (version.empty() || version.size() > 19 ||
            !std::all_of(version.begin(), version.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          throw corrupt("bad version '" + version + "'");
        }
        TenantOverride entry{location, std::stoull(version)};
        if (!section.tenant_locations.emplace(tenant, entry).second) {
          throw corrupt("tenant " + tenant.str() + " listed twice in " + key.to_string());
        }
      }
    }
    if (!reg.sections.emplace(key, std::move(section)).second) {
      throw corrupt("duplicate section " + key.to_string());
    }
  }

  if (const auto* dbs = child(root, "TENANTDATABASES")) {
    only(*dbs, {"TENANTDATABASE"});
    std::set<DatabaseDescriptor> taken;
    for (const auto& d : dbs->children) {
      only(d, {"TENANT", "NAME", "HOST"});
      TenantId tenant = tenant_of(required(d, "TENANT"));
      DatabaseDescriptor db{required(d, "NAME").text, required(d, "HOST").text};
      if (!reg.tenants.contains(tenant)) throw corrupt("database for unregistered tenant");
      if (!taken.insert(db).second) throw corrupt("database " + db.name + " assigned twice");
      if (!reg.tenant_databases.emplace(tenant, db).second) {
        throw corrupt("tenant " + tenant.str() + " has two databases");
      }
    }
  }
  return reg;
}

std::string CentralRegistry::serialize() const {
  xml::Writer w;
  w.open("CENTRAL");
  w.open("TENANTS");
  for (const auto& t : tenants) w.leaf("TENANT", t.str());
  w.close("TENANTS");
  w.open("SECTIONS");
  for (const auto& [key, section] : sections) {
    w.open("SECTION");
    w.leaf("CATEGORY", category_slug(key.category));
    if (!key.language.empty()) w.leaf("LANGUAGE", key.language);
    w.leaf("DEFAULT", section.default_location);
    w.open("TENANTFILES");
    for (const auto& [tenant, entry] : section.tenant_locations) {
      w.open("TENANTFILE");
      w.leaf("TENANT", tenant.str());
      w.leaf("LOCATION", entry.location);
      w.leaf("VERSION", std::to_string(entry.version));
      w.close("TENANTFILE");
    }
    w.close("TENANTFILES");
    w.close("SECTION");
  }
  w.close("SECTIONS");
  w.open("TENANTDATABASES");
  for (const auto& [tenant, db] : tenant_databases) {
    w.open("TENANTDATABASE");
    w.leaf("TENANT", tenant.str());
    w.leaf("NAME", db.name);
    w.leaf("HOST", db.host);
    w.close("TENANTDATABASE");
  }
  w.close("TENANTDATABASES");
  w.close("CENTRAL");
  return std::move(w).take();
}

std::string default_location(const DocKey& key) {
  return std::string(default_dir) + "/" + key.file_name();
}

std::string tenant_location(const TenantId& tenant, const DocKey& key) {
  return "tenants/" + tenant.str() + "/" + key.file_name();
}

void install_defaults(const fs::path& root, const std::vector<ConfigDocument>& defaults) {
  CentralRegistry reg;
  for (const auto& doc : defaults) {
    DocKey key = DocKey::make(doc.category(), doc.key().language);
    std::string location = default_location(key);
    storage::write_file_atomic(root / location, serialize(doc));
    reg.sections[key] = RegistrySection{key, location, {}};
  }
  storage::write_file_atomic(root / kCentralFile, reg.serialize());
}

// --- TenantRegistry ---------------------------------------------------------

TenantRegistry::TenantRegistry(fs::path root, std::shared_ptr<IsolationGuard> guard)
    : root_(std::move(root)), guard_(std::move(guard)) {}

TenantRegistry::~TenantRegistry() = default;

std::unique_ptr<TenantRegistry> TenantRegistry::load(const fs::path& root,
                                                     std::shared_ptr<IsolationGuard> guard,
                                                     const Principal& caller) {
  guard->require(caller, Action::kRegistryRead, std::nullopt);
  std::unique_ptr<TenantRegistry> reg(new TenantRegistry(root, std::move(guard)));

  fs::path central_path = root / kCentralFile;
  std::error_code ec;
  if (!fs::is_regular_file(central_path, ec)) {
    throw corrupt("no " + std::string(kCentralFile) + " under " + root.string());
  }
  // Covers central.xml's own temporaries in the root as well.
  storage::remove_stale_temporaries(root);
  reg->central_ = CentralRegistry::parse(storage::read_file(central_path));
  const CentralRegistry& central = reg->central_;

  bool has_properties = false;
  for (ConfigCategory category : kAllCategories) {
    if (category == ConfigCategory::kProperties) continue;
    if (!central.sections.contains(DocKey{category, {}})) {
      throw Error(ErrorCode::kMissingDefault,
                  "no section for " + std::string(category_slug(category)));
    }
  }
  for (const auto& [key, section] : central.sections) {
    has_properties |= key.category == ConfigCategory::kProperties;
    fs::path def = root / section.default_location;
    if (!fs::is_regular_file(def, ec)) {
      throw Error(ErrorCode::kDanglingLocation, "default " + section.default_location + " is missing");
    }
    try {
      auto doc = std::make_shared<ConfigDocument>(parse(key, storage::read_file(def)));
      reg->defaults_.emplace(key, std::move(doc));
    } catch (const ParseError& e) {
      throw corrupt("default " + section.default_location + ": " + e.what());
    }
    for (const auto& [tenant, entry] : section.tenant_locations) {
      if (!fs::is_regular_file(root / entry.location, ec)) {
        throw Error(ErrorCode::kDanglingLocation,
                    "tenant " + tenant.str() + " file " + entry.location + " is missing");
      }
    }
    reg->keys_.push_back(key);
  }
  if (!has_properties) throw Error(ErrorCode::kMissingDefault, "no properties section");

  // Defaults must be valid against each other.
  auto names = [&](ConfigCategory category, auto&& pick) {
    std::set<std::string> out;
    std::visit(
        [&](const auto& body) {
          if constexpr (requires { body.entries; }) {
            for (const auto& e : body.entries) pick(out, e);
          }
        },
        reg->defaults_.at(DocKey{category, {}})->body);
    return out;
  };
  CrossRefs refs;
  refs.connections = names(ConfigCategory::kConnections, [](auto& out, const auto& e) {
    if constexpr (requires { e.client; }) out.insert(e.name);
  });
  refs.roles = names(ConfigCategory::kBusinessRoles, [](auto& out, const auto& e) {
    if constexpr (requires { e.pfcg_role; }) out.insert(e.name);
  });
  refs.databases = names(ConfigCategory::kDatabases, [](auto& out, const auto& e) {
    if constexpr (requires { e.use; }) out.insert(e.name);
  });
  for (const auto& [key, doc] : reg->defaults_) {
    ValidationReport report = validate_document(*doc, refs);
    if (!report.ok()) {
      throw corrupt("default " + key.to_string() + " is invalid: " +
                    ValidationFailed(report).detail());
    }
  }

  for (const auto& tenant : central.tenants) {
    reg->tenants_.emplace(tenant, std::make_unique<TenantState>());
  }
  for (const auto& [key, section] : central.sections) {
    for (const auto& [tenant, entry] : section.tenant_locations) {
      reg->tenants_.at(tenant)->overrides.emplace(key, entry);
    }
  }
  return reg;
}

bool TenantRegistry::has_key(const DocKey& key) const { return defaults_.contains(key); }

std::shared_ptr<const ConfigDocument> TenantRegistry::default_document(const DocKey& key) const {
  require_key(key);
  return defaults_.at(key);
}

void TenantRegistry::require_key(const DocKey& key) const {
  if (has_key(key)) return;
  if (key.category == ConfigCategory::kProperties) {
    throw Error(ErrorCode::kUnknownLanguage, "no properties for language '" + key.language + "'");
  }
  throw Error(ErrorCode::kUnknownCategory, "no section for " + key.to_string());
}

TenantRegistry::TenantState& TenantRegistry::state_for(const TenantId& tenant) const {
  {
    std::shared_lock lock(tenants_mu_);
    auto it = tenants_.find(tenant);
    if (it != tenants_.end()) return *it->second;  // states are never removed
  }
  // Another process (e.g. `tenantconf init-tenant` next to a running
  // service) may have registered the tenant since load.
  std::unique_lock lock(tenants_mu_);
  if (auto it = tenants_.find(tenant); it != tenants_.end()) return *it->second;
  std::lock_guard central_lock(central_mu_);
  CentralRegistry disk = CentralRegistry::parse(storage::read_file(root_ / kCentralFile));
  if (!disk.tenants.contains(tenant)) throw Error(ErrorCode::kUnknownTenant, tenant.str());
  auto state = std::make_unique<TenantState>();
  central_.tenants.insert(tenant);
  for (const auto& [key, section] : disk.sections) {
    auto entry = section.tenant_locations.find(tenant);
    if (entry == section.tenant_locations.end() || !has_key(key)) continue;
    state->overrides.emplace(key, entry->second);
    central_.sections.at(key).tenant_locations[tenant] = entry->second;
  }
  if (auto db = disk.tenant_databases.find(tenant); db != disk.tenant_databases.end()) {
    central_.tenant_databases[tenant] = db->second;
  }
  return *tenants_.emplace(tenant, std::move(state)).first->second;
}

CentralRegistry TenantRegistry::snapshot(const Principal& caller) const {
  guard_->require(caller, Action::kRegistryRead, std::nullopt);
  std::lock_guard lock(central_mu_);
  return central_;
}

std::optional<std::string> TenantRegistry::lookup(const Principal& caller, const TenantId& tenant,
                                                  const DocKey& key) const {
  guard_->require(caller, Action::kRegistryRead, tenant, key.category);
  std::lock_guard lock(central_mu_);
  return central_.lookup(tenant, key);
}

std::vector<TenantId> TenantRegistry::tenants(const Principal& caller) const {
  guard_->require(caller, Action::kRegistryRead, std::nullopt);
  std::shared_lock lock(tenants_mu_);
  std::vector<TenantId> out;
  for (const auto& [tenant, state] : tenants_) out.push_back(tenant);
  return out;
}

void TenantRegistry::update_central(const std::function<void(CentralRegistry&)>& mutate) {
  // Re-read under the inter-process lock so that a writer in another process
  // never has its update overwritten by this process's older image.
  storage::FileLock lock(root_ / kLockFile);
  CentralRegistry next = CentralRegistry::parse(storage::read_file(root_ / kCentralFile));
  mutate(next);
  storage::write_file_atomic(root_ / kCentralFile, next.serialize());
  central_ = std::move(next);
}

void TenantRegistry::register_tenant(const Principal& caller, const TenantId& tenant) {
  guard_->require(caller, Action::kRegistryWrite, tenant);
  std::unique_lock lock(tenants_mu_);
  if (tenants_.contains(tenant)) throw Error(ErrorCode::kTenantExists, tenant.str());
  {
    std::lock_guard central_lock(central_mu_);
    std::error_code ec;
    fs::create_directories(root_ / "tenants" / tenant.str(), ec);
    if (ec) throw Error(ErrorCode::kStorage, "create tenant directory: " + ec.message());
    update_central([&](CentralRegistry& next) {
      if (!next.tenants.insert(tenant).second) throw Error(ErrorCode::kTenantExists, tenant.str());
    });
  }
  tenants_.emplace(tenant, std::make_unique<TenantState>());
}

std::shared_ptr<const ConfigDocument> TenantRegistry::document_locked(const TenantState& state,
                                                                      const DocKey& key) const {
  auto it = state.overrides.find(key);
  if (it == state.overrides.end()) return defaults_.at(key);
  auto doc = std::make_shared<ConfigDocument>(
      parse(key, storage::read_file(root_ / it->second.location)));
  doc->version = it->second.version;
  return doc;
}

CrossRefs TenantRegistry::cross_refs_locked(const TenantState& state) const {
  // Keep each document alive for the loop; overrides are parsed on demand.
  auto connections = document_locked(state, DocKey{ConfigCategory::kConnections, {}});
  auto roles = document_locked(state, DocKey{ConfigCategory::kBusinessRoles, {}});
  auto databases = document_locked(state, DocKey{ConfigCategory::kDatabases, {}});
  CrossRefs refs;
  refs.connections.emplace();
  for (const auto& c : connections->as<ConnectionsDocument>().entries) {
    refs.connections->insert(c.name);
  }
  refs.roles.emplace();
  for (const auto& r : roles->as<BusinessRolesDocument>().entries) refs.roles->insert(r.name);
  refs.databases.emplace();
  for (const auto& d : databases->as<DatabasesDocument>().entries) {
    refs.databases->insert(d.name);
  }
  return refs;
}

ConfigDocument TenantRegistry::begin_configure(const Principal& caller, const TenantId& tenant,
                                               const DocKey& key) {
  guard_->require(caller, Action::kBeginConfigure, tenant, key.category);
  TenantState& state = state_for(tenant);
  require_key(key);
  std::unique_lock lock(state.mu);
  if (state.overrides.contains(key)) return *document_locked(state, key);

  ConfigDocument copy = *defaults_.at(key);
  copy.version = 0;
  TenantOverride entry{tenant_location(tenant, key), 0};
  storage::write_file_atomic(root_ / entry.location, serialize(copy));
  {
    std::lock_guard central_lock(central_mu_);
    update_central([&](CentralRegistry& next) {
      next.sections.at(key).tenant_locations[tenant] = entry;
    });
  }
  state.overrides[key] = entry;
  notify(tenant, key);
  return copy;
}

std::uint64_t TenantRegistry::commit(const Principal& caller, const TenantId& tenant,
                                     const DocKey& key, ConfigDocument doc) {
  guard_->require(caller, Action::kWrite, tenant, key.category);
  TenantState& state = state_for(tenant);
  require_key(key);
  if (doc.category() != key.category) {
    throw Error(ErrorCode::kInvalidArgument, "document category does not match " + key.to_string());
  }
  if (auto* bundle = std::get_if<PropertyBundle>(&doc.body)) bundle->language = key.language;

  std::unique_lock lock(state.mu);
  auto current = state.overrides.find(key);
  if (current == state.overrides.end()) {
    throw Error(ErrorCode::kNotConfigured,
                tenant.str() + " has not begun configuring " + key.to_string());
  }
  if (doc.version != current->second.version) {
    throw Error(ErrorCode::kVersionConflict,
                key.to_string() + " is at version " + std::to_string(current->second.version) +
                    ", update was based on " + std::to_string(doc.version));
  }
  ValidationReport report = validate_document(doc, cross_refs_locked(state));
  if (!report.ok()) throw ValidationFailed(std::move(report));

  TenantOverride entry{current->second.location, current->second.version + 1};
  storage::write_file_atomic(root_ / entry.location, serialize(doc));
  {
    std::lock_guard central_lock(central_mu_);
    update_central([&](CentralRegistry& next) {
      next.sections.at(key).tenant_locations[tenant] = entry;
    });
  }
  current->second = entry;
  notify(tenant, key);
  return entry.version;
}

bool TenantRegistry::reset(const Principal& caller, const TenantId& tenant, const DocKey& key) {
  guard_->require(caller, Action::kWrite, tenant, key.category);
  TenantState& state = state_for(tenant);
  require_key(key);
  std::unique_lock lock(state.mu);
  auto current = state.overrides.find(key);
  if (current == state.overrides.end()) return false;
  std::string location = current->second.location;
  {
    std::lock_guard central_lock(central_mu_);
    update_central([&](CentralRegistry& next) { next.sections.at(key).tenant_locations.erase(tenant); });
  }
  state.overrides.erase(current);
  std::error_code ec;
  fs::remove(root_ / location, ec);  // unregistered files are invisible anyway
  notify(tenant, key);
  return true;
}

void TenantRegistry::assign_tenant_database(const Principal& caller, const TenantId& tenant,
                                            DatabaseDescriptor db) {
  guard_->require(caller, Action::kDbAssign, tenant);
  state_for(tenant);
  std::lock_guard lock(central_mu_);
  update_central([&](CentralRegistry& next) {
    for (const auto& [owner, held] : next.tenant_databases) {
      if (owner != tenant && held == db) {
        throw Error(ErrorCode::kDatabaseAlreadyAssigned,
                    db.name + "@" + db.host + " belongs to " + owner.str());
      }
    }
    next.tenant_databases[tenant] = db;
  });
}

std::optional<DatabaseDescriptor> TenantRegistry::tenant_database(const Principal& caller,
                                                                  const TenantId& tenant) const {
  guard_->require(caller, Action::kRead, tenant);
  state_for(tenant);
  std::lock_guard lock(central_mu_);
  auto it = central_.tenant_databases.find(tenant);
  if (it == central_.tenant_databases.end()) return std::nullopt;
  return it->second;
}

std::uint64_t TenantRegistry::subscribe(ChangeListener listener) {
  std::lock_guard lock(listeners_mu_);
  listeners_.emplace(++next_listener_, std::move(listener));
  return next_listener_;
}

void TenantRegistry::unsubscribe(std::uint64_t id) {
  std::lock_guard lock(listeners_mu_);
  listeners_.erase(id);
}

void TenantRegistry::notify(const TenantId& tenant, const DocKey& key) {
  std::lock_guard lock(listeners_mu_);
  for (const auto& [id, listener] : listeners_) listener(tenant, key);
}

TenantRegistry::ReadSession TenantRegistry::open_read(const TenantId& tenant) const {
  return ReadSession(*this, state_for(tenant), tenant);
}

TenantRegistry::ReadSession::ReadSession(const TenantRegistry& registry, const TenantState& state,
                                         TenantId tenant)
    : registry_(registry), state_(state), tenant_(std::move(tenant)), lock_(state.mu) {}

std::optional<TenantOverride> TenantRegistry::ReadSession::override_for(const DocKey& key) const {
  auto it = state_.overrides.find(key);
  if (it == state_.overrides.end()) return std::nullopt;
  return it->second;
}

std::shared_ptr<const ConfigDocument> TenantRegistry::ReadSession::default_document(
    const DocKey& key) const {
  registry_.require_key(key);
  return registry_.defaults_.at(key);
}

std::shared_ptr<const ConfigDocument> TenantRegistry::ReadSession::read_override(
    const DocKey& key, const TenantOverride& entry) const {
  auto doc = std::make_shared<ConfigDocument>(
      parse(key, storage::read_file(registry_.root_ / entry.location)));
  doc->version = entry.version;
  return doc;
}

}  // namespace tenantconf
