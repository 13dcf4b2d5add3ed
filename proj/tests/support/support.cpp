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

#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "tenantconf/codec.hpp"
#include "tenantconf/xml.hpp"

#ifndef TENANTCONF_SOURCE_DIR
#error "TENANTCONF_SOURCE_DIR must point at the repository root"
#endif

namespace tenantconf::testing {

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("tenantconf-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) +
           "-" + std::to_string(rd()));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path source_dir() { return fs::path(TENANTCONF_SOURCE_DIR); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string reference_fixture(const std::string& name) {
  return read_text(source_dir() / "tests" / "fixtures" / "reference" / name);
}

DocKey key_for_file(const std::string& name) {
  std::string stem = name.substr(0, name.size() - 4);  // ".xml"
  std::string language;
  if (auto dot = stem.find('.'); dot != std::string::npos) {
    language = stem.substr(dot + 1);
    stem.resize(dot);
  }
  return DocKey::make(*category_from_slug(stem), language);
}

fs::path make_data_root(const fs::path& dir) {
  const fs::path data = source_dir() / "data";
  fs::create_directories(dir / "defaults");
  fs::create_directories(dir / "tenants");
  fs::copy_file(data / "central.xml", dir / "central.xml");
  for (const auto& entry : fs::directory_iterator(data / "defaults")) {
    fs::copy_file(entry.path(), dir / "defaults" / entry.path().filename());
  }
  return dir;
}

std::map<DocKey, ConfigDocument> shipped_defaults() {
  std::map<DocKey, ConfigDocument> out;
  for (const auto& entry : fs::directory_iterator(source_dir() / "data" / "defaults")) {
    DocKey key = key_for_file(entry.path().filename().string());
    out.emplace(key, parse(key, read_text(entry.path())));
  }
  return out;
}

Stack::Stack(const fs::path& root, std::size_t cache_capacity)
    : audit(std::make_shared<AuditLog>()), guard(std::make_shared<IsolationGuard>(audit)) {
  registry = TenantRegistry::load(root, guard, provider);
  resolver = std::make_unique<Resolver>(*registry, cache_capacity);
}

// --- generators -------------------------------------------------------------

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

std::size_t upto(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n)(rng);
}

bool coin(Rng& rng) { return rng() & 1; }

GridCell random_cell(Rng& rng) {
  return GridCell{std::uniform_int_distribution<std::uint32_t>(1, 702)(rng),
                  std::uniform_int_distribution<std::uint32_t>(1, 1048576)(rng)};
}

std::string random_client(Rng& rng) {
  std::string s(3, '0');
  for (char& c : s) c = static_cast<char>('0' + upto(rng, 9));
  return s;
}

std::vector<std::string> unique_idents(Rng& rng, std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i) + random_ident(rng, 4));
  return out;
}

}  // namespace

std::string random_text(Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> pool = {
      "a", "b", "Z", "0", "7", " ", " ", "&", "<", ">", "\"", "'", ";", "#", "/",
      "&amp;", "\t", "\n", "\r", "\x01", "\x1f", "\xc3\xa9", "\xe2\x82\xac", "\xf0\x9f\x98\x80",
      "x", "y", ".", "-", "_", "]]>", "<!--"};
  std::string out;
  std::size_t len = upto(rng, max_len);
  for (std::size_t i = 0; i < len; ++i) out += pick(rng, pool);
  return out;
}

std::string random_ident(Rng& rng, std::size_t max_len) {
  static const std::string chars =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_";
  std::size_t len = 1 + upto(rng, max_len - 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += chars[upto(rng, chars.size() - 1)];
  return out;
}

ConfigDocument random_document(ConfigCategory category, Rng& rng, std::size_t max_entries) {
  ConfigDocument doc = ConfigDocument::empty(category, category == ConfigCategory::kProperties ? "en" : "");
  const std::size_t n = upto(rng, max_entries);
  auto text = [&] { return random_text(rng); };
  std::visit(
      [&](auto& body) {
        using Body = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<Body, PropertyBundle>) {
          for (std::size_t i = 0; i < n; ++i) body.labels.push_back({text(), text()});
          for (std::size_t i = upto(rng, max_entries); i > 0; --i) body.texts.push_back({text(), text()});
        } else {
          using Entry = typename Body::entry_type;
          for (std::size_t i = 0; i < n; ++i) {
            Entry e;
            if constexpr (std::is_same_v<Entry, CssElement>) {
              e = {text(), text()};
            } else if constexpr (std::is_same_v<Entry, ImageElement> ||
                                 std::is_same_v<Entry, ScriptElement>) {
              e = {text(), text()};
            } else if constexpr (std::is_same_v<Entry, Block>) {
              e = {text(), text(), text(), coin(rng), coin(rng) ? LoadOption::kDirect : LoadOption::kLazy};
            } else if constexpr (std::is_same_v<Entry, FieldPlacement>) {
              e = {text(), coin(rng), random_cell(rng), random_cell(rng)};
            } else if constexpr (std::is_same_v<Entry, BoToggle>) {
              e = {text(), coin(rng)};
            } else if constexpr (std::is_same_v<Entry, BackendBinding>) {
              e = {text(), text(), coin(rng) ? ConnectionState::kFull : ConnectionState::kLess, text()};
            } else if constexpr (std::is_same_v<Entry, Connection>) {
              e = {text(), text(), random_client(rng)};
            } else if constexpr (std::is_same_v<Entry, BusinessRole>) {
              e = {text(), text(), text(), text(), text(), text()};
            } else if constexpr (std::is_same_v<Entry, BolAccessRule>) {
              e.role_name = text();
              if (coin(rng)) e.description = text();
              for (std::size_t g = upto(rng, 4); g > 0; --g) e.grants.push_back({text(), coin(rng)});
            } else if constexpr (std::is_same_v<Entry, DataObjectBinding>) {
              e = {text(), text()};
            } else if constexpr (std::is_same_v<Entry, Database>) {
              e = {text(), text(), coin(rng) ? DatabaseUse::kDefault : DatabaseUse::kRequest};
            } else if constexpr (std::is_same_v<Entry, KeyValueSetting>) {
              e.key = text();
              if (coin(rng)) {
                e.value = SettingValue::scalar(text());
              } else {
                SettingValue::Items items;
                for (std::size_t k = upto(rng, 4); k > 0; --k) items.push_back(text());
                e.value = SettingValue::set(std::move(items));
              }
            } else if constexpr (std::is_same_v<Entry, WorkflowDef>) {
              e = {text(), text(), text(), {}};
              for (std::size_t t = upto(rng, 4); t > 0; --t) {
                WorkflowTask task{static_cast<std::uint32_t>(1 + upto(rng, 100000)), text(), text(),
                                  text(), std::nullopt};
                if (coin(rng)) task.rule = text();
                e.tasks.push_back(std::move(task));
              }
            }
            body.entries.push_back(std::move(e));
          }
        }
      },
      doc.body);
  return doc;
}

ConfigDocument valid_document(const DocKey& key, Rng& rng, const WorldNames& names,
                              std::size_t max_entries) {
  ConfigDocument doc = ConfigDocument::empty(key.category, key.language);
  const std::size_t n = upto(rng, max_entries);
  auto text = [&] { return random_text(rng, 8); };
  static const std::vector<std::string> bols = {"SALES_BOL", "FINANCE_BOL", "HR_BOL", "UNASSIGNED",
                                                "LOGISTICS_BOL"};
  static const std::vector<std::string> pages = {"Page1", "Page2", "Home"};

  switch (key.category) {
    case ConfigCategory::kCssElements:
      for (const auto& id : unique_idents(rng, n, "css")) {
        doc.as<CssDocument>().entries.push_back({id, text()});
      }
      break;
    case ConfigCategory::kImages:
      for (const auto& id : unique_idents(rng, n, "img")) {
        doc.as<ImagesDocument>().entries.push_back({id, text()});
      }
      break;
    case ConfigCategory::kScripts:
      for (const auto& id : unique_idents(rng, n, "js")) {
        doc.as<ScriptsDocument>().entries.push_back({id, text()});
      }
      break;
    case ConfigCategory::kProperties: {
      auto& bundle = doc.as<PropertyBundle>();
      bundle.language = key.language;
      std::size_t i = 0;
      for (const auto& id : unique_idents(rng, n, "L")) {
        bundle.labels.push_back({pages[i++ % pages.size()] + "." + id, text()});
      }
      // Labels for the field names valid_document uses, so views are
      // sometimes complete.
      for (std::size_t f = 0; f < 3; ++f) {
        if (coin(rng)) bundle.labels.push_back({pick(rng, pages) + ".F" + std::to_string(f), text()});
      }
      std::sort(bundle.labels.begin(), bundle.labels.end(),
                [](const auto& a, const auto& b) { return a.name < b.name; });
      bundle.labels.erase(std::unique(bundle.labels.begin(), bundle.labels.end(),
                                      [](const auto& a, const auto& b) { return a.name == b.name; }),
                          bundle.labels.end());
      for (const auto& id : unique_idents(rng, upto(rng, max_entries), "T")) {
        bundle.texts.push_back({pick(rng, pages) + "." + id, text()});
      }
      break;
    }
    case ConfigCategory::kBlocks:
      for (const auto& id : unique_idents(rng, n, "Component ")) {
        doc.as<BlocksDocument>().entries.push_back(
            {id, "View" + random_ident(rng, 3), text(), coin(rng),
             coin(rng) ? LoadOption::kDirect : LoadOption::kLazy});
      }
      break;
    case ConfigCategory::kFields: {
      // Distinct rows, so no two placements can overlap.
      std::size_t i = 0;
      for (const auto& id : unique_idents(rng, n, "F")) {
        auto from = static_cast<std::uint32_t>(1 + upto(rng, 20));
        auto to = from + static_cast<std::uint32_t>(upto(rng, 10));
        auto row = static_cast<std::uint32_t>(3 + 2 * i++);
        doc.as<FieldsDocument>().entries.push_back(
            {id, coin(rng), GridCell{from, row}, GridCell{to, row}});
      }
      break;
    }
    case ConfigCategory::kFrontendBOs:
      for (const auto& id : unique_idents(rng, n, "BO")) {
        doc.as<BosDocument>().entries.push_back({id, coin(rng)});
      }
      break;
    case ConfigCategory::kBackendBindings:
      for (const auto& id : unique_idents(rng, n, "BE")) {
        doc.as<BackendBindingsDocument>().entries.push_back(
            {id, "API" + random_ident(rng, 3), coin(rng) ? ConnectionState::kFull : ConnectionState::kLess,
             pick(rng, names.connections)});
      }
      break;
    case ConfigCategory::kConnections:
      for (const auto& name : names.connections) {
        doc.as<ConnectionsDocument>().entries.push_back({name, text() + "host", random_client(rng)});
      }
      break;
    case ConfigCategory::kBusinessRoles:
      for (const auto& name : names.roles) {
        doc.as<BusinessRolesDocument>().entries.push_back(
            {name, text(), "NAV_" + random_ident(rng, 4), "TEC_" + random_ident(rng, 4),
             "LAY_" + random_ident(rng, 4), "PFCG_" + random_ident(rng, 4)});
      }
      break;
    case ConfigCategory::kBolAccess:
      for (const auto& role : names.roles) {
        if (!coin(rng)) continue;
        BolAccessRule rule{role, std::nullopt, {}};
        if (coin(rng)) rule.description = text();
        for (const auto& bol : bols) {
          if (coin(rng)) rule.grants.push_back({bol, coin(rng)});
        }
        doc.as<BolAccessDocument>().entries.push_back(std::move(rule));
      }
      break;
    case ConfigCategory::kDataObjects:
      for (const auto& id : unique_idents(rng, n, "DO")) {
        doc.as<DataObjectsDocument>().entries.push_back({id, pick(rng, names.databases)});
      }
      break;
    case ConfigCategory::kDatabases: {
      std::size_t def = upto(rng, names.databases.size() - 1);
      for (std::size_t i = 0; i < names.databases.size(); ++i) {
        doc.as<DatabasesDocument>().entries.push_back(
            {names.databases[i], text() + "dbhost",
             i == def ? DatabaseUse::kDefault : DatabaseUse::kRequest});
      }
      break;
    }
    case ConfigCategory::kKeyValues:
      for (const auto& id : unique_idents(rng, n, "key.")) {
        if (coin(rng)) {
          doc.as<KeyValuesDocument>().entries.push_back({id, SettingValue::scalar(text())});
        } else {
          SettingValue::Items items = unique_idents(rng, 1 + upto(rng, 4), "item");
          std::shuffle(items.begin(), items.end(), rng);
          doc.as<KeyValuesDocument>().entries.push_back({id, SettingValue::set(std::move(items))});
        }
      }
      break;
    case ConfigCategory::kWorkflows:
      for (const auto& id : unique_idents(rng, n, "WF")) {
        WorkflowDef wf{id, text(), pick(rng, names.roles), {}};
        std::uint32_t step = 0;
        for (std::size_t t = 1 + upto(rng, 4); t > 0; --t) {
          step += static_cast<std::uint32_t>(1 + upto(rng, 3));
          wf.tasks.push_back({step, text(), "BO" + std::to_string(upto(rng, 5)), "M" + random_ident(rng, 3),
                              coin(rng) ? std::optional<std::string>(text()) : std::nullopt});
        }
        doc.as<WorkflowsDocument>().entries.push_back(std::move(wf));
      }
      break;
  }
  return doc;
}

// --- naive resolver ---------------------------------------------------------

namespace {

const xml::Element* first_child(const xml::Element& e, const std::string& name) {
  for (const auto& c : e.children) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string child_text(const xml::Element& e, const std::string& name) {
  const xml::Element* c = first_child(e, name);
  return c ? c->text : std::string();
}

}  // namespace

ConfigDocument NaiveResolver::category(const TenantId& tenant, const DocKey& key) const {
  xml::Element central = xml::parse(read_text(root_ / "central.xml"));
  bool known = false;
  for (const auto& t : first_child(central, "TENANTS")->children) known |= t.text == tenant.str();
  if (!known) throw Error(ErrorCode::kUnknownTenant, tenant.str());

  for (const auto& section : first_child(central, "SECTIONS")->children) {
    if (child_text(section, "CATEGORY") != category_slug(key.category)) continue;
    if (child_text(section, "LANGUAGE") != key.language) continue;
    std::string location = child_text(section, "DEFAULT");
    std::uint64_t version = 0;
    if (const xml::Element* files = first_child(section, "TENANTFILES")) {
      for (const auto& f : files->children) {
        if (child_text(f, "TENANT") == tenant.str()) {
          location = child_text(f, "LOCATION");
          version = std::stoull(child_text(f, "VERSION"));
        }
      }
    }
    ConfigDocument doc = parse(key, read_text(root_ / location));
    doc.version = version;
    return doc;
  }
  throw Error(key.category == ConfigCategory::kProperties ? ErrorCode::kUnknownLanguage
                                                          : ErrorCode::kUnknownCategory,
              key.to_string());
}

namespace {

DocKey plain(ConfigCategory c) { return DocKey{c, {}}; }

}  // namespace

ResolvedPageView NaiveResolver::page_view(const TenantId& tenant, const std::string& page,
                                          const std::string& language,
                                          const std::string& role) const {
  category(tenant, plain(ConfigCategory::kCssElements));  // tenant check
  if (!is_language_tag(language)) throw Error(ErrorCode::kUnknownLanguage, language);
  ConfigDocument props = category(tenant, DocKey{ConfigCategory::kProperties, language});
  role_profiles(tenant, role);

  ResolvedPageView v;
  v.tenant = tenant.str();
  v.page = page;
  v.language = language;
  v.role = role;
  v.css = category(tenant, plain(ConfigCategory::kCssElements)).as<CssDocument>().entries;
  v.images = category(tenant, plain(ConfigCategory::kImages)).as<ImagesDocument>().entries;
  v.scripts = category(tenant, plain(ConfigCategory::kScripts)).as<ScriptsDocument>().entries;
  const std::string prefix = page + ".";
  for (const auto& l : props.as<PropertyBundle>().labels) {
    if (l.name.size() >= prefix.size() && l.name.substr(0, prefix.size()) == prefix) v.labels.push_back(l);
  }
  for (const auto& t : props.as<PropertyBundle>().texts) {
    if (t.name.size() >= prefix.size() && t.name.substr(0, prefix.size()) == prefix) v.texts.push_back(t);
  }
  const ConfigDocument blocks = category(tenant, plain(ConfigCategory::kBlocks));
  for (const auto& b : blocks.as<BlocksDocument>().entries) {
    if (b.display) v.blocks.push_back(b);
  }
  const ConfigDocument fields = category(tenant, plain(ConfigCategory::kFields));
  for (const auto& f : fields.as<FieldsDocument>().entries) {
    if (f.display) v.fields.push_back(f);
  }
  for (const auto& f : v.fields) {
    std::string want = prefix + f.field_name;
    bool found = false;
    for (const auto& l : v.labels) found |= l.name == want;
    bool listed = std::find(v.missing.begin(), v.missing.end(), want) != v.missing.end();
    if (!found && !listed) v.missing.push_back(want);
  }
  return v;
}

BoStatus NaiveResolver::bo(const TenantId& tenant, const std::string& bo) const {
  const ConfigDocument bos = category(tenant, plain(ConfigCategory::kFrontendBOs));
  for (const auto& t : bos.as<BosDocument>().entries) {
    if (t.bo_name == bo) return BoStatus{bo, t.enabled};
  }
  return BoStatus{bo, true};
}

BackendCallPlan NaiveResolver::backend_call(const TenantId& tenant, const std::string& be) const {
  auto bindings = category(tenant, plain(ConfigCategory::kBackendBindings));
  auto connections = category(tenant, plain(ConfigCategory::kConnections));
  for (const auto& b : bindings.as<BackendBindingsDocument>().entries) {
    if (b.be_name != be) continue;
    for (const auto& c : connections.as<ConnectionsDocument>().entries) {
      if (c.name == b.erp_backend) {
        return BackendCallPlan{b.be_name, b.api, b.state, c, b.state == ConnectionState::kFull};
      }
    }
    throw Error(ErrorCode::kDanglingConnection, b.erp_backend);
  }
  throw Error(ErrorCode::kUnknownBackendObject, be);
}

RoleProfiles NaiveResolver::role_profiles(const TenantId& tenant, const std::string& role) const {
  auto roles = category(tenant, plain(ConfigCategory::kBusinessRoles));
  for (const auto& r : roles.as<BusinessRolesDocument>().entries) {
    if (r.name == role) return RoleProfiles{r.nav_bar_profile, r.technical_profile, r.layout_profile, r.pfcg_role};
  }
  throw Error(ErrorCode::kUnknownRole, role);
}

BolDecision NaiveResolver::bol_access(const TenantId& tenant, const std::string& role,
                                      const std::string& bol) const {
  role_profiles(tenant, role);
  auto access = category(tenant, plain(ConfigCategory::kBolAccess));
  for (const auto& rule : access.as<BolAccessDocument>().entries) {
    if (rule.role_name != role) continue;
    for (const auto& g : rule.grants) {
      if (g.bol_name == bol) return g.use ? BolDecision::kAllowed : BolDecision::kForbidden;
    }
    return BolDecision::kForbidden;
  }
  return BolDecision::kForbidden;
}

DatabaseDescriptor NaiveResolver::database(const TenantId& tenant,
                                           const std::string& data_object) const {
  auto dos = category(tenant, plain(ConfigCategory::kDataObjects));
  auto dbs = category(tenant, plain(ConfigCategory::kDatabases)).as<DatabasesDocument>().entries;
  for (const auto& d : dos.as<DataObjectsDocument>().entries) {
    if (d.do_name != data_object) continue;
    for (const auto& db : dbs) {
      if (db.name == d.database_name) return DatabaseDescriptor{db.name, db.host};
    }
    throw Error(ErrorCode::kDanglingDatabase, d.database_name);
  }
  std::vector<Database> defaults;
  for (const auto& db : dbs) {
    if (db.use == DatabaseUse::kDefault) defaults.push_back(db);
  }
  if (defaults.size() != 1) throw Error(ErrorCode::kNoDefaultDatabase, "");
  return DatabaseDescriptor{defaults[0].name, defaults[0].host};
}

std::optional<SettingValue> NaiveResolver::setting(const TenantId& tenant,
                                                   const std::string& key) const {
  const ConfigDocument settings = category(tenant, plain(ConfigCategory::kKeyValues));
  for (const auto& kv : settings.as<KeyValuesDocument>().entries) {
    if (kv.key == key) return kv.value;
  }
  return std::nullopt;
}

}  // namespace tenantconf::testing
