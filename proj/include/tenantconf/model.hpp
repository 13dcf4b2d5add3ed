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

#ifndef TENANTCONF_MODEL_HPP
#define TENANTCONF_MODEL_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tenantconf/errors.hpp"
#include "tenantconf/grid.hpp"

namespace tenantconf {

/// Tenant identifier: 1..64 chars of [A-Za-z0-9_-], compared exactly.
class TenantId {
 public:
  static constexpr std::size_t kMaxLength = 64;

  static bool is_valid(std::string_view id) noexcept;

  /// Throws Error(kInvalidArgument) when `id` is not a valid token.
  explicit TenantId(std::string id);

  const std::string& str() const noexcept { return id_; }

  auto operator<=>(const TenantId&) const = default;

 private:
  std::string id_;
};

enum class ConfigCategory {
  kCssElements,
  kImages,
  kScripts,
  kProperties,
  kBlocks,
  kFields,
  kFrontendBOs,
  kBackendBindings,
  kConnections,
  kBusinessRoles,
  kBolAccess,
  kDataObjects,
  kDatabases,
  kKeyValues,
  kWorkflows,
};

inline constexpr std::array<ConfigCategory, 15> kAllCategories = {
    ConfigCategory::kCssElements,     ConfigCategory::kImages,
    ConfigCategory::kScripts,         ConfigCategory::kProperties,
    ConfigCategory::kBlocks,          ConfigCategory::kFields,
    ConfigCategory::kFrontendBOs,     ConfigCategory::kBackendBindings,
    ConfigCategory::kConnections,     ConfigCategory::kBusinessRoles,
    ConfigCategory::kBolAccess,       ConfigCategory::kDataObjects,
    ConfigCategory::kDatabases,       ConfigCategory::kKeyValues,
    ConfigCategory::kWorkflows,
};

/// URL and file-name form, e.g. "business-roles".
std::string_view category_slug(ConfigCategory category) noexcept;
std::optional<ConfigCategory> category_from_slug(std::string_view slug) noexcept;
/// Root element of the category's XML document.
std::string_view category_root_tag(ConfigCategory category) noexcept;

/// IETF-style tag: 2-8 letters, then any number of "-" + 1-8 alphanumerics.
bool is_language_tag(std::string_view tag) noexcept;

/// Addresses one stored document. Only Properties documents carry a
/// language; every other category has exactly one document per owner.
struct DocKey {
  ConfigCategory category = ConfigCategory::kCssElements;
  std::string language;

  /// Validates the language rule; throws Error(kUnknownLanguage) for a
  /// Properties key without a valid tag and kInvalidArgument for a language
  /// on any other category.
  static DocKey make(ConfigCategory category, std::string language = {});

  /// "fields.xml", "properties.en.xml".
  std::string file_name() const;
  /// "fields", "properties.en".
  std::string to_string() const;

  auto operator<=>(const DocKey&) const = default;
};

// --- presentation layer -----------------------------------------------------

struct CssElement {
  std::string name;
  std::string location;
  bool operator==(const CssElement&) const = default;
};

struct ImageElement {
  std::string name;
  std::string src;
  bool operator==(const ImageElement&) const = default;
};

struct ScriptElement {
  std::string name;
  std::string src;
  bool operator==(const ScriptElement&) const = default;
};

/// One LABELELEMENT or TEXTELEMENT; names use the dotted `Page.Item` form.
struct PropertyEntry {
  std::string name;
  std::string value;
  bool operator==(const PropertyEntry&) const = default;
};

enum class LoadOption { kDirect, kLazy };

struct Block {
  std::string component;
  std::string view_name;
  std::string title;
  bool display = true;
  LoadOption load_option = LoadOption::kDirect;
  bool operator==(const Block&) const = default;
};

struct FieldPlacement {
  std::string field_name;
  bool display = true;
  GridCell position_from;
  GridCell position_to;
  bool operator==(const FieldPlacement&) const = default;
};

/// Every cell covered by the placement's span. Throws Error(kCoordinate)
/// when the span leaves its row or runs right-to-left.
std::set<GridCell> grid_cells(const FieldPlacement& placement);

// --- business object / backend layers ---------------------------------------

struct BoToggle {
  std::string bo_name;
  bool enabled = true;
  bool operator==(const BoToggle&) const = default;
};

/// Full keeps the connection open for the application's lifetime; Less
/// closes it after each call.
enum class ConnectionState { kFull, kLess };

struct BackendBinding {
  std::string be_name;
  std::string api;
  ConnectionState state = ConnectionState::kFull;
  std::string erp_backend;
  bool operator==(const BackendBinding&) const = default;
};

struct Connection {
  std::string name;
  std::string host;
  std::string client;  // three decimal digits
  bool operator==(const Connection&) const = default;
};

struct BusinessRole {
  std::string name;
  std::string description;
  std::string nav_bar_profile;
  std::string technical_profile;
  std::string layout_profile;
  std::string pfcg_role;
  bool operator==(const BusinessRole&) const = default;
};

struct BolGrant {
  std::string bol_name;
  bool use = false;
  bool operator==(const BolGrant&) const = default;
};

struct BolAccessRule {
  std::string role_name;
  std::optional<std::string> description;
  std::vector<BolGrant> grants;
  bool operator==(const BolAccessRule&) const = default;
};

struct DataObjectBinding {
  std::string do_name;
  std::string database_name;
  bool operator==(const DataObjectBinding&) const = default;
};

enum class DatabaseUse { kDefault, kRequest };

struct Database {
  std::string name;
  std::string host;
  DatabaseUse use = DatabaseUse::kRequest;
  bool operator==(const Database&) const = default;
};

/// Either a scalar or an unordered set of strings. Set equality ignores
/// item order.
class SettingValue {
 public:
  using Items = std::vector<std::string>;

  SettingValue() = default;
  static SettingValue scalar(std::string value);
  static SettingValue set(Items items);

  bool is_scalar() const noexcept { return std::holds_alternative<std::string>(value_); }
  bool is_set() const noexcept { return !is_scalar(); }
  const std::string& scalar_value() const { return std::get<std::string>(value_); }
  const Items& set_items() const { return std::get<Items>(value_); }

  bool operator==(const SettingValue& other) const;

 private:
  std::variant<std::string, Items> value_;
};

struct KeyValueSetting {
  std::string key;
  SettingValue value;
  bool operator==(const KeyValueSetting&) const = default;
};

struct WorkflowTask {
  std::uint32_t step_no = 1;
  std::string activity_type;
  std::string bo_name;
  std::string method;
  std::optional<std::string> rule;  // opaque guard expression
  bool operator==(const WorkflowTask&) const = default;
};

struct WorkflowDef {
  std::string id;
  std::string name;
  std::string role_binding;
  std::vector<WorkflowTask> tasks;
  bool operator==(const WorkflowDef&) const = default;
};

// --- documents --------------------------------------------------------------

template <ConfigCategory C, typename Entry>
struct EntryDocument {
  static constexpr ConfigCategory kCategory = C;
  using entry_type = Entry;

  std::vector<Entry> entries;
  bool operator==(const EntryDocument&) const = default;
};

using CssDocument = EntryDocument<ConfigCategory::kCssElements, CssElement>;
using ImagesDocument = EntryDocument<ConfigCategory::kImages, ImageElement>;
using ScriptsDocument = EntryDocument<ConfigCategory::kScripts, ScriptElement>;
using BlocksDocument = EntryDocument<ConfigCategory::kBlocks, Block>;
using FieldsDocument = EntryDocument<ConfigCategory::kFields, FieldPlacement>;
using BosDocument = EntryDocument<ConfigCategory::kFrontendBOs, BoToggle>;
using BackendBindingsDocument =
    EntryDocument<ConfigCategory::kBackendBindings, BackendBinding>;
using ConnectionsDocument = EntryDocument<ConfigCategory::kConnections, Connection>;
using BusinessRolesDocument =
    EntryDocument<ConfigCategory::kBusinessRoles, BusinessRole>;
using BolAccessDocument = EntryDocument<ConfigCategory::kBolAccess, BolAccessRule>;
using DataObjectsDocument =
    EntryDocument<ConfigCategory::kDataObjects, DataObjectBinding>;
using DatabasesDocument = EntryDocument<ConfigCategory::kDatabases, Database>;
using KeyValuesDocument = EntryDocument<ConfigCategory::kKeyValues, KeyValueSetting>;
using WorkflowsDocument = EntryDocument<ConfigCategory::kWorkflows, WorkflowDef>;

/// Labels and texts for one language. The language travels in the file
/// name, not in the XML body.
struct PropertyBundle {
  static constexpr ConfigCategory kCategory = ConfigCategory::kProperties;

  std::string language;
  std::vector<PropertyEntry> labels;
  std::vector<PropertyEntry> texts;
  bool operator==(const PropertyBundle&) const = default;
};

// Alternative order matches ConfigCategory.
using DocumentBody =
    std::variant<CssDocument, ImagesDocument, ScriptsDocument, PropertyBundle,
                 BlocksDocument, FieldsDocument, BosDocument,
                 BackendBindingsDocument, ConnectionsDocument,
                 BusinessRolesDocument, BolAccessDocument, DataObjectsDocument,
                 DatabasesDocument, KeyValuesDocument, WorkflowsDocument>;

struct ConfigDocument {
  DocumentBody body;
  std::uint64_t version = 0;

  static ConfigDocument empty(ConfigCategory category, std::string language = {});

  ConfigCategory category() const noexcept {
    return static_cast<ConfigCategory>(body.index());
  }
  DocKey key() const;

  template <typename T>
  const T& as() const { return std::get<T>(body); }
  template <typename T>
  T& as() { return std::get<T>(body); }

  bool operator==(const ConfigDocument&) const = default;
};

/// Name that identifies an entry within its document (used for duplicate
/// detection and entry-level diffs).
inline const std::string& entry_key(const CssElement& e) { return e.name; }
inline const std::string& entry_key(const ImageElement& e) { return e.name; }
inline const std::string& entry_key(const ScriptElement& e) { return e.name; }
inline const std::string& entry_key(const FieldPlacement& e) { return e.field_name; }
inline const std::string& entry_key(const BoToggle& e) { return e.bo_name; }
inline const std::string& entry_key(const BackendBinding& e) { return e.be_name; }
inline const std::string& entry_key(const Connection& e) { return e.name; }
inline const std::string& entry_key(const BusinessRole& e) { return e.name; }
inline const std::string& entry_key(const BolAccessRule& e) { return e.role_name; }
inline const std::string& entry_key(const DataObjectBinding& e) { return e.do_name; }
inline const std::string& entry_key(const Database& e) { return e.name; }
inline const std::string& entry_key(const KeyValueSetting& e) { return e.key; }
inline const std::string& entry_key(const WorkflowDef& e) { return e.id; }
std::string entry_key(const Block& b);  // "component/view_name"

}  // namespace tenantconf

#endif  // TENANTCONF_MODEL_HPP
