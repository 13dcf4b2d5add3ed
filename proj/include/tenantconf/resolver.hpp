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

#ifndef TENANTCONF_RESOLVER_HPP
#define TENANTCONF_RESOLVER_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tenantconf/cache.hpp"
#include "tenantconf/guard.hpp"
#include "tenantconf/model.hpp"
#include "tenantconf/registry.hpp"

namespace tenantconf {

/// Everything the frontend needs to render one page for one role.
struct ResolvedPageView {
  std::string tenant;
  std::string page;
  std::string language;
  std::string role;
  std::vector<CssElement> css;
  std::vector<ImageElement> images;
  std::vector<ScriptElement> scripts;
  std::vector<PropertyEntry> labels;  // names starting with "<page>."
  std::vector<PropertyEntry> texts;
  std::vector<Block> blocks;          // display == true, document order
  std::vector<FieldPlacement> fields;  // display == true, document order
  /// Expected labels ("<page>.<field>" for every visible field) that the
  /// bundle does not define.
  std::vector<std::string> missing;
  bool operator==(const ResolvedPageView&) const = default;
};

struct BackendCallPlan {
  std::string be_name;
  std::string api;
  ConnectionState state = ConnectionState::kFull;
  Connection connection;
  /// Full keeps one connection for the application's lifetime; Less opens
  /// one per call.
  bool reuse_connection = true;
  bool operator==(const BackendCallPlan&) const = default;
};

struct RoleProfiles {
  std::string nav_bar;
  std::string technical;
  std::string layout;
  std::string pfcg;
  bool operator==(const RoleProfiles&) const = default;
};

struct BoStatus {
  std::string bo_name;
  bool enabled = true;
  bool operator==(const BoStatus&) const = default;
};

enum class BolDecision { kAllowed, kForbidden };

// Resolution rules as pure functions over resolved documents. The Resolver
// and the workflow engine share them; tests use them as building blocks.
namespace rules {

/// Enabled unless a toggle for `bo` says otherwise.
BoStatus bo_status(const BosDocument& bos, const std::string& bo);

/// Throws UnknownBackendObject or DanglingConnection.
BackendCallPlan backend_call(const BackendBindingsDocument& bindings,
                             const ConnectionsDocument& connections, const std::string& be);

/// Throws UnknownRole.
RoleProfiles role_profiles(const BusinessRolesDocument& roles, const std::string& role);

/// Allowed only for an explicit USE=True grant. Throws UnknownRole.
BolDecision bol_access(const BusinessRolesDocument& roles, const BolAccessDocument& access,
                       const std::string& role, const std::string& bol);

/// Mapped database, else the single Default one. Throws DanglingDatabase or
/// NoDefaultDatabase.
DatabaseDescriptor database_for(const DataObjectsDocument& dos, const DatabasesDocument& dbs,
                                const std::string& data_object);

std::optional<SettingValue> setting(const KeyValuesDocument& kv, const std::string& key);

/// Throws UnknownRole.
ResolvedPageView page_view(const std::string& tenant, const std::string& page,
                           const std::string& role, const CssDocument& css,
                           const ImagesDocument& images, const ScriptsDocument& scripts,
                           const PropertyBundle& properties, const BlocksDocument& blocks,
                           const FieldsDocument& fields, const BusinessRolesDocument& roles);

}  // namespace rules

/// Effective configuration for a tenant: the tenant's own document when the
/// registry lists one, the vendor default otherwise. Every public operation
/// authorizes the caller exactly once and reads under one registry snapshot
/// of the tenant, so a result never mixes pre- and post-commit files.
class Resolver {
 public:
  static constexpr std::size_t kDefaultViewCapacity = 256;

  explicit Resolver(TenantRegistry& registry,
                    std::size_t cache_capacity = DocumentCache::kDefaultCapacity,
                    std::size_t view_capacity = kDefaultViewCapacity);
  ~Resolver();

  Resolver(const Resolver&) = delete;
  Resolver& operator=(const Resolver&) = delete;

  std::shared_ptr<const ConfigDocument> resolve_category(const Principal& caller,
                                                         const TenantId& tenant,
                                                         const DocKey& key);

  /// Several documents under a single authorization and snapshot.
  std::map<DocKey, std::shared_ptr<const ConfigDocument>> resolve_set(
      const Principal& caller, const TenantId& tenant, const std::vector<DocKey>& keys);

  /// Throws UnknownRole or UnknownLanguage.
  std::shared_ptr<const ResolvedPageView> resolve_page_view(const Principal& caller,
                                                            const TenantId& tenant,
                                                            const std::string& page,
                                                            const std::string& language,
                                                            const std::string& role);

  BoStatus check_bo_enabled(const Principal& caller, const TenantId& tenant,
                            const std::string& bo);
  BackendCallPlan resolve_backend_call(const Principal& caller, const TenantId& tenant,
                                       const std::string& be);
  RoleProfiles resolve_role_profiles(const Principal& caller, const TenantId& tenant,
                                     const std::string& role);
  BolDecision check_bol_access(const Principal& caller, const TenantId& tenant,
                               const std::string& role, const std::string& bol);
  DatabaseDescriptor resolve_database(const Principal& caller, const TenantId& tenant,
                                      const std::string& data_object);
  std::optional<SettingValue> get_setting(const Principal& caller, const TenantId& tenant,
                                          const std::string& key);

  TenantRegistry& registry() noexcept { return registry_; }
  CacheStats document_stats() const { return documents_.stats(); }
  CacheStats view_stats() const;
  /// Tenant files read from storage so far (cache misses that hit disk).
  std::uint64_t storage_reads() const noexcept { return storage_reads_.load(); }

 private:
  // Override version per page-view input; kDefaultVersion stands for "the
  // vendor default".
  static constexpr std::size_t kViewInputs = 7;
  static constexpr std::uint64_t kDefaultVersion = UINT64_MAX;

  struct ViewKey {
    TenantId tenant;
    std::string page;
    std::string language;
    std::string role;
    std::array<std::uint64_t, kViewInputs> versions{};
    auto operator<=>(const ViewKey&) const = default;
  };
  struct ViewCache;

  std::shared_ptr<const ConfigDocument> load(const TenantRegistry::ReadSession& session,
                                             const DocKey& key);
  void on_change(const TenantId& tenant, const DocKey& key);

  TenantRegistry& registry_;
  DocumentCache documents_;
  std::unique_ptr<ViewCache> views_;
  std::atomic<std::uint64_t> storage_reads_{0};
  std::uint64_t subscription_ = 0;
};

}  // namespace tenantconf

#endif  // TENANTCONF_RESOLVER_HPP
