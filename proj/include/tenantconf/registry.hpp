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

#ifndef TENANTCONF_REGISTRY_HPP
#define TENANTCONF_REGISTRY_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "tenantconf/guard.hpp"
#include "tenantconf/model.hpp"
#include "tenantconf/validation.hpp"

namespace tenantconf {

struct DatabaseDescriptor {
  std::string name;
  std::string host;
  auto operator<=>(const DatabaseDescriptor&) const = default;
};

struct TenantOverride {
  std::string location;  // relative to the data root
  std::uint64_t version = 0;
  bool operator==(const TenantOverride&) const = default;
};

struct RegistrySection {
  DocKey key;
  std::string default_location;
  std::map<TenantId, TenantOverride> tenant_locations;
  bool operator==(const RegistrySection&) const = default;
};

/// In-memory image of `central.xml`:
///
///   <CENTRAL>
///     <TENANTS><TENANT>T1</TENANT>...</TENANTS>
///     <SECTIONS>
///       <SECTION>
///         <CATEGORY>fields</CATEGORY>
///         <LANGUAGE>en</LANGUAGE>            (properties sections only)
///         <DEFAULT>defaults/fields.xml</DEFAULT>
///         <TENANTFILES>
///           <TENANTFILE><TENANT>T1</TENANT><LOCATION>tenants/T1/fields.xml</LOCATION>
///                       <VERSION>2</VERSION></TENANTFILE>
///         </TENANTFILES>
///       </SECTION>
///     </SECTIONS>
///     <TENANTDATABASES>
///       <TENANTDATABASE><TENANT>T1</TENANT><NAME>..</NAME><HOST>..</HOST></TENANTDATABASE>
///     </TENANTDATABASES>
///   </CENTRAL>
struct CentralRegistry {
  std::set<TenantId> tenants;
  std::map<DocKey, RegistrySection> sections;
  std::map<TenantId, DatabaseDescriptor> tenant_databases;

  /// Tenant file location registered for (tenant, key), if any.
  std::optional<std::string> lookup(const TenantId& tenant, const DocKey& key) const;

  /// Throws RegistryCorrupt or MissingDefault.
  static CentralRegistry parse(std::string_view bytes);
  std::string serialize() const;

  bool operator==(const CentralRegistry&) const = default;
};

inline constexpr std::string_view kCentralFile = "central.xml";
/// Advisory lock file serializing central.xml writers across processes.
inline constexpr std::string_view kLockFile = ".central.lock";

/// "defaults/<file>" and "tenants/<tenant>/<file>", relative to the root.
std::string default_location(const DocKey& key);
std::string tenant_location(const TenantId& tenant, const DocKey& key);

/// Writes a data root holding only vendor defaults: one file per document
/// plus a central.xml with no tenants. Overwrites existing files.
void install_defaults(const std::filesystem::path& root,
                      const std::vector<ConfigDocument>& defaults);

/// Owner of the central registry and the per-tenant document files. Every
/// public operation authorizes its caller through the IsolationGuard first.
class TenantRegistry {
 public:
  using ChangeListener = std::function<void(const TenantId&, const DocKey&)>;

  /// Loads and fully validates the registry under `root`. The caller must
  /// be the provider. Throws RegistryCorrupt, MissingDefault or
  /// DanglingLocation.
  static std::unique_ptr<TenantRegistry> load(const std::filesystem::path& root,
                                              std::shared_ptr<IsolationGuard> guard,
                                              const Principal& caller);

  ~TenantRegistry();

  const std::filesystem::path& root() const noexcept { return root_; }
  IsolationGuard& guard() noexcept { return *guard_; }

  /// Document keys with a registry section (immutable after load).
  const std::vector<DocKey>& keys() const noexcept { return keys_; }
  bool has_key(const DocKey& key) const;

  /// Vendor default for `key`. Defaults are not tenant data and need no
  /// authorization. Throws UnknownCategory or UnknownLanguage.
  std::shared_ptr<const ConfigDocument> default_document(const DocKey& key) const;

  CentralRegistry snapshot(const Principal& caller) const;
  std::optional<std::string> lookup(const Principal& caller, const TenantId& tenant,
                                    const DocKey& key) const;
  std::vector<TenantId> tenants(const Principal& caller) const;

  /// Adds a tenant with no overrides. Throws TenantExists.
  void register_tenant(const Principal& caller, const TenantId& tenant);

  /// Copies the vendor default into the tenant directory the first time a
  /// tenant configures `key` (returned at version 0); afterwards returns the
  /// tenant's current document.
  ConfigDocument begin_configure(const Principal& caller, const TenantId& tenant,
                                 const DocKey& key);

  /// Validates and atomically stores `doc`, returning its new version.
  /// Throws NotConfigured, VersionConflict (doc.version is not the stored
  /// version) or ValidationFailed.
  std::uint64_t commit(const Principal& caller, const TenantId& tenant, const DocKey& key,
                       ConfigDocument doc);

  /// Drops the tenant's override so `key` resolves to the vendor default
  /// again. Returns false when there was nothing to drop.
  bool reset(const Principal& caller, const TenantId& tenant, const DocKey& key);

  /// Throws DatabaseAlreadyAssigned when another tenant holds `db`.
  void assign_tenant_database(const Principal& caller, const TenantId& tenant,
                              DatabaseDescriptor db);
  std::optional<DatabaseDescriptor> tenant_database(const Principal& caller,
                                                    const TenantId& tenant) const;

  /// Listeners run on every begin_configure copy, commit and reset, while
  /// the tenant's write lock is held.
  std::uint64_t subscribe(ChangeListener listener);
  void unsubscribe(std::uint64_t id);

 private:
  friend class Resolver;
  struct TenantState;

  /// Consistent view of one tenant's overrides for the duration of a read.
  class ReadSession {
   public:
    const TenantId& tenant() const noexcept { return tenant_; }
    std::optional<TenantOverride> override_for(const DocKey& key) const;
    std::shared_ptr<const ConfigDocument> default_document(const DocKey& key) const;
    std::shared_ptr<const ConfigDocument> read_override(const DocKey& key,
                                                        const TenantOverride& entry) const;

   private:
    friend class TenantRegistry;
    ReadSession(const TenantRegistry& registry, const TenantState& state, TenantId tenant);

    const TenantRegistry& registry_;
    const TenantState& state_;
    TenantId tenant_;
    std::shared_lock<std::shared_mutex> lock_;
  };

  TenantRegistry(std::filesystem::path root, std::shared_ptr<IsolationGuard> guard);

  /// Unguarded; callers authorize first.
  ReadSession open_read(const TenantId& tenant) const;

  TenantState& state_for(const TenantId& tenant) const;
  void require_key(const DocKey& key) const;
  std::shared_ptr<const ConfigDocument> document_locked(const TenantState& state,
                                                        const DocKey& key) const;
  CrossRefs cross_refs_locked(const TenantState& state) const;
  /// Caller holds central_mu_.
  void update_central(const std::function<void(CentralRegistry&)>& mutate);
  void notify(const TenantId& tenant, const DocKey& key);

  const std::filesystem::path root_;
  std::shared_ptr<IsolationGuard> guard_;
  std::vector<DocKey> keys_;
  std::map<DocKey, std::shared_ptr<const ConfigDocument>> defaults_;

  // Mutable: state_for() picks up tenants registered by other processes.
  mutable std::shared_mutex tenants_mu_;
  mutable std::map<TenantId, std::unique_ptr<TenantState>> tenants_;

  // Master image of central.xml; lock order is tenant lock, then this.
  mutable std::mutex central_mu_;
  mutable CentralRegistry central_;

  std::mutex listeners_mu_;
  std::uint64_t next_listener_ = 0;
  std::map<std::uint64_t, ChangeListener> listeners_;
};

}  // namespace tenantconf

#endif  // TENANTCONF_REGISTRY_HPP
