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

#ifndef TENANTCONF_GUARD_HPP
#define TENANTCONF_GUARD_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tenantconf/model.hpp"

namespace tenantconf {

enum class PrincipalKind { kTenant, kProvider };

/// Authenticated caller identity.
class Principal {
 public:
  static Principal tenant(TenantId id, std::string token = {});
  static Principal provider(std::string token = {});

  PrincipalKind kind() const noexcept { return kind_; }
  bool is_provider() const noexcept { return kind_ == PrincipalKind::kProvider; }
  /// Engaged iff kind() == kTenant.
  const std::optional<TenantId>& tenant_id() const noexcept { return tenant_; }
  const std::string& token() const noexcept { return token_; }

  /// "provider" or "tenant:<id>".
  std::string label() const;

 private:
  Principal(PrincipalKind kind, std::optional<TenantId> tenant, std::string token)
      : kind_(kind), tenant_(std::move(tenant)), token_(std::move(token)) {}

  PrincipalKind kind_;
  std::optional<TenantId> tenant_;
  std::string token_;
};

enum class Action { kRead, kWrite, kBeginConfigure, kRegistryRead, kRegistryWrite, kDbAssign };

std::string_view action_name(Action action) noexcept;

struct Decision {
  bool allowed = false;
  std::string reason;  // "cross-tenant", "provider-only"; empty when allowed

  static Decision allow() { return {true, {}}; }
  static Decision deny(std::string reason) { return {false, std::move(reason)}; }
  explicit operator bool() const noexcept { return allowed; }
  bool operator==(const Decision&) const = default;
};

/// The isolation policy as a pure function: a tenant may Read, Write and
/// BeginConfigure its own documents and nothing else; the provider may do
/// everything.
Decision decide(const Principal& principal, Action action,
                const std::optional<TenantId>& tenant);

enum class Outcome { kAllowed, kDenied };

struct AuditRecord {
  std::chrono::sys_time<std::chrono::milliseconds> timestamp;
  std::string principal;
  Action action = Action::kRead;
  std::optional<TenantId> tenant;
  std::optional<ConfigCategory> category;
  Outcome outcome = Outcome::kDenied;
};

/// Append-only audit trail. Records are kept in memory and, when a path is
/// given, appended as JSON lines
/// {"ts","principal","action","tenant","category","outcome"}.
/// Timestamps are non-decreasing in append order.
class AuditLog {
 public:
  explicit AuditLog(std::optional<std::filesystem::path> file = std::nullopt,
                    bool retain_in_memory = true);

  void append(AuditRecord record);

  std::uint64_t size() const;
  std::vector<AuditRecord> records() const;

  static std::string to_json_line(const AuditRecord& record);

 private:
  mutable std::mutex mu_;
  std::optional<std::ofstream> file_;
  bool retain_;
  std::vector<AuditRecord> records_;
  std::uint64_t count_ = 0;
  std::chrono::sys_time<std::chrono::milliseconds> last_{};
};

class IsolationGuard {
 public:
  explicit IsolationGuard(std::shared_ptr<AuditLog> audit = std::make_shared<AuditLog>());

  /// Decides and records exactly one audit entry.
  Decision authorize(const Principal& principal, Action action,
                     const std::optional<TenantId>& tenant,
                     std::optional<ConfigCategory> category = std::nullopt);

  /// authorize(), throwing Error(kAuthzDenied, reason) on Deny.
  void require(const Principal& principal, Action action, const std::optional<TenantId>& tenant,
               std::optional<ConfigCategory> category = std::nullopt);

  AuditLog& audit() noexcept { return *audit_; }

 private:
  std::shared_ptr<AuditLog> audit_;
};

/// Static bearer tokens from the provider-managed `tokens.xml`:
///   <TOKENS><TOKEN><VALUE>..</VALUE><KIND>Tenant|Provider</KIND><TENANT>..</TENANT></TOKEN></TOKENS>
/// TENANT is required for Tenant tokens and rejected for Provider tokens.
class TokenStore {
 public:
  static TokenStore parse(std::string_view bytes);
  static TokenStore load(const std::filesystem::path& path);

  void add(std::string token, Principal principal);
  std::optional<Principal> authenticate(std::string_view token) const;
  std::size_t size() const noexcept { return tokens_.size(); }

 private:
  std::map<std::string, Principal, std::less<>> tokens_;
};

}  // namespace tenantconf

#endif  // TENANTCONF_GUARD_HPP
