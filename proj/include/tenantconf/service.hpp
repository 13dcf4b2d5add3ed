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

#ifndef TENANTCONF_SERVICE_HPP
#define TENANTCONF_SERVICE_HPP

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "tenantconf/guard.hpp"
#include "tenantconf/registry.hpp"
#include "tenantconf/resolver.hpp"

namespace tenantconf {

/// Guard, registry, resolver and credentials for one data root.
class Workspace {
 public:
  struct Options {
    std::optional<std::filesystem::path> tokens_file;
    std::optional<std::filesystem::path> audit_file;
    bool retain_audit = true;
    std::size_t cache_capacity = DocumentCache::kDefaultCapacity;
  };

  /// Throws on an unloadable registry or token file.
  static std::unique_ptr<Workspace> open(const std::filesystem::path& root, Options options);
  static std::unique_ptr<Workspace> open(const std::filesystem::path& root) {
    return open(root, Options{});
  }

  IsolationGuard& guard() noexcept { return *guard_; }
  AuditLog& audit() noexcept { return *audit_; }
  TenantRegistry& registry() noexcept { return *registry_; }
  Resolver& resolver() noexcept { return *resolver_; }
  TokenStore& tokens() noexcept { return tokens_; }

  /// Identity used by operator tooling that runs on the provider's side.
  static Principal operator_principal() { return Principal::provider("operator"); }

 private:
  Workspace() = default;

  std::shared_ptr<AuditLog> audit_;
  std::shared_ptr<IsolationGuard> guard_;
  std::unique_ptr<TenantRegistry> registry_;
  std::unique_ptr<Resolver> resolver_;
  TokenStore tokens_;
};

struct Branding {
  std::string name;
  std::string logo;
  bool operator==(const Branding&) const = default;
};

inline constexpr std::string_view kPlaceholderLogo = "/assets/logo-placeholder.svg";

/// From the tenant's `branding.name` and `branding.logo` settings.
/// Throws UnknownTenant.
Branding tenant_branding(Resolver& resolver, const Principal& caller, const TenantId& tenant);

struct ApiRequest {
  std::string method;  // GET, PUT, POST
  std::string path;    // URL-decoded, without the query string
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // names lower-cased
  std::string body;

  std::optional<std::string> header(std::string_view name) const;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

/// HTTP status for a library error code.
int http_status(ErrorCode code) noexcept;

/// The REST surface under /api/v1, independent of any transport. Every
/// request is authenticated from its bearer token, then each operation is
/// authorized by the guard. Thread-safe.
class Service {
 public:
  explicit Service(Workspace& workspace) : ws_(workspace) {}

  ApiResponse handle(const ApiRequest& request);

 private:
  ApiResponse route(const ApiRequest& request, const Principal& caller);

  Workspace& ws_;
};

/// Parses "host:port" (":port" binds every interface). Throws InvalidArgument.
std::pair<std::string, int> parse_bind(const std::string& bind);

/// Serves `service` over HTTP/1.1 until `stop` becomes true (polled) or the
/// listener fails. `on_ready` receives the bound port. Returns false when the
/// address cannot be bound.
bool serve(Service& service, const std::string& host, int port,
           const std::atomic<bool>* stop = nullptr,
           const std::function<void(int)>& on_ready = {});

}  // namespace tenantconf

#endif  // TENANTCONF_SERVICE_HPP
