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

#ifndef TENANTCONF_TESTS_SUPPORT_HPP
#define TENANTCONF_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tenantconf/errors.hpp"
#include "tenantconf/guard.hpp"
#include "tenantconf/model.hpp"
#include "tenantconf/registry.hpp"
#include "tenantconf/resolver.hpp"
#include "tenantconf/workflow.hpp"

namespace tenantconf::testing {

namespace fs = std::filesystem;
using Rng = std::mt19937_64;

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
};

fs::path source_dir();
std::string read_text(const fs::path& path);
void write_text(const fs::path& path, std::string_view text);

/// Bytes of tests/fixtures/reference/<name>.
std::string reference_fixture(const std::string& name);
/// Key implied by a fixture or data file name ("properties.en.xml").
DocKey key_for_file(const std::string& name);

/// Copies the shipped data/ tree (central.xml and defaults) into `dir`.
fs::path make_data_root(const fs::path& dir);

/// Vendor defaults shipped in data/defaults, parsed.
std::map<DocKey, ConfigDocument> shipped_defaults();

/// Registry plus resolver over a data root, loaded as the provider.
struct Stack {
  explicit Stack(const fs::path& root, std::size_t cache_capacity = 1024);
  std::shared_ptr<AuditLog> audit;
  std::shared_ptr<IsolationGuard> guard;
  std::unique_ptr<TenantRegistry> registry;
  std::unique_ptr<Resolver> resolver;
  Principal provider = Principal::provider("p");
};

// --- generators -------------------------------------------------------------

/// Arbitrary UTF-8 text without NUL: markup characters, quotes, entities,
/// edge whitespace, control characters and multibyte sequences.
std::string random_text(Rng& rng, std::size_t max_len = 12);
/// Non-empty [A-Za-z0-9_] identifier.
std::string random_ident(Rng& rng, std::size_t max_len = 8);

/// Structurally well-formed document with arbitrary contents (it need not
/// validate).
ConfigDocument random_document(ConfigCategory category, Rng& rng, std::size_t max_entries = 8);

/// Names other documents may reference.
struct WorldNames {
  std::vector<std::string> connections{"CRM7"};
  std::vector<std::string> roles{"SP_ROLE"};
  std::vector<std::string> databases{"CRMDB", "CRMBI"};
};

/// Document that passes validate_document against `names`, where the
/// connection, role and database documents declare exactly `names`.
ConfigDocument valid_document(const DocKey& key, Rng& rng, const WorldNames& names,
                              std::size_t max_entries = 20);

// --- naive resolver ---------------------------------------------------------

template <typename T>
using Outcome = std::variant<T, ErrorCode>;

template <typename F>
auto capture(F&& f) -> Outcome<decltype(f())> {
  try {
    return f();
  } catch (const Error& e) {
    return e.code();
  }
}

/// Code of the Error thrown by `f`, or nullopt when it returns normally.
template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Re-reads central.xml and the referenced files on every call and answers
/// each resolver question with straightforward loops. Shares nothing with
/// the production resolver except the document codec.
class NaiveResolver {
 public:
  explicit NaiveResolver(fs::path root) : root_(std::move(root)) {}

  ConfigDocument category(const TenantId& tenant, const DocKey& key) const;
  ResolvedPageView page_view(const TenantId& tenant, const std::string& page,
                             const std::string& language, const std::string& role) const;
  BoStatus bo(const TenantId& tenant, const std::string& bo) const;
  BackendCallPlan backend_call(const TenantId& tenant, const std::string& be) const;
  RoleProfiles role_profiles(const TenantId& tenant, const std::string& role) const;
  BolDecision bol_access(const TenantId& tenant, const std::string& role,
                         const std::string& bol) const;
  DatabaseDescriptor database(const TenantId& tenant, const std::string& data_object) const;
  std::optional<SettingValue> setting(const TenantId& tenant, const std::string& key) const;

 private:
  fs::path root_;
};

}  // namespace tenantconf::testing

#endif  // TENANTCONF_TESTS_SUPPORT_HPP
