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

#include "tenantconf/guard.hpp"

#include <ctime>
#include <cstdio>
#include <utility>

#include <json.hpp>

#include "tenantconf/errors.hpp"
#include "tenantconf/storage.hpp"
#include "tenantconf/xml.hpp"

namespace tenantconf {

namespace {

std::string format_timestamp(std::chrono::sys_time<std::chrono::milliseconds> ts) {
  auto secs = std::chrono::floor<std::chrono::seconds>(ts);
  auto millis = (ts - secs).count();
  std::time_t t = std::chrono::system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(millis));
  return buf;
}

bool provider_only(Action action) {
  return action == Action::kRegistryRead || action == Action::kRegistryWrite ||
         action == Action::kDbAssign;
}

}  // namespace

Principal Principal::tenant(TenantId id, std::string token) {
  return Principal(PrincipalKind::kTenant, std::move(id), std::move(token));
}

Principal Principal::provider(std::string token) {
  return Principal(PrincipalKind::kProvider, std::nullopt, std::move(token));
}

std::string Principal::label() const {
  return is_provider() ? std::string("provider") : "tenant:" + tenant_->str();
}

std::string_view action_name(Action action) noexcept {
  switch (action) {
    case Action::kRead: return "Read";
    case Action::kWrite: return "Write";
    case Action::kBeginConfigure: return "BeginConfigure";
    case Action::kRegistryRead: return "RegistryRead";
    case Action::kRegistryWrite: return "RegistryWrite";
    case Action::kDbAssign: return "DbAssign";
  }
  return "Read";
}

Decision decide(const Principal& principal, Action action, const std::optional<TenantId>& tenant) {
  if (principal.is_provider()) return Decision::allow();
  if (provider_only(action)) return Decision::deny("provider-only");
  if (!tenant || *tenant != *principal.tenant_id()) return Decision::deny("cross-tenant");
  return Decision::allow();
}

AuditLog::AuditLog(std::optional<std::filesystem::path> file, bool retain_in_memory)
    : retain_(retain_in_memory) {
  if (file) {
    file_.emplace(*file, std::ios::app);
    if (!*file_) throw Error(ErrorCode::kStorage, "cannot open audit log " + file->string());
  }
}

void AuditLog::append(AuditRecord record) {
  std::lock_guard lock(mu_);
  // Clamp so a clock step backwards never reorders the log.
  if (record.timestamp < last_) record.timestamp = last_;
  last_ = record.timestamp;
  ++count_;
  if (file_) {
    *file_ << to_json_line(record) << '\n';
    file_->flush();
  }
  if (retain_) records_.push_back(std::move(record));
}

std::uint64_t AuditLog::size() const {
  std::lock_guard lock(mu_);
  return count_;
}

std::vector<AuditRecord> AuditLog::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::string AuditLog::to_json_line(const AuditRecord& record) {
  nlohmann::ordered_json j;
  j["ts"] = format_timestamp(record.timestamp);
  j["principal"] = record.principal;
  j["action"] = action_name(record.action);
  j["tenant"] = record.tenant ? nlohmann::ordered_json(record.tenant->str()) : nullptr;
  j["category"] = record.category
                      ? nlohmann::ordered_json(std::string(category_slug(*record.category)))
                      : nullptr;
  j["outcome"] = record.outcome == Outcome::kAllowed ? "Allowed" : "Denied";
  return j.dump();
}

IsolationGuard::IsolationGuard(std::shared_ptr<AuditLog> audit) : audit_(std::move(audit)) {}

Decision IsolationGuard::authorize(const Principal& principal, Action action,
                                   const std::optional<TenantId>& tenant,
                                   std::optional<ConfigCategory> category) {
  Decision decision = decide(principal, action, tenant);
  audit_->append(AuditRecord{
      std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now()),
      principal.label(), action, tenant, category,
      decision.allowed ? Outcome::kAllowed : Outcome::kDenied});
  return decision;
}

void IsolationGuard::require(const Principal& principal, Action action,
                             const std::optional<TenantId>& tenant,
                             std::optional<ConfigCategory> category) {
  Decision decision = authorize(principal, action, tenant, category);
  if (!decision) throw Error(ErrorCode::kAuthzDenied, decision.reason);
}

TokenStore TokenStore::parse(std::string_view bytes) {
  auto bad = [](const std::string& why) {
    return Error(ErrorCode::kInvalidArgument, "tokens file: " + why);
  };
  xml::Element root;
  try {
    root = xml::parse(bytes);
  } catch (const xml::SyntaxError& e) {
    throw bad(std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
  if (root.name != "TOKENS") throw bad("root must be <TOKENS>");
  TokenStore store;
  for (const auto& token : root.children) {
    if (token.name != "TOKEN") throw bad("unexpected <" + token.name + ">");
    std::optional<std::string> value, kind, tenant;
    for (const auto& field : token.children) {
      std::optional<std::string>* slot = field.name == "VALUE"    ? &value
                                         : field.name == "KIND"   ? &kind
                                         : field.name == "TENANT" ? &tenant
                                                                  : nullptr;
      if (!slot || *slot) throw bad("unexpected <" + field.name + "> in <TOKEN>");
      *slot = field.text;
    }
    if (!value || value->empty() || !kind) throw bad("<TOKEN> needs VALUE and KIND");
    if (*kind == "Provider") {
      if (tenant) throw bad("provider token carries a tenant");
      store.add(*value, Principal::provider(*value));
    } else if (*kind == "Tenant") {
      if (!tenant) throw bad("tenant token without <TENANT>");
      store.add(*value, Principal::tenant(TenantId(*tenant), *value));
    } else {
      throw bad("KIND must be Tenant or Provider");
    }
  }
  return store;
}

TokenStore TokenStore::load(const std::filesystem::path& path) {
  return parse(storage::read_file(path));
}

void TokenStore::add(std::string token, Principal principal) {
  if (!tokens_.emplace(token, std::move(principal)).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate token");
  }
}

std::optional<Principal> TokenStore::authenticate(std::string_view token) const {
  auto it = tokens_.find(token);
  if (it == tokens_.end()) return std::nullopt;
  return it->second;
}

}  // namespace tenantconf
