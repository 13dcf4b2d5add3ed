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

#include "cli.hpp"

#include <atomic>
#include <csignal>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "tenantconf/codec.hpp"
#include "tenantconf/diff.hpp"
#include "tenantconf/json_views.hpp"
#include "tenantconf/service.hpp"
#include "tenantconf/storage.hpp"
#include "tenantconf/validation.hpp"
#include "tenantconf/workflow.hpp"

namespace tenantconf::cli {

namespace fs = std::filesystem;
namespace jv = json_views;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

// Errors that mean "the environment is wrong" rather than "the request was
// refused by the domain rules".
bool is_environmental(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStorage:
    case ErrorCode::kRegistryCorrupt:
    case ErrorCode::kMissingDefault:
    case ErrorCode::kDanglingLocation:
    case ErrorCode::kUnknownTenant:
    case ErrorCode::kUnknownCategory:
    case ErrorCode::kUnknownLanguage:
    case ErrorCode::kUnauthenticated:
    case ErrorCode::kInvalidArgument:  // bad usage
      return true;
    default:
      return false;
  }
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (const auto* failed = dynamic_cast<const ValidationFailed*>(&e)) {
    for (const auto& v : failed->report().violations) {
      err << "  " << v.code << " " << v.subject << ": " << v.detail << "\n";
    }
  }
  return is_environmental(e.code()) ? kEnvironmentFailure : kDomainFailure;
}

// "fields.xml" -> fields; "properties.en.xml" -> properties/en.
std::optional<DocKey> key_from_file_name(const fs::path& path) {
  std::string stem = path.filename().string();
  if (stem.size() <= 4 || stem.compare(stem.size() - 4, 4, ".xml") != 0) return std::nullopt;
  stem.resize(stem.size() - 4);
  std::string language;
  if (auto dot = stem.find('.'); dot != std::string::npos) {
    language = stem.substr(dot + 1);
    stem.resize(dot);
  }
  auto category = category_from_slug(stem);
  if (!category) return std::nullopt;
  if (*category == ConfigCategory::kProperties && !is_language_tag(language)) return std::nullopt;
  if (*category != ConfigCategory::kProperties && !language.empty()) return std::nullopt;
  return DocKey{*category, language};
}

struct Options {
  std::string data_root;
  std::size_t cache_capacity = DocumentCache::kDefaultCapacity;

  std::string path;
  std::string category;
  std::string lang;

  std::string tenant;
  std::string view;
  std::string arg;
  std::string page;
  std::string role;
  std::string bol;

  std::string bind = "127.0.0.1:8080";
  std::string tokens;
  std::string audit_log;
};

std::unique_ptr<Workspace> open_workspace(const Options& o) {
  if (o.data_root.empty()) {
    throw Error(ErrorCode::kStorage, "no data root (use --data-root or TENANTCONF_DATA_ROOT)");
  }
  Workspace::Options options;
  options.cache_capacity = o.cache_capacity;
  if (!o.tokens.empty()) options.tokens_file = o.tokens;
  if (!o.audit_log.empty()) {
    options.audit_file = o.audit_log;
    options.retain_audit = false;
  }
  return Workspace::open(o.data_root, options);
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<DocKey> key;
  if (!o.category.empty()) {
    auto category = category_from_slug(o.category);
    if (!category) {
      err << "error: unknown category '" << o.category << "'\n";
      return kEnvironmentFailure;
    }
    try {
      key = DocKey::make(*category, o.lang);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kEnvironmentFailure;
    }
  } else {
    key = key_from_file_name(o.path);
    if (!key) {
      err << "error: cannot infer the category of " << o.path << "; pass --category\n";
      return kEnvironmentFailure;
    }
  }

  std::string bytes;
  try {
    bytes = storage::read_file(o.path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironmentFailure;
  }
  ConfigDocument doc;
  try {
    doc = parse(*key, bytes);
  } catch (const ParseError& e) {
    err << o.path << ":" << e.line() << ":" << e.column() << ": "
        << parse_error_code_name(e.parse_code()) << ": " << e.what() << "\n";
    return e.parse_code() == ParseErrorCode::kMalformedXml ? kEnvironmentFailure : kDomainFailure;
  }
  ValidationReport report = validate_document(doc);
  for (const auto& v : report.violations) {
    out << v.code << " " << v.subject << ": " << v.detail << "\n";
  }
  return report.ok() ? kOk : kDomainFailure;
}

DocKey key_arg(const Options& o) {
  auto category = category_from_slug(o.category);
  if (!category) throw Error(ErrorCode::kUnknownCategory, o.category);
  return DocKey::make(*category, o.lang);
}

int cmd_diff(const Options& o, std::ostream& out) {
  auto ws = open_workspace(o);
  DocKey key = key_arg(o);
  auto tenant_doc = ws->resolver().resolve_category(Workspace::operator_principal(),
                                                     TenantId(o.tenant), key);
  for (const auto& line : entry_diff(*ws->registry().default_document(key), *tenant_doc)) {
    out << line << "\n";
  }
  return kOk;
}

int cmd_init_tenant(const Options& o, std::ostream& out) {
  auto ws = open_workspace(o);
  TenantId tenant(o.tenant);
  ws->registry().register_tenant(Workspace::operator_principal(), tenant);
  out << "registered " << tenant.str() << "\n";
  return kOk;
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  return value;
}

int cmd_resolve(const Options& o, std::ostream& out) {
  auto ws = open_workspace(o);
  Resolver& resolver = ws->resolver();
  const Principal caller = Workspace::operator_principal();
  const TenantId tenant(o.tenant);
  const std::string& v = o.view;

  if (v == "category") {
    out << serialize(*resolver.resolve_category(caller, tenant, key_arg(o)));
    return kOk;
  }
  jv::Json result;
  if (v == "page-view") {
    result = jv::page_view(*resolver.resolve_page_view(
        caller, tenant, need(o.page, "--page"), need(o.lang, "--lang"), need(o.role, "--role")));
  } else if (v == "backend-call") {
    result = jv::backend_call(resolver.resolve_backend_call(caller, tenant, need(o.arg, "NAME")));
  } else if (v == "database") {
    result = jv::database(resolver.resolve_database(caller, tenant, need(o.arg, "NAME")));
  } else if (v == "setting") {
    result = jv::setting(o.arg, resolver.get_setting(caller, tenant, need(o.arg, "NAME")));
  } else if (v == "role-profiles") {
    result = jv::role_profiles(resolver.resolve_role_profiles(caller, tenant, need(o.arg, "NAME")));
  } else if (v == "bo") {
    result = jv::bo_status(resolver.check_bo_enabled(caller, tenant, need(o.arg, "NAME")));
  } else if (v == "bol-access") {
    const std::string& role = need(o.role, "--role");
    const std::string& bol = need(o.bol, "--bol");
    result = jv::bol_access(role, bol, resolver.check_bol_access(caller, tenant, role, bol));
  } else if (v == "branding") {
    Branding b = tenant_branding(resolver, caller, tenant);
    result = jv::branding(b.name, b.logo);
  } else if (v == "dry-run") {
    result = jv::trace(dry_run_stored(resolver, caller, tenant, need(o.arg, "NAME")));
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown view '" + v + "'");
  }
  out << jv::render(result);
  return kOk;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.tokens.empty()) {
    err << "error: no tokens file (use --tokens or TENANTCONF_TOKENS)\n";
    return kEnvironmentFailure;
  }
  auto ws = open_workspace(o);
  auto [host, port] = parse_bind(o.bind);
  Service service(*ws);
  g_stop = false;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  bool ok = serve(service, host, port, &g_stop, [&](int bound) {
    out << "listening on " << host << ":" << bound << std::endl;
  });
  if (!ok && !g_stop) {
    err << "error: cannot listen on " << o.bind << "\n";
    return kEnvironmentFailure;
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-tenant ERP configuration store", "tenantconf"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--data-root", o.data_root, "Data directory holding central.xml")
      ->envname("TENANTCONF_DATA_ROOT");
  app.add_option("--cache-capacity", o.cache_capacity, "Parsed documents kept in memory")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and validate one configuration file");
  validate->add_option("path", o.path)->required();
  validate->add_option("--category", o.category, "Category slug (default: from the file name)");
  validate->add_option("--lang", o.lang, "Language of a properties file");

  auto* diff = app.add_subcommand("diff", "Entry-level diff of a tenant document against the default");
  diff->add_option("tenant", o.tenant)->required();
  diff->add_option("category", o.category)->required();
  diff->add_option("--lang", o.lang);

  auto* init = app.add_subcommand("init-tenant", "Register a tenant with no overrides");
  init->add_option("tenant", o.tenant)->required();

  auto* resolve = app.add_subcommand("resolve", "Print a resolved view for a tenant");
  resolve->add_option("tenant", o.tenant)->required();
  resolve->add_option("view", o.view,
                      "category | page-view | backend-call | database | setting | role-profiles "
                      "| bo | bol-access | branding | dry-run")
      ->required();
  resolve->add_option("name", o.arg, "Object name for single-object views");
  resolve->add_option("--category", o.category);
  resolve->add_option("--lang", o.lang);
  resolve->add_option("--page", o.page);
  resolve->add_option("--role", o.role);
  resolve->add_option("--bol", o.bol);

  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--bind", o.bind, "host:port")->envname("TENANTCONF_BIND");
  serve_cmd->add_option("--tokens", o.tokens, "tokens.xml")->envname("TENANTCONF_TOKENS");
  serve_cmd->add_option("--audit-log", o.audit_log, "Append audit records to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kEnvironmentFailure;
  }

  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*diff) return cmd_diff(o, out);
    if (*init) return cmd_init_tenant(o, out);
    if (*resolve) return cmd_resolve(o, out);
    if (*serve_cmd) return cmd_serve(o, out, err);
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kEnvironmentFailure;
  }
  return kEnvironmentFailure;
}

}  // namespace tenantconf::cli
