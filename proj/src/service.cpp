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

#include "tenantconf/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "tenantconf/codec.hpp"
#include "tenantconf/json_views.hpp"
#include "tenantconf/workflow.hpp"

namespace tenantconf {

namespace jv = json_views;

// --- Workspace --------------------------------------------------------------

std::unique_ptr<Workspace> Workspace::open(const std::filesystem::path& root, Options options) {
  std::unique_ptr<Workspace> ws(new Workspace());
  ws->audit_ = std::make_shared<AuditLog>(options.audit_file, options.retain_audit);
  ws->guard_ = std::make_shared<IsolationGuard>(ws->audit_);
  ws->registry_ = TenantRegistry::load(root, ws->guard_, operator_principal());
  ws->resolver_ = std::make_unique<Resolver>(*ws->registry_, options.cache_capacity);
  if (options.tokens_file) ws->tokens_ = TokenStore::load(*options.tokens_file);
  return ws;
}

Branding tenant_branding(Resolver& resolver, const Principal& caller, const TenantId& tenant) {
  auto kv = resolver.resolve_category(caller, tenant, DocKey{ConfigCategory::kKeyValues, {}});
  const auto& settings = kv->as<KeyValuesDocument>();
  auto scalar = [&](const std::string& key, std::string fallback) {
    auto value = rules::setting(settings, key);
    return value && value->is_scalar() ? value->scalar_value() : fallback;
  };
  return Branding{scalar("branding.name", ""), scalar("branding.logo", std::string(kPlaceholderLogo))};
}

// --- plumbing ---------------------------------------------------------------

std::optional<std::string> ApiRequest::header(std::string_view name) const {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto it = headers.find(lower);
  if (it == headers.end()) return std::nullopt;
  return it->second;
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kCoordinate:
    case ErrorCode::kParse:
      return 400;
    case ErrorCode::kUnauthenticated:
      return 401;
    case ErrorCode::kAuthzDenied:
      return 403;
    case ErrorCode::kUnknownTenant:
    case ErrorCode::kUnknownCategory:
    case ErrorCode::kUnknownLanguage:
    case ErrorCode::kUnknownRole:
    case ErrorCode::kUnknownBackendObject:
    case ErrorCode::kUnknownWorkflow:
      return 404;
    case ErrorCode::kVersionConflict:
    case ErrorCode::kNotConfigured:
    case ErrorCode::kTenantExists:
    case ErrorCode::kDatabaseAlreadyAssigned:
      return 409;
    case ErrorCode::kValidationFailed:
    case ErrorCode::kDanglingConnection:
    case ErrorCode::kDanglingDatabase:
    case ErrorCode::kNoDefaultDatabase:
      return 422;
    case ErrorCode::kRegistryCorrupt:
    case ErrorCode::kMissingDefault:
    case ErrorCode::kDanglingLocation:
    case ErrorCode::kStorage:
      return 500;
  }
  return 500;
}

namespace {

constexpr std::string_view kPrefix = "/api/v1/";

ApiResponse json_response(int status, const jv::Json& body) {
  ApiResponse r;
  r.status = status;
  r.body = jv::render(body);
  return r;
}

ApiResponse ok(const jv::Json& body) { return json_response(200, body); }

ApiResponse error_response(const Error& e) {
  const int status = http_status(e.code());
  // A deny carries its policy reason ("cross-tenant", "provider-only") as the code.
  std::string code =
      e.code() == ErrorCode::kAuthzDenied ? e.detail() : std::string(error_code_name(e.code()));
  jv::Json body = jv::error(code, e.detail());
  if (const auto* failed = dynamic_cast<const ValidationFailed*>(&e)) {
    body["violations"] = jv::report(failed->report());
  }
  if (const auto* parse = dynamic_cast<const ParseError*>(&e)) {
    body["parse_code"] = parse_error_code_name(parse->parse_code());
    body["line"] = parse->line();
    body["column"] = parse->column();
  }
  return json_response(status, body);
}

ApiResponse not_found(const std::string& what) {
  return json_response(404, jv::error("NotFound", what));
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) out.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

const std::string& required_param(const ApiRequest& req, const std::string& name) {
  auto it = req.query.find(name);
  if (it == req.query.end() || it->second.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "missing query parameter '" + name + "'");
  }
  return it->second;
}

DocKey doc_key(const std::string& slug, const ApiRequest& req) {
  auto category = category_from_slug(slug);
  if (!category) throw Error(ErrorCode::kUnknownCategory, slug);
  auto lang = req.query.find("lang");
  return DocKey::make(*category, lang == req.query.end() ? std::string() : lang->second);
}

std::uint64_t parse_if_match(const std::optional<std::string>& header) {
  if (!header) throw Error(ErrorCode::kInvalidArgument, "If-Match header is required");
  std::string_view v = *header;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  std::uint64_t version = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), version);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "If-Match must be a version number");
  }
  return version;
}

std::string etag(std::uint64_t version) { return "\"" + std::to_string(version) + "\""; }

// "fields:reset" -> ("fields", "reset").
std::pair<std::string, std::string> split_verb(const std::string& segment) {
  auto colon = segment.rfind(':');
  if (colon == std::string::npos) return {segment, {}};
  return {segment.substr(0, colon), segment.substr(colon + 1)};
}

}  // namespace

ApiResponse Service::handle(const ApiRequest& request) {
  try {
    auto auth = request.header("authorization");
    constexpr std::string_view kBearer = "Bearer ";
    if (!auth || auth->compare(0, kBearer.size(), kBearer) != 0) {
      throw Error(ErrorCode::kUnauthenticated, "missing bearer token");
    }
    auto principal = ws_.tokens().authenticate(std::string_view(*auth).substr(kBearer.size()));
    if (!principal) throw Error(ErrorCode::kUnauthenticated, "unknown token");
    return route(request, *principal);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return json_response(500, jv::error("Internal", e.what()));
  }
}

ApiResponse Service::route(const ApiRequest& req, const Principal& caller) {
  if (req.path.compare(0, kPrefix.size(), kPrefix) != 0) return not_found(req.path);
  const auto seg = split_path(std::string_view(req.path).substr(kPrefix.size()));
  const std::string& method = req.method;
  Resolver& resolver = ws_.resolver();
  TenantRegistry& registry = ws_.registry();

  if (seg.size() == 1 && seg[0] == "categories" && method == "GET") {
    return ok(jv::categories(registry.keys()));
  }
  if (seg.size() == 1 && seg[0] == "registry" && method == "GET") {
    return ok(jv::registry(registry.snapshot(caller)));
  }
  if (seg.size() == 1 && seg[0] == "metrics" && method == "GET") {
    ws_.guard().require(caller, Action::kRegistryRead, std::nullopt);
    ApiResponse r;
    r.content_type = "text/plain; version=0.0.4";
    r.body = jv::metrics(resolver.document_stats(), resolver.view_stats(), ws_.audit().size());
    return r;
  }
  if (seg.size() == 1 && seg[0] == "tenants" && method == "POST") {
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (!body.is_object() || !body.contains("id") || !body["id"].is_string()) {
      throw Error(ErrorCode::kInvalidArgument, "body must be {\"id\": \"<tenant>\"}");
    }
    TenantId id(body["id"].get<std::string>());
    registry.register_tenant(caller, id);
    return json_response(201, jv::Json{{"tenant", id.str()}});
  }
  if (seg.size() < 2 || seg[0] != "tenants") return not_found(req.path);

  const TenantId tenant(seg[1]);

  if (seg.size() == 3 && seg[2] == "branding" && method == "GET") {
    Branding b = tenant_branding(resolver, caller, tenant);
    return ok(jv::branding(b.name, b.logo));
  }
  if (seg.size() == 3 && seg[2] == "database" && method == "PUT") {
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (!body.is_object() || !body.contains("name") || !body.contains("host") ||
        !body["name"].is_string() || !body["host"].is_string() ||
        body["name"].get<std::string>().empty()) {
      throw Error(ErrorCode::kInvalidArgument, "body must be {\"name\": .., \"host\": ..}");
    }
    DatabaseDescriptor db{body["name"].get<std::string>(), body["host"].get<std::string>()};
    registry.assign_tenant_database(caller, tenant, db);
    return ok(jv::database(db));
  }
  if (seg.size() == 4 && seg[2] == "config") {
    auto [slug, verb] = split_verb(seg[3]);
    if (verb == "reset" && method == "POST") {
      DocKey key = doc_key(slug, req);
      bool dropped = registry.reset(caller, tenant, key);
      return ok(jv::Json{{"document", key.to_string()}, {"reset", dropped}});
    }
    if (!verb.empty()) return not_found(req.path);
    if (method == "GET") {
      DocKey key = doc_key(slug, req);
      auto doc = resolver.resolve_category(caller, tenant, key);
      ApiResponse r;
      r.content_type = "application/xml";
      r.body = serialize(*doc);
      r.headers["ETag"] = etag(doc->version);
      return r;
    }
    if (method == "PUT") {
      DocKey key = doc_key(slug, req);
      // Authorizes before the body is looked at; the first PUT makes the copy.
      registry.begin_configure(caller, tenant, key);
      const std::uint64_t expected = parse_if_match(req.header("if-match"));
      ConfigDocument doc = parse(key, req.body);
      doc.version = expected;
      const std::uint64_t version = registry.commit(caller, tenant, key, std::move(doc));
      ApiResponse r = ok(jv::Json{{"document", key.to_string()}, {"version", version}});
      r.headers["ETag"] = etag(version);
      return r;
    }
  }
  if (seg.size() >= 4 && seg[2] == "resolved" && method == "GET") {
    const std::string& view = seg[3];
    if (seg.size() == 4 && view == "page-view") {
      const std::string& role = required_param(req, "role");
      auto v = resolver.resolve_page_view(caller, tenant, required_param(req, "page"),
                                          required_param(req, "lang"), role);
      return ok(jv::page_view(*v));
    }
    if (seg.size() == 4 && view == "bol-access") {
      const std::string& role = required_param(req, "role");
      const std::string& bol = required_param(req, "bol");
      return ok(jv::bol_access(role, bol, resolver.check_bol_access(caller, tenant, role, bol)));
    }
    if (seg.size() == 5) {
      const std::string& arg = seg[4];
      if (view == "backend-call") return ok(jv::backend_call(resolver.resolve_backend_call(caller, tenant, arg)));
      if (view == "database") return ok(jv::database(resolver.resolve_database(caller, tenant, arg)));
      if (view == "setting") return ok(jv::setting(arg, resolver.get_setting(caller, tenant, arg)));
      if (view == "role-profiles") return ok(jv::role_profiles(resolver.resolve_role_profiles(caller, tenant, arg)));
      if (view == "bo") return ok(jv::bo_status(resolver.check_bo_enabled(caller, tenant, arg)));
    }
  }
  if (seg.size() == 4 && seg[2] == "workflows" && method == "POST") {
    auto [id, verb] = split_verb(seg[3]);
    if (verb == "dry-run") return ok(jv::trace(dry_run_stored(resolver, caller, tenant, id)));
  }
  return not_found(req.path);
}

std::pair<std::string, int> parse_bind(const std::string& bind) {
  auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "bind must be host:port");
  std::string host = bind.substr(0, colon);
  std::string_view port_text = std::string_view(bind).substr(colon + 1);
  int port = -1;
  auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || end != port_text.data() + port_text.size() || port < 0 || port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "bad port in '" + bind + "'");
  }
  if (host.empty()) host = "0.0.0.0";
  return {host, port};
}

bool serve(Service& service, const std::string& host, int port, const std::atomic<bool>* stop,
           const std::function<void(int)>& on_ready) {
  httplib::Server server;
  auto handler = [&service](const httplib::Request& in, httplib::Response& out) {
    ApiRequest req;
    req.method = in.method;
    req.path = in.path;
    for (const auto& [k, v] : in.params) req.query.emplace(k, v);
    for (const auto& [k, v] : in.headers) {
      std::string name = k;
      std::transform(name.begin(), name.end(), name.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      req.headers.emplace(std::move(name), v);
    }
    req.body = in.body;
    ApiResponse res = service.handle(req);
    out.status = res.status;
    for (const auto& [k, v] : res.headers) out.set_header(k, v);
    out.set_content(res.body, res.content_type);
  };
  server.Get(".*", handler);
  server.Put(".*", handler);
  server.Post(".*", handler);

  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) return false;

  std::atomic<bool> finished{false};
  std::thread watcher;
  if (stop) {
    watcher = std::thread([&] {
      while (!stop->load() && !finished.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
      server.stop();
    });
  }
  if (on_ready) on_ready(bound);
  bool ok = server.listen_after_bind();
  finished = true;
  if (watcher.joinable()) watcher.join();
  return ok;
}

}  // namespace tenantconf
