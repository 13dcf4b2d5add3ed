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

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "support.hpp"
#include "tenantconf/codec.hpp"
#include "tenantconf/service.hpp"

using namespace tenantconf;
using namespace tenantconf::testing;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tenantconf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Root {
  TempDir dir;
  std::string root;
  Root() : root(make_data_root(dir.path()).string()) {}

  Result run(std::vector<std::string> args) {
    args.insert(args.begin(), {"--data-root", root});
    return invoke(std::move(args));
  }

  template <typename Doc, typename F>
  void edit(const std::string& tenant, const DocKey& key, F&& f) {
    auto ws = Workspace::open(root);
    auto p = Workspace::operator_principal();
    ConfigDocument doc = ws->registry().begin_configure(p, TenantId(tenant), key);
    f(doc.as<Doc>());
    ws->registry().commit(p, TenantId(tenant), key, std::move(doc));
  }
};

}  // namespace

TEST_CASE("validate exit codes") {
  TempDir dir;
  write_text(dir.path() / "connections.xml", reference_fixture("connections.xml"));
  auto ok = invoke({"validate", (dir.path() / "connections.xml").string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.empty());

  write_text(dir.path() / "fields.xml",
             "<FIELDS>"
             "<FIELD><FIELDNAME>a</FIELDNAME><DISPLAY>True</DISPLAY>"
             "<POSITIONFROM>A1</POSITIONFROM><POSITIONTO>C1</POSITIONTO></FIELD>"
             "<FIELD><FIELDNAME>b</FIELDNAME><DISPLAY>True</DISPLAY>"
             "<POSITIONFROM>B1</POSITIONFROM><POSITIONTO>D1</POSITIONTO></FIELD>"
             "</FIELDS>");
  auto overlap = invoke({"validate", (dir.path() / "fields.xml").string()});
  CHECK(overlap.code == 1);
  CHECK(overlap.out.find("OVERLAP_FIELD") != std::string::npos);

  CHECK(invoke({"validate", (dir.path() / "nope.xml").string(), "--category", "css"}).code == 2);

  write_text(dir.path() / "css.xml", "<CSSELEMENTS><CSSELEMENT>");
  auto malformed = invoke({"validate", (dir.path() / "css.xml").string()});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("MALFORMED_XML") != std::string::npos);

  write_text(dir.path() / "bos.xml", "<BOS><BO><BONAME>x</BONAME><ENABLE>maybe</ENABLE></BO></BOS>");
  CHECK(invoke({"validate", (dir.path() / "bos.xml").string()}).code == 1);

  CHECK(invoke({"validate", (dir.path() / "whatever.xml").string()}).code == 2);
  CHECK(invoke({"validate"}).code == 2);
}

TEST_CASE("diff against the default") {
  Root r;
  REQUIRE(r.run({"init-tenant", "T1"}).code == 0);
  auto fresh = r.run({"diff", "T1", "css"});
  CHECK(fresh.code == 0);
  CHECK(fresh.out.empty());

  r.edit<CssDocument>("T1", DocKey::make(ConfigCategory::kCssElements), [](CssDocument& d) {
    for (auto& e : d.entries) {
      if (e.name == "B2C") e.location = "/tenant/b2c.css";
    }
  });
  auto changed = r.run({"diff", "T1", "css"});
  CHECK(changed.code == 0);
  CHECK(changed.out.find("~ CSSELEMENT B2C") != std::string::npos);
  CHECK(changed.out.find("B2B") == std::string::npos);

  r.edit<BlocksDocument>("T1", DocKey::make(ConfigCategory::kBlocks), [](BlocksDocument& d) {
    std::erase_if(d.entries, [](const auto& b) { return b.view_name == "ViewJ"; });
  });
  auto removed = r.run({"diff", "T1", "blocks"});
  CHECK(removed.out.find("- BLOCK Component n/ViewJ") != std::string::npos);

  CHECK(r.run({"diff", "T9", "css"}).code == 2);
  CHECK(r.run({"diff", "T1", "nonsense"}).code == 2);
}

TEST_CASE("init-tenant twice") {
  Root r;
  auto first = r.run({"init-tenant", "T1"});
  CHECK(first.code == 0);
  CHECK(first.out == "registered T1\n");
  auto second = r.run({"init-tenant", "T1"});
  CHECK(second.code == 1);
  CHECK(second.err.find("TenantExists") != std::string::npos);
}

TEST_CASE("missing data root is an environment failure") {
  CHECK(invoke({"--data-root", "/nonexistent/tenantconf", "init-tenant", "T1"}).code == 2);
  CHECK(invoke({"init-tenant", "T1"}).code == 2);
}

TEST_CASE("resolve prints what the service returns") {
  Root r;
  REQUIRE(r.run({"init-tenant", "T1"}).code == 0);
  r.edit<CssDocument>("T1", DocKey::make(ConfigCategory::kCssElements), [](CssDocument& d) {
    d.entries.push_back({"EXTRA", "/x.css"});
  });

  auto ws = Workspace::open(r.root);
  ws->tokens().add("tok", Principal::tenant(TenantId("T1")));
  Service service(*ws);
  auto get = [&](const std::string& path, std::map<std::string, std::string> query = {}) {
    ApiRequest req{"GET", "/api/v1/tenants/T1/" + path, std::move(query),
                   {{"authorization", "Bearer tok"}}, {}};
    ApiResponse resp = service.handle(req);
    REQUIRE(resp.status == 200);
    return resp.body;
  };

  CHECK(r.run({"resolve", "T1", "category", "--category", "css"}).out == get("config/css"));
  CHECK(r.run({"resolve", "T1", "page-view", "--page", "Page1", "--lang", "en", "--role",
               "SP_ROLE"})
            .out == get("resolved/page-view", {{"page", "Page1"}, {"lang", "en"}, {"role", "SP_ROLE"}}));
  CHECK(r.run({"resolve", "T1", "backend-call", "BE1"}).out == get("resolved/backend-call/BE1"));
  CHECK(r.run({"resolve", "T1", "database", "DOMINING"}).out == get("resolved/database/DOMINING"));
  CHECK(r.run({"resolve", "T1", "setting", "bol.of.BO1"}).out == get("resolved/setting/bol.of.BO1"));
  CHECK(r.run({"resolve", "T1", "role-profiles", "SP_ROLE"}).out ==
        get("resolved/role-profiles/SP_ROLE"));
  CHECK(r.run({"resolve", "T1", "bo", "BO1"}).out == get("resolved/bo/BO1"));
  CHECK(r.run({"resolve", "T1", "bol-access", "--role", "SP_ROLE", "--bol", "SALES_BOL"}).out ==
        get("resolved/bol-access", {{"role", "SP_ROLE"}, {"bol", "SALES_BOL"}}));
  CHECK(r.run({"resolve", "T1", "branding"}).out == get("branding"));

  ApiRequest dry{"POST", "/api/v1/tenants/T1/workflows/WF_SALES_ORDER:dry-run", {},
                 {{"authorization", "Bearer tok"}}, {}};
  CHECK(r.run({"resolve", "T1", "dry-run", "WF_SALES_ORDER"}).out == service.handle(dry).body);

  CHECK(r.run({"resolve", "T1", "page-view", "--page", "Page1"}).code == 2);
  CHECK(r.run({"resolve", "T1", "no-such-view"}).code == 2);
  CHECK(r.run({"resolve", "T1", "backend-call", "MISSING"}).code == 1);
}

TEST_CASE("init-tenant next to a running workspace") {
  Root r;
  REQUIRE(r.run({"init-tenant", "T1"}).code == 0);
  auto ws = Workspace::open(r.root);
  auto p = Workspace::operator_principal();

  // Another process registers T2 while `ws` is open.
  REQUIRE(r.run({"init-tenant", "T2"}).code == 0);

  // A commit through the stale workspace must keep T2 in central.xml.
  const DocKey css = DocKey::make(ConfigCategory::kCssElements);
  ConfigDocument doc = ws->registry().begin_configure(p, TenantId("T1"), css);
  ws->registry().commit(p, TenantId("T1"), css, std::move(doc));
  auto on_disk = CentralRegistry::parse(read_text(fs::path(r.root) / kCentralFile));
  CHECK(on_disk.tenants.contains(TenantId("T2")));
  CHECK(on_disk.lookup(TenantId("T1"), css).has_value());

  // The open workspace picks T2 up on first use, and refuses to re-register it.
  CHECK(ws->resolver().resolve_category(p, TenantId("T2"), css)->version == 0);
  CHECK(error_of([&] { ws->registry().register_tenant(p, TenantId("T2")); }) ==
        ErrorCode::kTenantExists);

  // Overrides written by the other process are visible too.
  r.edit<CssDocument>("T2", css, [](CssDocument& d) { d.entries.clear(); });
  REQUIRE(r.run({"init-tenant", "T3"}).code == 0);
  r.edit<CssDocument>("T3", css, [](CssDocument& d) { d.entries.resize(1); });
  CHECK(ws->resolver().resolve_category(p, TenantId("T3"), css)->as<CssDocument>().entries.size() == 1);
  CHECK(r.run({"init-tenant", "T1"}).code == 1);
}
