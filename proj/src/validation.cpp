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

#include "tenantconf/validation.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace tenantconf {

namespace {

class ReportBuilder {
 public:
  void add(std::string_view code, std::string subject, std::string detail = {}) {
    report_.violations.push_back(
        Violation{std::string(code), std::move(subject), std::move(detail)});
  }

  // One DUP_NAME per name occurring more than once; one EMPTY_NAME per
  // empty occurrence.
  template <typename Range, typename KeyFn>
  void check_names(const Range& entries, KeyFn key, std::string_view what) {
    std::map<std::string, int> seen;
    for (const auto& e : entries) {
      std::string k = key(e);
      if (k.empty()) {
        add(violation::kEmptyName, std::string(what), "empty name");
        continue;
      }
      ++seen[k];
    }
    for (const auto& [name, count] : seen) {
      if (count > 1) {
        add(violation::kDupName, name,
            std::string(what) + " declared " + std::to_string(count) + " times");
      }
    }
  }

  void merge(const ValidationReport& other) {
    report_.violations.insert(report_.violations.end(), other.violations.begin(),
                              other.violations.end());
  }

  ValidationReport finish() && {
    std::sort(report_.violations.begin(), report_.violations.end());
    return std::move(report_);
  }

 private:
  ValidationReport report_;
};

auto by_entry_key = [](const auto& e) { return std::string(entry_key(e)); };

bool is_dotted(const std::string& name) {
  auto dot = name.find('.');
  return dot != std::string::npos && dot > 0 && dot + 1 < name.size();
}

bool is_client(const std::string& client) {
  return client.size() == 3 &&
         std::all_of(client.begin(), client.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_properties(ReportBuilder& out, const std::vector<PropertyEntry>& entries,
                      std::string_view what) {
  out.check_names(entries, [](const PropertyEntry& e) { return e.name; }, what);
  for (const auto& e : entries) {
    if (!e.name.empty() && !is_dotted(e.name)) {
      out.add(violation::kBadPropertyName, e.name, "expected Page.Item form");
    }
  }
}

bool span_ok(const FieldPlacement& f) {
  return f.position_from.row == f.position_to.row &&
         f.position_from.column <= f.position_to.column;
}

void check_fields(ReportBuilder& out, const FieldsDocument& doc) {
  out.check_names(doc.entries, by_entry_key, "FIELD");
  std::vector<const FieldPlacement*> shown;
  for (const auto& f : doc.entries) {
    if (!span_ok(f)) {
      out.add(violation::kBadSpan, f.field_name,
              f.position_from.to_string() + "->" + f.position_to.to_string());
    } else if (f.display) {
      shown.push_back(&f);
    }
  }
  // Single-row spans overlap iff they share the row and their column
  // intervals intersect.
  for (std::size_t i = 0; i < shown.size(); ++i) {
    for (std::size_t j = i + 1; j < shown.size(); ++j) {
      const auto& a = *shown[i];
      const auto& b = *shown[j];
      if (a.position_from.row != b.position_from.row) continue;
      if (a.position_to.column < b.position_from.column ||
          b.position_to.column < a.position_from.column) {
        continue;
      }
      auto names = std::minmax(a.field_name, b.field_name);
      out.add(violation::kOverlapField, names.first + "|" + names.second);
    }
  }
}

template <typename Doc>
ValidationReport validate_body(const Doc& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, category_root_tag(Doc::kCategory));
  return std::move(out).finish();
}

ValidationReport validate_body(const PropertyBundle& doc, const CrossRefs&) {
  ReportBuilder out;
  check_properties(out, doc.labels, "LABELELEMENT");
  check_properties(out, doc.texts, "TEXTELEMENT");
  return std::move(out).finish();
}

ValidationReport validate_body(const BlocksDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, [](const Block& b) {
    return b.component.empty() || b.view_name.empty() ? std::string() : entry_key(b);
  }, "BLOCK");
  return std::move(out).finish();
}

ValidationReport validate_body(const FieldsDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  check_fields(out, doc);
  return std::move(out).finish();
}

ValidationReport validate_body(const BackendBindingsDocument& doc, const CrossRefs& refs) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "BE");
  for (const auto& be : doc.entries) {
    if (refs.connections && !refs.connections->contains(be.erp_backend)) {
      out.add(violation::kDanglingConnection, be.be_name,
              "no connection named '" + be.erp_backend + "'");
    }
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const ConnectionsDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "CONNECTION");
  for (const auto& c : doc.entries) {
    if (!is_client(c.client)) {
      out.add(violation::kBadClient, c.name, "client '" + c.client + "'");
    }
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const BusinessRolesDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "BUSINESSROLE");
  for (const auto& r : doc.entries) {
    std::string missing;
    if (r.nav_bar_profile.empty()) missing += " NAVBAR";
    if (r.technical_profile.empty()) missing += " TECPROFILE";
    if (r.layout_profile.empty()) missing += " LAYPROFILE";
    if (r.pfcg_role.empty()) missing += " PFCG";
    if (!missing.empty()) out.add(violation::kEmptyProfile, r.name, "empty:" + missing);
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const BolAccessDocument& doc, const CrossRefs& refs) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "BUSINESSROLE");
  for (const auto& rule : doc.entries) {
    if (refs.roles && !refs.roles->contains(rule.role_name)) {
      out.add(violation::kUnknownRole, rule.role_name, "no such business role");
    }
    std::map<std::string, int> seen;
    for (const auto& g : rule.grants) {
      if (g.bol_name.empty()) {
        out.add(violation::kEmptyName, rule.role_name, "BOL with empty name");
      } else {
        ++seen[g.bol_name];
      }
    }
    for (const auto& [bol, count] : seen) {
      if (count > 1) out.add(violation::kDupBol, rule.role_name + "/" + bol);
    }
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const DataObjectsDocument& doc, const CrossRefs& refs) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "DO");
  for (const auto& d : doc.entries) {
    if (refs.databases && !refs.databases->contains(d.database_name)) {
      out.add(violation::kDanglingDatabase, d.do_name,
              "no database named '" + d.database_name + "'");
    }
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const DatabasesDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "DATABASE");
  auto defaults = std::count_if(doc.entries.begin(), doc.entries.end(),
                                [](const Database& d) { return d.use == DatabaseUse::kDefault; });
  if (defaults > 1) {
    out.add(violation::kMultiDefaultDb, "DATABASES",
            std::to_string(defaults) + " databases marked Default");
  } else if (defaults == 0) {
    out.add(violation::kNoDefaultDb, "DATABASES", "no database marked Default");
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const KeyValuesDocument& doc, const CrossRefs&) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "KV");
  for (const auto& kv : doc.entries) {
    if (!kv.value.is_set()) continue;
    const auto& items = kv.value.set_items();
    if (items.empty()) {
      out.add(violation::kEmptySet, kv.key);
      continue;
    }
    std::map<std::string, int> seen;
    for (const auto& item : items) ++seen[item];
    for (const auto& [item, count] : seen) {
      if (count > 1) out.add(violation::kDupSetItem, kv.key, item);
    }
  }
  return std::move(out).finish();
}

ValidationReport validate_body(const WorkflowsDocument& doc, const CrossRefs& refs) {
  ReportBuilder out;
  out.check_names(doc.entries, by_entry_key, "WORKFLOW");
  for (const auto& wf : doc.entries) out.merge(validate_workflow_def(wf, refs.roles));
  return std::move(out).finish();
}

}  // namespace

bool ValidationReport::contains(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

std::multiset<std::string> ValidationReport::codes() const {
  std::multiset<std::string> out;
  for (const auto& v : violations) out.insert(v.code);
  return out;
}

ValidationReport validate_document(const ConfigDocument& doc, const CrossRefs& refs) {
  return std::visit([&](const auto& body) { return validate_body(body, refs); }, doc.body);
}

ValidationReport validate_workflow_def(const WorkflowDef& wf,
                                       const std::optional<std::set<std::string>>& roles) {
  ReportBuilder out;
  if (roles && !roles->contains(wf.role_binding)) {
    out.add(violation::kUnknownRole, wf.id, "role '" + wf.role_binding + "'");
  }
  if (wf.tasks.empty()) out.add(violation::kEmptyWorkflow, wf.id);
  for (std::size_t i = 1; i < wf.tasks.size(); ++i) {
    if (wf.tasks[i].step_no <= wf.tasks[i - 1].step_no) {
      out.add(violation::kBadOrder, wf.id,
              "step " + std::to_string(wf.tasks[i].step_no) + " after " +
                  std::to_string(wf.tasks[i - 1].step_no));
    }
  }
  for (const auto& task : wf.tasks) {
    if (task.bo_name.empty() || task.method.empty() || task.step_no == 0) {
      out.add(violation::kBadTask, wf.id, "step " + std::to_string(task.step_no));
    }
  }
  return std::move(out).finish();
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error(ErrorCode::kValidationFailed,
            [&] {
              std::string codes;
              for (const auto& v : report.violations) {
                if (!codes.empty()) codes += ", ";
                codes += v.code + "(" + v.subject + ")";
              }
              return codes;
            }()),
      report_(std::move(report)) {}

}  // namespace tenantconf
