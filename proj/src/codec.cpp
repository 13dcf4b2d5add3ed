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

#include "tenantconf/codec.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <utility>

#include "tenantconf/xml.hpp"

namespace tenantconf {

namespace {

using xml::Element;

// --- decoding ---------------------------------------------------------------

class Decoder {
 public:
  explicit Decoder(ConfigCategory category) : category_(category) {}

  [[noreturn]] void fail(const Element& at, ParseErrorCode code,
                         const std::string& detail) const {
    throw ParseError(category_, at.line, at.column, code, detail);
  }

  void expect_container(const Element& e) const {
    if (e.has_text) {
      fail(e, ParseErrorCode::kMalformedXml, "unexpected text in <" + e.name + ">");
    }
  }

  void expect_tag(const Element& e, std::string_view tag) const {
    if (e.name != tag) {
      fail(e, ParseErrorCode::kUnknownTag,
           "unexpected <" + e.name + ">, expected <" + std::string(tag) + ">");
    }
  }

  std::vector<const Element*> entries(const Element& container, std::string_view tag) const {
    expect_container(container);
    std::vector<const Element*> out;
    for (const auto& child : container.children) {
      expect_tag(child, tag);
      out.push_back(&child);
    }
    return out;
  }

  std::string text(const Element& leaf) const {
    if (!leaf.children.empty()) {
      fail(leaf.children.front(), ParseErrorCode::kMalformedXml,
           "<" + leaf.name + "> holds text, not elements");
    }
    return leaf.text;
  }

  bool boolean(const Element& leaf) const {
    std::string v = text(leaf);
    if (v == "True" || v == "true") return true;
    if (v == "False" || v == "false") return false;
    fail(leaf, ParseErrorCode::kBadEnum, "<" + leaf.name + "> must be True or False, got '" + v + "'");
  }

  template <typename E>
  E enumeration(const Element& leaf,
                std::initializer_list<std::pair<std::string_view, E>> options) const {
    std::string v = text(leaf);
    for (const auto& [spelling, value] : options) {
      if (v == spelling) return value;
    }
    std::string allowed;
    for (const auto& option : options) {
      if (!allowed.empty()) allowed += "|";
      allowed += option.first;
    }
    fail(leaf, ParseErrorCode::kBadEnum,
         "<" + leaf.name + "> must be " + allowed + ", got '" + v + "'");
  }

  GridCell cell(const Element& leaf) const {
    std::string v = text(leaf);
    try {
      return GridCell::parse(v);
    } catch (const Error&) {
      fail(leaf, ParseErrorCode::kBadNumber, "bad grid cell '" + v + "'");
    }
  }

  std::string client(const Element& leaf) const {
    std::string v = text(leaf);
    bool ok = v.size() == 3 &&
              std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!ok) fail(leaf, ParseErrorCode::kBadNumber, "client must be three digits, got '" + v + "'");
    return v;
  }

  std::uint32_t step(const Element& leaf) const {
    std::string v = text(leaf);
    bool ok = !v.empty() && v.size() <= 9 && v[0] != '0' &&
              std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!ok) fail(leaf, ParseErrorCode::kBadNumber, "step must be a positive integer, got '" + v + "'");
    return static_cast<std::uint32_t>(std::stoul(v));
  }

 private:
  ConfigCategory category_;
};

/// The children of one entry element, checked against a fixed tag set.
class Fields {
 public:
  Fields(const Decoder& d, const Element& entry, std::initializer_list<std::string_view> required,
         std::initializer_list<std::string_view> optional = {})
      : d_(d), entry_(entry) {
    d.expect_container(entry);
    for (const auto& child : entry.children) {
      bool known = std::find(required.begin(), required.end(), child.name) != required.end() ||
                   std::find(optional.begin(), optional.end(), child.name) != optional.end();
      if (!known) {
        d.fail(child, ParseErrorCode::kUnknownTag,
               "unknown tag <" + child.name + "> in <" + entry.name + ">");
      }
      if (!by_tag_.emplace(child.name, &child).second) {
        d.fail(child, ParseErrorCode::kUnknownTag,
               "repeated tag <" + child.name + "> in <" + entry.name + ">");
      }
    }
    for (auto tag : required) {
      if (!by_tag_.contains(std::string(tag))) {
        d.fail(entry, ParseErrorCode::kMissingTag,
               "missing <" + std::string(tag) + "> in <" + entry.name + ">");
      }
    }
  }

  const Element& at(std::string_view tag) const { return *by_tag_.at(std::string(tag)); }
  const Element* find(std::string_view tag) const {
    auto it = by_tag_.find(std::string(tag));
    return it == by_tag_.end() ? nullptr : it->second;
  }
  std::string text(std::string_view tag) const { return d_.text(at(tag)); }

 private:
  const Decoder& d_;
  const Element& entry_;
  std::map<std::string, const Element*> by_tag_;
};

std::vector<PropertyEntry> decode_properties(const Decoder& d, const Element& list,
                                             std::string_view tag) {
  std::vector<PropertyEntry> out;
  for (const Element* e : d.entries(list, tag)) {
    Fields f(d, *e, {"NAME", "VALUE"});
    out.push_back({f.text("NAME"), f.text("VALUE")});
  }
  return out;
}

DocumentBody decode_body(const Decoder& d, ConfigCategory category, const Element& root,
                         const std::string& language) {
  switch (category) {
    case ConfigCategory::kCssElements: {
      CssDocument doc;
      for (const Element* e : d.entries(root, "CSSELEMENT")) {
        Fields f(d, *e, {"NAME", "LOCATION"});
        doc.entries.push_back({f.text("NAME"), f.text("LOCATION")});
      }
      return doc;
    }
    case ConfigCategory::kImages: {
      ImagesDocument doc;
      for (const Element* e : d.entries(root, "IMAGEELEMENT")) {
        Fields f(d, *e, {"NAME", "SRC"});
        doc.entries.push_back({f.text("NAME"), f.text("SRC")});
      }
      return doc;
    }
    case ConfigCategory::kScripts: {
      ScriptsDocument doc;
      for (const Element* e : d.entries(root, "SCRIPTELEMENT")) {
        Fields f(d, *e, {"NAME", "SRC"});
        doc.entries.push_back({f.text("NAME"), f.text("SRC")});
      }
      return doc;
    }
    case ConfigCategory::kProperties: {
      PropertyBundle doc;
      doc.language = language;
      Fields f(d, root, {"LABELS", "TEXTS"});
      doc.labels = decode_properties(d, f.at("LABELS"), "LABELELEMENT");
      doc.texts = decode_properties(d, f.at("TEXTS"), "TEXTELEMENT");
      return doc;
    }
    case ConfigCategory::kBlocks: {
      BlocksDocument doc;
      for (const Element* e : d.entries(root, "BLOCK")) {
        Fields f(d, *e, {"COMPONENT", "VIEWNAME", "TITLE", "DISPLAY", "LOADOPTION"});
        doc.entries.push_back(Block{
            f.text("COMPONENT"), f.text("VIEWNAME"), f.text("TITLE"), d.boolean(f.at("DISPLAY")),
            d.enumeration<LoadOption>(f.at("LOADOPTION"),
                                      {{"Direct", LoadOption::kDirect}, {"Lazy", LoadOption::kLazy}})});
      }
      return doc;
    }
    case ConfigCategory::kFields: {
      FieldsDocument doc;
      for (const Element* e : d.entries(root, "FIELD")) {
        Fields f(d, *e, {"FIELDNAME", "DISPLAY", "POSITIONFROM", "POSITIONTO"});
        doc.entries.push_back(FieldPlacement{f.text("FIELDNAME"), d.boolean(f.at("DISPLAY")),
                                             d.cell(f.at("POSITIONFROM")),
                                             d.cell(f.at("POSITIONTO"))});
      }
      return doc;
    }
    case ConfigCategory::kFrontendBOs: {
      BosDocument doc;
      for (const Element* e : d.entries(root, "BO")) {
        Fields f(d, *e, {"BONAME", "ENABLE"});
        doc.entries.push_back({f.text("BONAME"), d.boolean(f.at("ENABLE"))});
      }
      return doc;
    }
    case ConfigCategory::kBackendBindings: {
      BackendBindingsDocument doc;
      for (const Element* e : d.entries(root, "BE")) {
        Fields f(d, *e, {"BENAME", "API", "STATE", "ERPBACKEND"});
        doc.entries.push_back(BackendBinding{
            f.text("BENAME"), f.text("API"),
            d.enumeration<ConnectionState>(
                f.at("STATE"), {{"Full", ConnectionState::kFull}, {"Less", ConnectionState::kLess}}),
            f.text("ERPBACKEND")});
      }
      return doc;
    }
    case ConfigCategory::kConnections: {
      ConnectionsDocument doc;
      for (const Element* e : d.entries(root, "CONNECTION")) {
        Fields f(d, *e, {"NAME", "HOST", "CLIENT"});
        doc.entries.push_back({f.text("NAME"), f.text("HOST"), d.client(f.at("CLIENT"))});
      }
      return doc;
    }
    case ConfigCategory::kBusinessRoles: {
      BusinessRolesDocument doc;
      for (const Element* e : d.entries(root, "BUSINESSROLE")) {
        Fields f(d, *e, {"NAME", "DESCRIPTION", "NAVBAR", "TECPROFILE", "LAYPROFILE", "PFCG"});
        doc.entries.push_back({f.text("NAME"), f.text("DESCRIPTION"), f.text("NAVBAR"),
                               f.text("TECPROFILE"), f.text("LAYPROFILE"), f.text("PFCG")});
      }
      return doc;
    }
    case ConfigCategory::kBolAccess: {
      BolAccessDocument doc;
      for (const Element* e : d.entries(root, "BUSINESSROLE")) {
        Fields f(d, *e, {"NAME", "BOLS"}, {"DESCRIPTION"});
        BolAccessRule rule;
        rule.role_name = f.text("NAME");
        if (const Element* desc = f.find("DESCRIPTION")) rule.description = d.text(*desc);
        for (const Element* bol : d.entries(f.at("BOLS"), "BOL")) {
          Fields g(d, *bol, {"NAME", "USE"});
          rule.grants.push_back({g.text("NAME"), d.boolean(g.at("USE"))});
        }
        doc.entries.push_back(std::move(rule));
      }
      return doc;
    }
    case ConfigCategory::kDataObjects: {
      DataObjectsDocument doc;
      for (const Element* e : d.entries(root, "DO")) {
        Fields f(d, *e, {"NAME", "DATABASENAME"});
        doc.entries.push_back({f.text("NAME"), f.text("DATABASENAME")});
      }
      return doc;
    }
    case ConfigCategory::kDatabases: {
      DatabasesDocument doc;
      for (const Element* e : d.entries(root, "DATABASE")) {
        Fields f(d, *e, {"NAME", "HOST", "USE"});
        doc.entries.push_back(Database{
            f.text("NAME"), f.text("HOST"),
            d.enumeration<DatabaseUse>(
                f.at("USE"), {{"Default", DatabaseUse::kDefault}, {"Request", DatabaseUse::kRequest}})});
      }
      return doc;
    }
    case ConfigCategory::kKeyValues: {
      KeyValuesDocument doc;
      for (const Element* e : d.entries(root, "KV")) {
        Fields f(d, *e, {"KEY"}, {"VALUE", "SET"});
        const Element* value = f.find("VALUE");
        const Element* set = f.find("SET");
        if (value && set) {
          d.fail(*set, ParseErrorCode::kUnknownTag, "<KV> takes VALUE or SET, not both");
        }
        if (!value && !set) d.fail(*e, ParseErrorCode::kMissingTag, "missing <VALUE> or <SET> in <KV>");
        KeyValueSetting kv;
        kv.key = f.text("KEY");
        if (value) {
          kv.value = SettingValue::scalar(d.text(*value));
        } else {
          SettingValue::Items items;
          for (const Element* item : d.entries(*set, "ITEM")) items.push_back(d.text(*item));
          kv.value = SettingValue::set(std::move(items));
        }
        doc.entries.push_back(std::move(kv));
      }
      return doc;
    }
    case ConfigCategory::kWorkflows: {
      WorkflowsDocument doc;
      for (const Element* e : d.entries(root, "WORKFLOW")) {
        Fields f(d, *e, {"ID", "NAME", "ROLE", "TASKS"});
        WorkflowDef wf{f.text("ID"), f.text("NAME"), f.text("ROLE"), {}};
        for (const Element* t : d.entries(f.at("TASKS"), "TASK")) {
          Fields g(d, *t, {"STEP", "ACTIVITY", "BO", "METHOD"}, {"RULE"});
          WorkflowTask task{d.step(g.at("STEP")), g.text("ACTIVITY"), g.text("BO"),
                            g.text("METHOD"), std::nullopt};
          if (const Element* rule = g.find("RULE")) task.rule = d.text(*rule);
          wf.tasks.push_back(std::move(task));
        }
        doc.entries.push_back(std::move(wf));
      }
      return doc;
    }
  }
  throw Error(ErrorCode::kUnknownCategory, "unknown category");
}

// --- encoding ---------------------------------------------------------------

std::string_view bool_text(bool v) { return v ? "True" : "False"; }

void write_entry(xml::Writer& w, const CssElement& e) {
  w.open("CSSELEMENT");
  w.leaf("NAME", e.name);
  w.leaf("LOCATION", e.location);
  w.close("CSSELEMENT");
}

void write_entry(xml::Writer& w, const ImageElement& e) {
  w.open("IMAGEELEMENT");
  w.leaf("NAME", e.name);
  w.leaf("SRC", e.src);
  w.close("IMAGEELEMENT");
}

void write_entry(xml::Writer& w, const ScriptElement& e) {
  w.open("SCRIPTELEMENT");
  w.leaf("NAME", e.name);
  w.leaf("SRC", e.src);
  w.close("SCRIPTELEMENT");
}

void write_property(xml::Writer& w, std::string_view tag, const PropertyEntry& e) {
  w.open(tag);
  w.leaf("NAME", e.name);
  w.leaf("VALUE", e.value);
  w.close(tag);
}

void write_entry(xml::Writer& w, const Block& e) {
  w.open("BLOCK");
  w.leaf("COMPONENT", e.component);
  w.leaf("VIEWNAME", e.view_name);
  w.leaf("TITLE", e.title);
  w.leaf("DISPLAY", bool_text(e.display));
  w.leaf("LOADOPTION", e.load_option == LoadOption::kDirect ? "Direct" : "Lazy");
  w.close("BLOCK");
}

void write_entry(xml::Writer& w, const FieldPlacement& e) {
  w.open("FIELD");
  w.leaf("FIELDNAME", e.field_name);
  w.leaf("DISPLAY", bool_text(e.display));
  w.leaf("POSITIONFROM", e.position_from.to_string());
  w.leaf("POSITIONTO", e.position_to.to_string());
  w.close("FIELD");
}

void write_entry(xml::Writer& w, const BoToggle& e) {
  w.open("BO");
  w.leaf("BONAME", e.bo_name);
  w.leaf("ENABLE", bool_text(e.enabled));
  w.close("BO");
}

void write_entry(xml::Writer& w, const BackendBinding& e) {
  w.open("BE");
  w.leaf("BENAME", e.be_name);
  w.leaf("API", e.api);
  w.leaf("STATE", e.state == ConnectionState::kFull ? "Full" : "Less");
  w.leaf("ERPBACKEND", e.erp_backend);
  w.close("BE");
}

void write_entry(xml::Writer& w, const Connection& e) {
  w.open("CONNECTION");
  w.leaf("NAME", e.name);
  w.leaf("HOST", e.host);
  w.leaf("CLIENT", e.client);
  w.close("CONNECTION");
}

void write_entry(xml::Writer& w, const BusinessRole& e) {
  w.open("BUSINESSROLE");
  w.leaf("NAME", e.name);
  w.leaf("DESCRIPTION", e.description);
  w.leaf("NAVBAR", e.nav_bar_profile);
  w.leaf("TECPROFILE", e.technical_profile);
  w.leaf("LAYPROFILE", e.layout_profile);
  w.leaf("PFCG", e.pfcg_role);
  w.close("BUSINESSROLE");
}

void write_entry(xml::Writer& w, const BolAccessRule& e) {
  w.open("BUSINESSROLE");
  w.leaf("NAME", e.role_name);
  if (e.description) w.leaf("DESCRIPTION", *e.description);
  w.open("BOLS");
  for (const auto& g : e.grants) {
    w.open("BOL");
    w.leaf("NAME", g.bol_name);
    w.leaf("USE", bool_text(g.use));
    w.close("BOL");
  }
  w.close("BOLS");
  w.close("BUSINESSROLE");
}

void write_entry(xml::Writer& w, const DataObjectBinding& e) {
  w.open("DO");
  w.leaf("NAME", e.do_name);
  w.leaf("DATABASENAME", e.database_name);
  w.close("DO");
}

void write_entry(xml::Writer& w, const Database& e) {
  w.open("DATABASE");
  w.leaf("NAME", e.name);
  w.leaf("HOST", e.host);
  w.leaf("USE", e.use == DatabaseUse::kDefault ? "Default" : "Request");
  w.close("DATABASE");
}

void write_entry(xml::Writer& w, const KeyValueSetting& e) {
  w.open("KV");
  w.leaf("KEY", e.key);
  if (e.value.is_scalar()) {
    w.leaf("VALUE", e.value.scalar_value());
  } else {
    // Sets are unordered; canonical form lists items sorted.
    SettingValue::Items items = e.value.set_items();
    std::sort(items.begin(), items.end());
    w.open("SET");
    for (const auto& item : items) w.leaf("ITEM", item);
    w.close("SET");
  }
  w.close("KV");
}

void write_entry(xml::Writer& w, const WorkflowDef& e) {
  w.open("WORKFLOW");
  w.leaf("ID", e.id);
  w.leaf("NAME", e.name);
  w.leaf("ROLE", e.role_binding);
  w.open("TASKS");
  for (const auto& t : e.tasks) {
    w.open("TASK");
    w.leaf("STEP", std::to_string(t.step_no));
    w.leaf("ACTIVITY", t.activity_type);
    w.leaf("BO", t.bo_name);
    w.leaf("METHOD", t.method);
    if (t.rule) w.leaf("RULE", *t.rule);
    w.close("TASK");
  }
  w.close("TASKS");
  w.close("WORKFLOW");
}

template <typename Doc>
void write_body(xml::Writer& w, const Doc& doc) {
  for (const auto& e : doc.entries) write_entry(w, e);
}

void write_body(xml::Writer& w, const PropertyBundle& doc) {
  w.open("LABELS");
  for (const auto& e : doc.labels) write_property(w, "LABELELEMENT", e);
  w.close("LABELS");
  w.open("TEXTS");
  for (const auto& e : doc.texts) write_property(w, "TEXTELEMENT", e);
  w.close("TEXTS");
}

template <typename Entry>
std::string canonical_entry(const Entry& e) {
  xml::Writer w;
  write_entry(w, e);
  return std::move(w).take();
}

template <typename Doc>
void append_digests(std::vector<EntryDigest>& out, const Doc& doc) {
  for (const auto& e : doc.entries) {
    std::string bytes = canonical_entry(e);
    std::string tag = bytes.substr(1, bytes.find('>') - 1);
    out.push_back({std::move(tag), std::string(entry_key(e)), std::move(bytes)});
  }
}

void append_digests(std::vector<EntryDigest>& out, const PropertyBundle& doc) {
  for (const auto* list : {&doc.labels, &doc.texts}) {
    std::string_view tag = list == &doc.labels ? "LABELELEMENT" : "TEXTELEMENT";
    for (const auto& e : *list) {
      xml::Writer w;
      write_property(w, tag, e);
      out.push_back({std::string(tag), e.name, std::move(w).take()});
    }
  }
}

}  // namespace

std::string_view parse_error_code_name(ParseErrorCode code) noexcept {
  switch (code) {
    case ParseErrorCode::kMalformedXml: return "MALFORMED_XML";
    case ParseErrorCode::kUnknownTag: return "UNKNOWN_TAG";
    case ParseErrorCode::kMissingTag: return "MISSING_TAG";
    case ParseErrorCode::kBadEnum: return "BAD_ENUM";
    case ParseErrorCode::kBadNumber: return "BAD_NUMBER";
  }
  return "MALFORMED_XML";
}

ParseError::ParseError(ConfigCategory category, int line, int column, ParseErrorCode code,
                       std::string detail)
    : Error(ErrorCode::kParse, std::string(category_slug(category)) + ":" +
                                   std::to_string(line) + ":" + std::to_string(column) + ": " +
                                   std::string(parse_error_code_name(code)) + ": " + detail),
      category_(category),
      line_(line < 1 ? 1 : line),
      column_(column < 1 ? 1 : column),
      parse_code_(code) {}

ConfigDocument parse(ConfigCategory category, std::string_view bytes, std::string language) {
  Element root;
  try {
    root = xml::parse(bytes);
  } catch (const xml::SyntaxError& e) {
    throw ParseError(category, e.line(), e.column(), ParseErrorCode::kMalformedXml, e.what());
  }
  Decoder d(category);
  d.expect_tag(root, category_root_tag(category));
  if (category != ConfigCategory::kProperties) language.clear();
  return ConfigDocument{decode_body(d, category, root, language), 0};
}

ConfigDocument parse(const DocKey& key, std::string_view bytes) {
  return parse(key.category, bytes, key.language);
}

std::string serialize(const ConfigDocument& doc) {
  xml::Writer w;
  std::string_view root = category_root_tag(doc.category());
  w.open(root);
  std::visit([&](const auto& body) { write_body(w, body); }, doc.body);
  w.close(root);
  return std::move(w).take();
}

std::vector<EntryDigest> entry_digests(const ConfigDocument& doc) {
  std::vector<EntryDigest> out;
  std::visit([&](const auto& body) { append_digests(out, body); }, doc.body);
  return out;
}

}  // namespace tenantconf
