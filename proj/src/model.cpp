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

#include "tenantconf/model.hpp"

#include <algorithm>
#include <utility>

namespace tenantconf {

namespace {

struct CategoryInfo {
  ConfigCategory category;
  std::string_view slug;
  std::string_view root_tag;
};

constexpr std::array<CategoryInfo, kAllCategories.size()> kCategoryInfo = {{
    {ConfigCategory::kCssElements, "css", "CSSELEMENTS"},
    {ConfigCategory::kImages, "images", "IMAGEELEMENTS"},
    {ConfigCategory::kScripts, "scripts", "SCRIPTELEMENTS"},
    {ConfigCategory::kProperties, "properties", "PROPERTIES"},
    {ConfigCategory::kBlocks, "blocks", "BLOCKS"},
    {ConfigCategory::kFields, "fields", "FIELDS"},
    {ConfigCategory::kFrontendBOs, "bos", "BOS"},
    {ConfigCategory::kBackendBindings, "bes", "BES"},
    {ConfigCategory::kConnections, "connections", "CONNECTIONS"},
    {ConfigCategory::kBusinessRoles, "business-roles", "BUSINESSROLES"},
    {ConfigCategory::kBolAccess, "bol-access", "BUSINESSROLES"},
    {ConfigCategory::kDataObjects, "data-objects", "DOS"},
    {ConfigCategory::kDatabases, "databases", "DATABASES"},
    {ConfigCategory::kKeyValues, "key-values", "KEYVALUES"},
    {ConfigCategory::kWorkflows, "workflows", "WORKFLOWS"},
}};

static_assert(std::variant_size_v<DocumentBody> == kAllCategories.size());

template <std::size_t I = 0>
DocumentBody empty_body(std::size_t index) {
  if constexpr (I < std::variant_size_v<DocumentBody>) {
    if (index == I) return DocumentBody(std::in_place_index<I>);
    return empty_body<I + 1>(index);
  } else {
    throw Error(ErrorCode::kUnknownCategory, "category index out of range");
  }
}

template <std::size_t I = 0>
constexpr bool body_order_matches() {
  if constexpr (I < std::variant_size_v<DocumentBody>) {
    using Alt = std::variant_alternative_t<I, DocumentBody>;
    return static_cast<std::size_t>(Alt::kCategory) == I &&
           kCategoryInfo[I].category == Alt::kCategory &&
           body_order_matches<I + 1>();
  }
  return true;
}
static_assert(body_order_matches());

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

bool TenantId::is_valid(std::string_view id) noexcept {
  if (id.empty() || id.size() > kMaxLength) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return is_alpha(c) || is_digit(c) || c == '-' || c == '_';
  });
}

TenantId::TenantId(std::string id) : id_(std::move(id)) {
  if (!is_valid(id_)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid tenant id '" + id_ + "'");
  }
}

std::string_view category_slug(ConfigCategory category) noexcept {
  return kCategoryInfo[static_cast<std::size_t>(category)].slug;
}

std::optional<ConfigCategory> category_from_slug(std::string_view slug) noexcept {
  for (const auto& info : kCategoryInfo) {
    if (info.slug == slug) return info.category;
  }
  return std::nullopt;
}

std::string_view category_root_tag(ConfigCategory category) noexcept {
  return kCategoryInfo[static_cast<std::size_t>(category)].root_tag;
}

bool is_language_tag(std::string_view tag) noexcept {
  std::size_t i = 0;
  std::size_t primary = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i, ++primary;
  if (primary < 2 || primary > 8) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    std::size_t len = 0;
    while (i < tag.size() && (is_alpha(tag[i]) || is_digit(tag[i]))) ++i, ++len;
    if (len < 1 || len > 8) return false;
  }
  return true;
}

DocKey DocKey::make(ConfigCategory category, std::string language) {
  if (category == ConfigCategory::kProperties) {
    if (!is_language_tag(language)) {
      throw Error(ErrorCode::kUnknownLanguage,
                  "properties require a language tag, got '" + language + "'");
    }
  } else if (!language.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(category_slug(category)) + " takes no language");
  }
  return DocKey{category, std::move(language)};
}

std::string DocKey::file_name() const { return to_string() + ".xml"; }

std::string DocKey::to_string() const {
  std::string out(category_slug(category));
  if (!language.empty()) {
    out += '.';
    out += language;
  }
  return out;
}

SettingValue SettingValue::scalar(std::string value) {
  SettingValue v;
  v.value_ = std::move(value);
  return v;
}

SettingValue SettingValue::set(Items items) {
  SettingValue v;
  v.value_ = std::move(items);
  return v;
}

bool SettingValue::operator==(const SettingValue& other) const {
  if (is_scalar() != other.is_scalar()) return false;
  if (is_scalar()) return scalar_value() == other.scalar_value();
  Items a = set_items();
  Items b = other.set_items();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

ConfigDocument ConfigDocument::empty(ConfigCategory category, std::string language) {
  ConfigDocument doc{empty_body(static_cast<std::size_t>(category)), 0};
  if (auto* bundle = std::get_if<PropertyBundle>(&doc.body)) {
    bundle->language = std::move(language);
  }
  return doc;
}

DocKey ConfigDocument::key() const {
  if (const auto* bundle = std::get_if<PropertyBundle>(&body)) {
    return DocKey{ConfigCategory::kProperties, bundle->language};
  }
  return DocKey{category(), {}};
}

std::string entry_key(const Block& b) { return b.component + "/" + b.view_name; }

}  // namespace tenantconf
