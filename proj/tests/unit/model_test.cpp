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

#include <regex>

#include "support.hpp"
#include "tenantconf/model.hpp"

using namespace tenantconf;
using namespace tenantconf::testing;

TEST_CASE("tenant ids follow the token grammar") {
  const std::regex grammar("[A-Za-z0-9_-]{1,64}");
  Rng rng(3);
  const std::string alphabet = "Tt01_-. /\xc3\xa9:";
  for (int i = 0; i < 3000; ++i) {
    std::string id;
    std::size_t len = rng() % 70;
    for (std::size_t k = 0; k < len; ++k) id += alphabet[rng() % alphabet.size()];
    CAPTURE(id);
    bool expected = std::regex_match(id, grammar);
    CHECK(TenantId::is_valid(id) == expected);
    CHECK((error_of([&] { TenantId{id}; }) == ErrorCode::kInvalidArgument) == !expected);
  }
  CHECK(TenantId("T1").str() == "T1");
  CHECK(TenantId::is_valid(std::string(64, 'a')));
  CHECK(!TenantId::is_valid(std::string(65, 'a')));
}

TEST_CASE("fifteen categories with stable slugs") {
  CHECK(kAllCategories.size() == 15);
  std::set<std::string> slugs;
  for (ConfigCategory c : kAllCategories) {
    auto slug = std::string(category_slug(c));
    slugs.insert(slug);
    CHECK(category_from_slug(slug) == c);
    CHECK(ConfigDocument::empty(c, c == ConfigCategory::kProperties ? "en" : "").category() == c);
  }
  CHECK(slugs.size() == 15);
  CHECK(category_slug(ConfigCategory::kBusinessRoles) == "business-roles");
  CHECK(!category_from_slug("Fields"));
  CHECK(category_root_tag(ConfigCategory::kBolAccess) == "BUSINESSROLES");
  CHECK(category_root_tag(ConfigCategory::kDataObjects) == "DOS");
}

TEST_CASE("language tags") {
  const std::regex grammar("[A-Za-z]{2,8}(-[A-Za-z0-9]{1,8})*");
  for (const char* tag : {"en", "de", "en-US", "zh-Hant-TW", "e", "english12", "en_US", "en-",
                          "-en", "en--US", "fr-123456789", "toolongtag", ""}) {
    CAPTURE(tag);
    CHECK(is_language_tag(tag) == std::regex_match(tag, grammar));
  }
}

TEST_CASE("document keys") {
  CHECK(DocKey::make(ConfigCategory::kFields).file_name() == "fields.xml");
  CHECK(DocKey::make(ConfigCategory::kProperties, "en").file_name() == "properties.en.xml");
  CHECK(DocKey::make(ConfigCategory::kProperties, "en").to_string() == "properties.en");
  CHECK(error_of([] { DocKey::make(ConfigCategory::kProperties); }) == ErrorCode::kUnknownLanguage);
  CHECK(error_of([] { DocKey::make(ConfigCategory::kProperties, "e n"); }) ==
        ErrorCode::kUnknownLanguage);
  CHECK(error_of([] { DocKey::make(ConfigCategory::kFields, "en"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("set settings compare without order") {
  auto a = SettingValue::set({"sold-to", "ship-to", "bill-to", "payer"});
  auto b = SettingValue::set({"payer", "bill-to", "ship-to", "sold-to"});
  CHECK(a == b);
  CHECK(!(a == SettingValue::set({"payer"})));
  CHECK(!(SettingValue::scalar("SO") == SettingValue::set({"SO"})));
  CHECK(SettingValue::scalar("SO") == SettingValue::scalar("SO"));
}

TEST_CASE("block entry key") {
  CHECK(entry_key(Block{"Component 1", "ViewI", "t", true, LoadOption::kDirect}) == "Component 1/ViewI");
}
