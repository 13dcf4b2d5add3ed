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

#include "support.hpp"
#include "tenantconf/codec.hpp"
#include "tenantconf/diff.hpp"

using namespace tenantconf;
using namespace tenantconf::testing;

namespace {

ConfigDocument fixture(const std::string& name) {
  return parse(key_for_file(name), reference_fixture(name));
}

}  // namespace

TEST_CASE("identical documents have no diff") {
  for (const auto& [key, doc] : shipped_defaults()) CHECK(entry_diff(doc, doc).empty());
}

TEST_CASE("single edits") {
  ConfigDocument css = fixture("css.xml");
  ConfigDocument edited = css;
  edited.as<CssDocument>().entries[0].location = "/elsewhere";
  CHECK(entry_diff(css, edited) == std::vector<std::string>{"~ CSSELEMENT B2C"});

  ConfigDocument blocks = fixture("blocks.xml");
  ConfigDocument fewer = blocks;
  fewer.as<BlocksDocument>().entries.erase(fewer.as<BlocksDocument>().entries.begin() + 1);
  CHECK(entry_diff(blocks, fewer) == std::vector<std::string>{"- BLOCK Component n/ViewJ"});
  CHECK(entry_diff(fewer, blocks) == std::vector<std::string>{"+ BLOCK Component n/ViewJ"});

  ConfigDocument props = fixture("properties.en.xml");
  ConfigDocument changed = props;
  changed.as<PropertyBundle>().texts[0].value = "x";
  changed.as<PropertyBundle>().labels.push_back({"Page2.New", "y"});
  CHECK(entry_diff(props, changed) ==
        std::vector<std::string>{"~ TEXTELEMENT Page1.Text1", "+ LABELELEMENT Page2.New"});
}

TEST_CASE("reordering entries is not a difference") {
  ConfigDocument css = fixture("css.xml");
  ConfigDocument swapped = css;
  std::swap(swapped.as<CssDocument>().entries[0], swapped.as<CssDocument>().entries[1]);
  CHECK(entry_diff(css, swapped).empty());
}

TEST_CASE("diff line counts match a set-difference oracle") {
  Rng rng(3);
  for (int round = 0; round < 300; ++round) {
    CssDocument a, b;
    std::map<std::string, std::string> ma, mb;
    for (int i = 0; i < 6; ++i) {
      std::string name = "n" + std::to_string(i);
      std::string loc = "/" + std::to_string(rng() % 2);
      if (rng() % 3) { a.entries.push_back({name, loc}); ma[name] = loc; }
      if (rng() % 2) loc = "/" + std::to_string(rng() % 2);
      if (rng() % 3) { b.entries.push_back({name, loc}); mb[name] = loc; }
    }
    std::size_t removed = 0, added = 0, changed = 0;
    for (auto& [k, v] : ma) {
      if (!mb.contains(k)) ++removed;
      else if (mb[k] != v) ++changed;
    }
    for (auto& [k, v] : mb) added += !ma.contains(k);
    auto lines = entry_diff(ConfigDocument{a, 0}, ConfigDocument{b, 0});
    auto count = [&](char c) {
      return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [&](const std::string& l) { return l[0] == c; }));
    };
    CHECK(count('-') == removed);
    CHECK(count('+') == added);
    CHECK(count('~') == changed);
  }
}

TEST_CASE("documents of different categories cannot be diffed") {
  CHECK(error_of([] {
          entry_diff(ConfigDocument::empty(ConfigCategory::kFields),
                     ConfigDocument::empty(ConfigCategory::kBlocks));
        }) == ErrorCode::kInvalidArgument);
}
