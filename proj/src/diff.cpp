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

#include "tenantconf/diff.hpp"

#include <map>
#include <utility>

#include "tenantconf/codec.hpp"

namespace tenantconf {

namespace {

// (tag, key, occurrence) so that duplicate keys in an invalid document still
// pair up deterministically.
using Slot = std::tuple<std::string, std::string, int>;

std::vector<std::pair<Slot, const EntryDigest*>> slots(const std::vector<EntryDigest>& digests) {
  std::map<std::pair<std::string, std::string>, int> seen;
  std::vector<std::pair<Slot, const EntryDigest*>> out;
  for (const auto& d : digests) {
    int n = seen[{d.tag, d.key}]++;
    out.emplace_back(Slot{d.tag, d.key, n}, &d);
  }
  return out;
}

}  // namespace

std::vector<std::string> entry_diff(const ConfigDocument& base, const ConfigDocument& changed) {
  if (base.category() != changed.category()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot diff documents of different categories");
  }
  const auto before = entry_digests(base);
  const auto after = entry_digests(changed);
  const auto before_slots = slots(before);
  const auto after_slots = slots(after);
  std::map<Slot, const EntryDigest*> after_index(after_slots.begin(), after_slots.end());
  std::map<Slot, const EntryDigest*> before_index(before_slots.begin(), before_slots.end());

  std::vector<std::string> lines;
  for (const auto& [slot, digest] : before_slots) {
    auto it = after_index.find(slot);
    if (it == after_index.end()) {
      lines.push_back("- " + digest->tag + " " + digest->key);
    } else if (it->second->canonical != digest->canonical) {
      lines.push_back("~ " + digest->tag + " " + digest->key);
    }
  }
  for (const auto& [slot, digest] : after_slots) {
    if (!before_index.contains(slot)) lines.push_back("+ " + digest->tag + " " + digest->key);
  }
  return lines;
}

}  // namespace tenantconf
