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

#ifndef TENANTCONF_DIFF_HPP
#define TENANTCONF_DIFF_HPP

#include <string>
#include <vector>

#include "tenantconf/model.hpp"

namespace tenantconf {

/// Entry-level differences from `base` to `changed`, keyed by entry name:
///   "- TAG key"  entry only in base
///   "~ TAG key"  entry in both with different content
///   "+ TAG key"  entry only in changed
/// Removed and changed lines follow base order; added lines follow changed
/// order. Empty when the documents hold the same entries.
std::vector<std::string> entry_diff(const ConfigDocument& base, const ConfigDocument& changed);

}  // namespace tenantconf

#endif  // TENANTCONF_DIFF_HPP
