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

#ifndef TENANTCONF_GRID_HPP
#define TENANTCONF_GRID_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tenantconf {

/// Spreadsheet-style page cell such as "A3" or "AB12". Columns run A..ZZ
/// (1..702), rows from 1.
struct GridCell {
  static constexpr std::uint32_t kMaxColumn = 702;
  static constexpr std::uint32_t kMaxRow = 1'048'576;

  std::uint32_t column = 1;
  std::uint32_t row = 1;

  /// Throws Error(kCoordinate) on anything but [A-Z]{1,2}[1-9][0-9]* within
  /// the bounds above.
  static GridCell parse(std::string_view text);

  std::string to_string() const;

  // Row-major so ordered sets iterate left to right along a row.
  auto operator<=>(const GridCell& other) const {
    if (auto c = row <=> other.row; c != 0) return c;
    return column <=> other.column;
  }
  bool operator==(const GridCell&) const = default;
};

/// "A" -> 1, "Z" -> 26, "AA" -> 27. Throws Error(kCoordinate).
std::uint32_t column_index(std::string_view letters);
std::string column_label(std::uint32_t index);

}  // namespace tenantconf

#endif  // TENANTCONF_GRID_HPP
