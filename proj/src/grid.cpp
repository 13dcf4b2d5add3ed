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

#include "tenantconf/grid.hpp"

#include "tenantconf/errors.hpp"
#include "tenantconf/model.hpp"

namespace tenantconf {

std::uint32_t column_index(std::string_view letters) {
  if (letters.empty() || letters.size() > 2) {
    throw Error(ErrorCode::kCoordinate, "bad column '" + std::string(letters) + "'");
  }
  std::uint32_t index = 0;
  for (char c : letters) {
    if (c < 'A' || c > 'Z') {
      throw Error(ErrorCode::kCoordinate, "bad column '" + std::string(letters) + "'");
    }
    index = index * 26 + static_cast<std::uint32_t>(c - 'A' + 1);
  }
  return index;
}

std::string column_label(std::uint32_t index) {
  if (index < 1 || index > GridCell::kMaxColumn) {
    throw Error(ErrorCode::kCoordinate, "column out of range: " + std::to_string(index));
  }
  std::string out;
  while (index > 0) {
    --index;
    out.insert(out.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return out;
}

GridCell GridCell::parse(std::string_view text) {
  std::size_t split = 0;
  while (split < text.size() && text[split] >= 'A' && text[split] <= 'Z') ++split;
  std::string_view letters = text.substr(0, split);
  std::string_view digits = text.substr(split);
  auto fail = [&] {
    return Error(ErrorCode::kCoordinate, "bad grid cell '" + std::string(text) + "'");
  };
  if (letters.empty() || letters.size() > 2 || digits.empty() || digits.size() > 7 ||
      digits[0] == '0') {
    throw fail();
  }
  std::uint32_t row = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw fail();
    row = row * 10 + static_cast<std::uint32_t>(c - '0');
  }
  if (row > kMaxRow) throw fail();
  return GridCell{column_index(letters), row};
}

std::string GridCell::to_string() const {
  return column_label(column) + std::to_string(row);
}

std::set<GridCell> grid_cells(const FieldPlacement& placement) {
  const GridCell& from = placement.position_from;
  const GridCell& to = placement.position_to;
  for (const GridCell* cell : {&from, &to}) {
    if (cell->column < 1 || cell->column > GridCell::kMaxColumn || cell->row < 1 ||
        cell->row > GridCell::kMaxRow) {
      throw Error(ErrorCode::kCoordinate, "grid cell out of range");
    }
  }
  if (from.row != to.row) {
    throw Error(ErrorCode::kCoordinate,
                "field '" + placement.field_name + "' spans more than one row");
  }
  if (from.column > to.column) {
    throw Error(ErrorCode::kCoordinate,
                "field '" + placement.field_name + "' runs right to left");
  }
  std::set<GridCell> cells;
  for (std::uint32_t col = from.column; col <= to.column; ++col) {
    cells.insert(GridCell{col, from.row});
  }
  return cells;
}

}  // namespace tenantconf
