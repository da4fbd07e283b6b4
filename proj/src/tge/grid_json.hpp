// Copyright 2026 The tablegrid-eval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "tge/parse_report.hpp"
#include "tge/table_grid.hpp"

namespace tge {

/// Parses the canonical grid interchange JSON:
///   {"n_rows":M,"n_cols":N,"cells":[{"row_start":..,"row_end":..,
///    "col_start":..,"col_end":..,"text":"..","is_column_header":..,
///    "is_projected_row_header":..}, ...]}
/// The empty grid serializes as {"n_rows":0,"n_cols":0,"cells":[]}.
/// Throws SchemaViolation on malformed documents; grid-construction errors
/// (OverlappingSpans etc.) propagate.
TableGrid load_grid_json(std::string_view bytes);

/// Serializes to the canonical form: UTF-8, keys sorted, cells in reading
/// order of their top-left position. load(save(g)) == g.
std::string save_grid_json(const TableGrid& grid);

/// Lenient multi-grid loader: accepts either a single grid object or a JSON
/// array of grid objects. Invalid entries are skipped with a warning rather
/// than failing the document. Throws SchemaViolation only when the document
/// itself is not valid JSON of either shape.
ParseReport parse_grid_json(std::string_view bytes);

}  // namespace tge
