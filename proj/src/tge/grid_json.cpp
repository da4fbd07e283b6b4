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

#include "tge/grid_json.hpp"

#include <json.hpp>

namespace tge {

namespace {

using nlohmann::json;

std::size_t require_count(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
    fail(ErrorCode::SchemaViolation,
         std::string("missing or non-integer \"") + key + "\"");
  }
  return obj[key].get<std::size_t>();
}

LogicalCell cell_from_json(const json& c) {
  if (!c.is_object()) {
    fail(ErrorCode::SchemaViolation, "cell record is not an object");
  }
  LogicalCell cell;
  cell.span.row_start = require_count(c, "row_start");
  cell.span.row_end = require_count(c, "row_end");
  cell.span.col_start = require_count(c, "col_start");
  cell.span.col_end = require_count(c, "col_end");
  if (!c.contains("text") || !c["text"].is_string()) {
    fail(ErrorCode::SchemaViolation, "missing or non-string \"text\"");
  }
  cell.text = c["text"].get<std::string>();
  if (c.contains("is_column_header")) {
    if (!c["is_column_header"].is_boolean()) {
      fail(ErrorCode::SchemaViolation, "\"is_column_header\" must be boolean");
    }
    cell.is_column_header = c["is_column_header"].get<bool>();
  }
  if (c.contains("is_projected_row_header")) {
    if (!c["is_projected_row_header"].is_boolean()) {
      fail(ErrorCode::SchemaViolation,
           "\"is_projected_row_header\" must be boolean");
    }
    cell.is_projected_row_header = c["is_projected_row_header"].get<bool>();
  }
  return cell;
}

TableGrid grid_from_json(const json& doc) {
  if (!doc.is_object()) {
    fail(ErrorCode::SchemaViolation, "grid document is not a JSON object");
  }
  const std::size_t n_rows = require_count(doc, "n_rows");
  const std::size_t n_cols = require_count(doc, "n_cols");
  if (!doc.contains("cells") || !doc["cells"].is_array()) {
    fail(ErrorCode::SchemaViolation, "missing or non-array \"cells\"");
  }
  if (n_rows == 0 && n_cols == 0) {
    if (!doc["cells"].empty()) {
      fail(ErrorCode::SchemaViolation, "empty grid must have no cells");
    }
    return TableGrid{};
  }
  std::vector<LogicalCell> cells;
  cells.reserve(doc["cells"].size());
  for (const json& c : doc["cells"]) cells.push_back(cell_from_json(c));
  return TableGrid::build(n_rows, n_cols, std::move(cells));
}

json parse_document(std::string_view bytes) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) {
    fail(ErrorCode::SchemaViolation, "input is not valid JSON");
  }
  return doc;
}

}  // namespace

TableGrid load_grid_json(std::string_view bytes) {
  return grid_from_json(parse_document(bytes));
}

std::string save_grid_json(const TableGrid& grid) {
  json doc;
  doc["n_rows"] = grid.rows();
  doc["n_cols"] = grid.cols();
  json cells = json::array();
  for (const LogicalCell& c : grid.logical_cells()) {
    json rec;
    rec["row_start"] = c.span.row_start;
    rec["row_end"] = c.span.row_end;
    rec["col_start"] = c.span.col_start;
    rec["col_end"] = c.span.col_end;
    rec["text"] = c.text;
    rec["is_column_header"] = c.is_column_header;
    rec["is_projected_row_header"] = c.is_projected_row_header;
    cells.push_back(std::move(rec));
  }
  doc["cells"] = std::move(cells);
  return doc.dump();
}

ParseReport parse_grid_json(std::string_view bytes) {
  ParseReport report;
  const json doc = parse_document(bytes);
  if (doc.is_object()) {
    report.grids.push_back(grid_from_json(doc));
    return report;
  }
  if (!doc.is_array()) {
    fail(ErrorCode::SchemaViolation,
         "grid document must be an object or an array of objects");
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      report.grids.push_back(grid_from_json(doc[i]));
    } catch (const Error& e) {
      report.warn(WarnCode::SchemaEntrySkipped, e.what(),
                  "entry " + std::to_string(i));
    }
  }
  if (report.grids.empty()) {
    report.warn(WarnCode::NoTableFound, "no valid grid in document");
  }
  return report;
}

}  // namespace tge
