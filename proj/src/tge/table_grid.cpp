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

#include "tge/table_grid.hpp"

#include <algorithm>
#include <limits>

#include "tge/text.hpp"

namespace tge {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OverlappingSpans: return "OverlappingSpans";
    case ErrorCode::UncoveredPosition: return "UncoveredPosition";
    case ErrorCode::SpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::HardParseFailure: return "HardParseFailure";
    case ErrorCode::OracleLimitExceeded: return "OracleLimitExceeded";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingScores: return "MissingScores";
    case ErrorCode::XmlMalformed: return "XmlMalformed";
    case ErrorCode::UnknownClassName: return "UnknownClassName";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

TableGrid TableGrid::build(std::size_t n_rows, std::size_t n_cols,
                           std::vector<LogicalCell> cells) {
  if (n_rows == 0 || n_cols == 0) {
    fail(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  if (cells.size() > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::InvalidArgument, "too many logical cells");
  }

  std::sort(cells.begin(), cells.end(),
            [](const LogicalCell& a, const LogicalCell& b) {
              return std::tie(a.span.row_start, a.span.col_start) <
                     std::tie(b.span.row_start, b.span.col_start);
            });

  TableGrid grid;
  grid.n_rows_ = n_rows;
  grid.n_cols_ = n_cols;
  grid.owner_.assign(n_rows * n_cols, std::numeric_limits<std::uint32_t>::max());

  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const CellSpan& s = cells[idx].span;
    if (s.row_start > s.row_end || s.col_start > s.col_end ||
        s.row_end >= n_rows || s.col_end >= n_cols) {
      fail(ErrorCode::SpanOutOfBounds,
           "cell span [" + std::to_string(s.row_start) + ".." +
               std::to_string(s.row_end) + ", " + std::to_string(s.col_start) +
               ".." + std::to_string(s.col_end) + "] outside " +
               std::to_string(n_rows) + "x" + std::to_string(n_cols) +
               " grid");
    }
    for (std::size_t r = s.row_start; r <= s.row_end; ++r) {
      for (std::size_t c = s.col_start; c <= s.col_end; ++c) {
        std::uint32_t& slot = grid.owner_[r * n_cols + c];
        if (slot != std::numeric_limits<std::uint32_t>::max()) {
          fail(ErrorCode::OverlappingSpans,
               "grid position (" + std::to_string(r) + "," +
                   std::to_string(c) + ") covered by two logical cells");
        }
        slot = static_cast<std::uint32_t>(idx);
      }
    }
    cells[idx].text = normalize_ws(cells[idx].text);
  }

  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (grid.owner_[r * n_cols + c] ==
          std::numeric_limits<std::uint32_t>::max()) {
        fail(ErrorCode::UncoveredPosition,
             "grid position (" + std::to_string(r) + "," + std::to_string(c) +
                 ") belongs to no logical cell");
      }
    }
  }

  grid.cells_ = std::move(cells);
  return grid;
}

const LogicalCell& TableGrid::cell_at(std::size_t row, std::size_t col) const {
  return cells_[owner_index(row, col)];
}

std::size_t TableGrid::owner_index(std::size_t row, std::size_t col) const {
  if (row >= n_rows_ || col >= n_cols_) {
    fail(ErrorCode::InvalidArgument, "grid position out of range");
  }
  return owner_[row * n_cols_ + col];
}

bool grid_exact_match(const TableGrid& a, const TableGrid& b, Criterion c) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto ca = a.logical_cells();
  const auto cb = b.logical_cells();
  // Both tilings are sorted by top-left position, so identical tilings
  // produce positionally identical cell lists.
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].span != cb[i].span) return false;
    if (c == Criterion::Con && ca[i].text != cb[i].text) return false;
  }
  return true;
}

}  // namespace tge
