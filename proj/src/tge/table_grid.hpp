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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tge/error.hpp"

namespace tge {

/// Scoring criterion: Top compares cell topology (spanning structure), Con
/// additionally compares cell text content.
enum class Criterion { Top, Con };

/// Rectangular grid footprint of a logical cell, zero-based inclusive.
struct CellSpan {
  std::size_t row_start = 0;
  std::size_t row_end = 0;
  std::size_t col_start = 0;
  std::size_t col_end = 0;

  std::size_t height() const { return row_end - row_start + 1; }
  std::size_t width() const { return col_end - col_start + 1; }
  std::size_t area() const { return height() * width(); }

  friend bool operator==(const CellSpan&, const CellSpan&) = default;
  friend auto operator<=>(const CellSpan&, const CellSpan&) = default;
};

/// A logical table cell: footprint plus content and header flags. Spanning
/// cells occupy more than one grid position.
struct LogicalCell {
  CellSpan span;
  std::string text;
  bool is_column_header = false;
  bool is_projected_row_header = false;

  friend bool operator==(const LogicalCell&, const LogicalCell&) = default;
};

/// A recognized table as an n_rows x n_cols matrix of grid cells, where each
/// position belongs to exactly one logical cell and logical cells tile the
/// grid with non-overlapping rectangles.
///
/// Cell text is whitespace-normalized on construction (trim + collapse runs),
/// so all comparisons downstream operate on canonical text.
///
/// The default-constructed value is the empty 0x0 grid, used as the sentinel
/// for a missing/unparsable prediction. `build` itself requires at least one
/// row and column. Instances are immutable after construction.
class TableGrid {
 public:
  TableGrid() = default;

  /// Validates and assembles a grid from logical cells.
  /// Throws SpanOutOfBounds, OverlappingSpans, or UncoveredPosition.
  static TableGrid build(std::size_t n_rows, std::size_t n_cols,
                         std::vector<LogicalCell> cells);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  /// Total number of grid positions (|A| in the similarity formula).
  std::size_t size() const { return n_rows_ * n_cols_; }
  bool empty() const { return size() == 0; }

  bool is_long() const { return n_rows_ >= 30; }
  bool is_wide() const { return n_cols_ >= 12; }

  /// Logical cells in reading order of their top-left position.
  std::span<const LogicalCell> logical_cells() const { return cells_; }

  /// The logical cell owning grid position (row, col).
  const LogicalCell& cell_at(std::size_t row, std::size_t col) const;

  /// Index into logical_cells() of the owner of (row, col).
  std::size_t owner_index(std::size_t row, std::size_t col) const;

  friend bool operator==(const TableGrid&, const TableGrid&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<LogicalCell> cells_;      // sorted by (row_start, col_start)
  std::vector<std::uint32_t> owner_;    // row-major, index into cells_
};

/// Exact-match test. Top: equal dimensions and identical spans at every
/// position. Con: Top plus identical (normalized) text. Header flags are
/// not compared.
bool grid_exact_match(const TableGrid& a, const TableGrid& b, Criterion c);

}  // namespace tge
