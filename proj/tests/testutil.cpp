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

#include "testutil.hpp"

#include <algorithm>
#include <map>

namespace tge::test {

namespace {

std::string random_text(Rng& rng, TextStyle style, std::size_t cell_counter) {
  if (style == TextStyle::UniquePerCell) {
    return "cell" + std::to_string(cell_counter);
  }
  std::uniform_int_distribution<std::size_t> len_dist(0, 8);
  const std::size_t len = len_dist(rng);
  std::string out;
  if (style == TextStyle::MarkdownSafe) {
    static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789 ";
    std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlphabet) - 2);
    for (std::size_t i = 0; i < len; ++i) out.push_back(kAlphabet[pick(rng)]);
    return out;
  }
  static constexpr char kAlphabet[] =
      "abcXYZ019 <>&\"'\t|=-:.\xC3\xA9";  // includes markup specials and é
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlphabet) - 2);
  for (std::size_t i = 0; i < len; ++i) {
    const char c = kAlphabet[pick(rng)];
    // The alphabet stores é as two bytes; keep sequences whole.
    if (static_cast<unsigned char>(c) == 0xC3) {
      out += "\xC3\xA9";
    } else if (static_cast<unsigned char>(c) != 0xA9) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

TableGrid random_grid(Rng& rng, std::size_t n_rows, std::size_t n_cols,
                      TextStyle style) {
  std::vector<std::vector<bool>> taken(n_rows, std::vector<bool>(n_cols, false));
  std::vector<LogicalCell> cells;
  std::size_t counter = 0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (taken[r][c]) continue;
      std::size_t max_w = 0;
      while (c + max_w < n_cols && !taken[r][c + max_w]) ++max_w;
      std::uniform_int_distribution<std::size_t> w_dist(1, max_w);
      const std::size_t w = w_dist(rng);
      std::size_t max_h = 1;
      while (r + max_h < n_rows) {
        bool free_row = true;
        for (std::size_t dx = 0; dx < w && free_row; ++dx) {
          free_row = !taken[r + max_h][c + dx];
        }
        if (!free_row) break;
        ++max_h;
      }
      std::uniform_int_distribution<std::size_t> h_dist(1, max_h);
      const std::size_t h = h_dist(rng);
      for (std::size_t dy = 0; dy < h; ++dy) {
        for (std::size_t dx = 0; dx < w; ++dx) {
          taken[r + dy][c + dx] = true;
        }
      }
      LogicalCell cell;
      cell.span = {r, r + h - 1, c, c + w - 1};
      cell.text = random_text(rng, style, counter++);
      cells.push_back(std::move(cell));
    }
  }
  return TableGrid::build(n_rows, n_cols, std::move(cells));
}

TableGrid random_grid_max(Rng& rng, std::size_t max_dim, TextStyle style) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  return random_grid(rng, dim(rng), dim(rng), style);
}

TableGrid delete_rows_cols(Rng& rng, const TableGrid& grid,
                           double keep_probability) {
  std::bernoulli_distribution keep(keep_probability);
  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    if (keep(rng)) rows.push_back(r);
  }
  for (std::size_t c = 0; c < grid.cols(); ++c) {
    if (keep(rng)) cols.push_back(c);
  }
  if (rows.empty()) rows.push_back(0);
  if (cols.empty()) cols.push_back(0);

  // Kept positions grouped by the owning cell of the source grid form
  // rectangles in the compacted index space.
  std::map<std::size_t, CellSpan> footprints;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::size_t owner = grid.owner_index(rows[i], cols[j]);
      const auto it = footprints.find(owner);
      if (it == footprints.end()) {
        footprints.emplace(owner, CellSpan{i, i, j, j});
      } else {
        it->second.row_end = i;
        it->second.col_end = std::max(it->second.col_end, j);
        it->second.col_start = std::min(it->second.col_start, j);
      }
    }
  }
  std::vector<LogicalCell> cells;
  cells.reserve(footprints.size());
  for (const auto& [owner, span] : footprints) {
    LogicalCell cell = grid.logical_cells()[owner];
    cell.span = span;
    cells.push_back(std::move(cell));
  }
  return TableGrid::build(rows.size(), cols.size(), std::move(cells));
}

namespace {

std::string escape_html(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_html(const TableGrid& grid) {
  std::string out = "<table>";
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    out += "<tr>";
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const LogicalCell& cell = grid.cell_at(r, c);
      if (cell.span.row_start != r || cell.span.col_start != c) continue;
      const char* tag = cell.is_column_header ? "th" : "td";
      out += "<";
      out += tag;
      if (cell.span.height() > 1) {
        out += " rowspan=\"" + std::to_string(cell.span.height()) + "\"";
      }
      if (cell.span.width() > 1) {
        out += " colspan=\"" + std::to_string(cell.span.width()) + "\"";
      }
      out += ">";
      out += escape_html(cell.text);
      out += "</";
      out += tag;
      out += ">";
    }
    out += "</tr>";
  }
  out += "</table>";
  return out;
}

std::string render_span_markdown(const TableGrid& grid) {
  std::string out;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    out += "|";
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const LogicalCell& cell = grid.cell_at(r, c);
      if (cell.span.row_start == r && cell.span.col_start == c) {
        out += " ";
        if (cell.span.height() > 1) {
          out += "<ROWSPAN=" + std::to_string(cell.span.height()) + "> ";
        }
        if (cell.span.width() > 1) {
          out += "<COLSPAN=" + std::to_string(cell.span.width()) + "> ";
        }
        out += cell.text;
        out += " |";
      } else if (cell.span.row_start < r) {
        // Placeholder consumed by the shadow of an earlier row's span.
        out += " . |";
      }
      // Positions inside a same-row colspan emit nothing.
    }
    out += "\n";
  }
  return out;
}

bool same_grid(const TableGrid& a, const TableGrid& b) {
  return grid_exact_match(a, b, Criterion::Con);
}

}  // namespace tge::test
