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

#include "tge/span_markdown.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "tge/text.hpp"

namespace tge {

namespace {

struct MdCell {
  std::size_t rowspan = 1;
  std::size_t colspan = 1;
  std::string text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_ws(s.back())) s.remove_suffix(1);
  return s;
}

bool iequal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Removes every <md> / </md> wrapper token, case-insensitively.
std::string strip_md_wrappers(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool stripped = false;
    for (const std::string_view tok : {std::string_view("<md>"),
                                       std::string_view("</md>")}) {
      if (i + tok.size() <= text.size() &&
          iequal(text.substr(i, tok.size()), tok)) {
        i += tok.size();
        stripped = true;
        break;
      }
    }
    if (!stripped) out.push_back(text[i++]);
  }
  return out;
}

// A separator cell is dashes with optional alignment colons: ---, :---, ---:.
bool is_separator_cell(std::string_view cell) {
  cell = trim(cell);
  bool any_dash = false;
  for (char c : cell) {
    if (c == '-') {
      any_dash = true;
    } else if (c != ':') {
      return false;
    }
  }
  return any_dash;
}

bool is_separator_row(const std::vector<std::string_view>& cells) {
  if (cells.empty()) return false;
  return std::all_of(cells.begin(), cells.end(), is_separator_cell);
}

// Splits a pipe row into raw cell strings: a leading segment before the
// first '|' and a trailing segment after the last are dropped, interior
// empties are kept.
std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '|') {
      parts.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  if (!parts.empty() && trim(parts.front()).empty()) parts.erase(parts.begin());
  if (!parts.empty() && trim(parts.back()).empty()) parts.pop_back();
  return parts;
}

// Consumes leading span tags; a malformed tag stops consumption and stays in
// the text.
MdCell parse_cell(std::string_view raw, std::size_t table_index,
                  std::size_t row_index, ParseReport& report) {
  MdCell cell;
  std::string_view rest = trim(raw);
  while (!rest.empty() && rest.front() == '<') {
    const std::size_t gt = rest.find('>');
    if (gt == std::string_view::npos) break;
    const std::string_view body = rest.substr(1, gt - 1);
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) break;
    const std::string_view key = trim(body.substr(0, eq));
    const bool is_row = iequal(key, "ROWSPAN");
    const bool is_col = iequal(key, "COLSPAN");
    if (!is_row && !is_col) break;
    const std::string_view val = trim(body.substr(eq + 1));
    std::uint64_t k = 0;
    bool ok = !val.empty();
    for (char c : val) {
      if (c < '0' || c > '9') {
        ok = false;
        break;
      }
      k = std::min<std::uint64_t>(k * 10 + static_cast<std::uint64_t>(c - '0'),
                                  65534);
    }
    if (!ok || k < 1) {
      report.warn(WarnCode::MalformedSpanTag,
                  "span tag <" + std::string(body) + "> is not a positive "
                  "integer; kept as literal text",
                  "table " + std::to_string(table_index) + ", row " +
                      std::to_string(row_index));
      break;
    }
    if (is_row) {
      cell.rowspan = static_cast<std::size_t>(k);
    } else {
      cell.colspan = static_cast<std::size_t>(k);
    }
    rest = trim(rest.substr(gt + 1));
  }
  cell.text = std::string(rest);
  return cell;
}

std::optional<TableGrid> lay_out_block(
    const std::vector<std::vector<MdCell>>& rows, std::size_t table_index,
    ParseReport& report) {
  const std::size_t n_rows = rows.size();
  if (n_rows == 0) return std::nullopt;

  struct Placed {
    std::size_t row, col, h, w;
    const MdCell* cell;
  };
  std::vector<Placed> placed;
  std::vector<std::vector<bool>> occupancy(n_rows);
  // Positions covered by a rowspan reaching down from an earlier row; these
  // consume one listed cell each.
  std::vector<std::vector<bool>> shadow(n_rows);
  std::size_t n_cols = 0;

  const auto get = [](const std::vector<std::vector<bool>>& m, std::size_t r,
                      std::size_t c) {
    return c < m[r].size() && m[r][c];
  };
  const auto set = [n_rows](std::vector<std::vector<bool>>& m, std::size_t r,
                            std::size_t c) {
    if (r >= n_rows) return;
    if (m[r].size() <= c) m[r].resize(c + 1, false);
    m[r][c] = true;
  };

  bool clipped = false;
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t x = 0;
    for (const MdCell& cell : rows[r]) {
      // Skip slots taken by spans declared earlier in this row.
      while (get(occupancy, r, x) && !get(shadow, r, x)) ++x;
      if (get(shadow, r, x)) {
        // Placeholder under an open rowspan: the listed cell is consumed.
        shadow[r][x] = false;
        ++x;
        continue;
      }
      std::size_t h = cell.rowspan;
      if (r + h > n_rows) {
        h = n_rows - r;
        clipped = true;
      }
      std::size_t w = cell.colspan;
      for (std::size_t dx = 1; dx < w; ++dx) {
        bool blocked = false;
        for (std::size_t dy = 0; dy < h && !blocked; ++dy) {
          blocked = get(occupancy, r + dy, x + dx);
        }
        if (blocked) {
          w = dx;
          clipped = true;
          break;
        }
      }
      for (std::size_t dy = 0; dy < h; ++dy) {
        for (std::size_t dx = 0; dx < w; ++dx) {
          set(occupancy, r + dy, x + dx);
          if (dy > 0) set(shadow, r + dy, x + dx);
        }
      }
      placed.push_back({r, x, h, w, &cell});
      n_cols = std::max(n_cols, x + w);
      x += w;
    }
  }
  if (clipped) {
    report.warn(WarnCode::SpanClipped, "cell spans clipped at table edges",
                "table " + std::to_string(table_index));
  }
  if (n_cols == 0) {
    report.warn(WarnCode::EmptyTable, "table has no cells; skipped",
                "table " + std::to_string(table_index));
    return std::nullopt;
  }

  std::vector<LogicalCell> cells;
  cells.reserve(placed.size());
  for (const Placed& p : placed) {
    LogicalCell lc;
    lc.span = {p.row, p.row + p.h - 1, p.col, p.col + p.w - 1};
    lc.text = p.cell->text;
    cells.push_back(std::move(lc));
  }
  std::size_t padded = 0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!get(occupancy, r, c)) {
        LogicalCell pad;
        pad.span = {r, r, c, c};
        cells.push_back(std::move(pad));
        ++padded;
      }
    }
  }
  if (padded > 0) {
    report.warn(WarnCode::RaggedRow,
                std::to_string(padded) +
                    " uncovered position(s) padded with empty cells",
                "table " + std::to_string(table_index));
  }
  return TableGrid::build(n_rows, n_cols, std::move(cells));
}

}  // namespace

ParseReport parse_span_markdown(std::string_view text) {
  if (!is_valid_utf8(text)) {
    fail(ErrorCode::HardParseFailure, "input is not valid UTF-8");
  }
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }

  ParseReport report;
  const std::string cleaned = strip_md_wrappers(text);

  std::vector<std::vector<MdCell>> block;
  std::size_t table_index = 0;
  const auto flush_block = [&]() {
    if (block.empty()) return;
    if (auto grid = lay_out_block(block, table_index, report)) {
      report.grids.push_back(std::move(*grid));
    }
    ++table_index;
    block.clear();
  };

  std::size_t line_start = 0;
  for (std::size_t i = 0; i <= cleaned.size(); ++i) {
    if (i != cleaned.size() && cleaned[i] != '\n') continue;
    std::string_view line(cleaned.data() + line_start, i - line_start);
    line_start = i + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() != '|') {
      flush_block();
      continue;
    }
    const auto raw_cells = split_row(stripped);
    if (is_separator_row(raw_cells)) continue;
    std::vector<MdCell> row;
    row.reserve(raw_cells.size());
    for (const std::string_view raw : raw_cells) {
      row.push_back(parse_cell(raw, table_index, block.size(), report));
    }
    block.push_back(std::move(row));
  }
  flush_block();

  if (report.grids.empty()) {
    report.warn(WarnCode::NoTableFound, "no pipe table found");
  }
  return report;
}

}  // namespace tge
