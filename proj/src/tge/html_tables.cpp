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

#include "tge/html_tables.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tge/text.hpp"

namespace tge {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

struct TagToken {
  std::string name;  // lowercased
  bool closing = false;
  std::map<std::string, std::string> attrs;
};

struct Token {
  enum class Kind { Text, Tag, Eof } kind = Kind::Eof;
  std::string text;  // entity-decoded text content
  TagToken tag;
};

const std::map<std::string, char32_t>& named_entities() {
  static const std::map<std::string, char32_t> table = {
      {"amp", U'&'},  {"lt", U'<'},    {"gt", U'>'},  {"quot", U'"'},
      {"apos", U'\''}, {"nbsp", U' '},  {"ndash", U'–'},
      {"mdash", U'—'}, {"plusmn", U'±'}, {"times", U'×'},
      {"deg", U'°'}, {"middot", U'·'}, {"bull", U'•'},
  };
  return table;
}

// Decodes &name;, &#123; and &#x1F; references. Unknown references pass
// through literally.
std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    const std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(raw[i++]);
      continue;
    }
    const std::string_view body = raw.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      char32_t cp = 0;
      bool ok = body.size() > 1;
      std::size_t k = 1;
      int base = 10;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        base = 16;
        k = 2;
        ok = body.size() > 2;
      }
      for (; ok && k < body.size(); ++k) {
        const char c = body[k];
        int digit;
        if (c >= '0' && c <= '9') {
          digit = c - '0';
        } else if (base == 16 && c >= 'a' && c <= 'f') {
          digit = c - 'a' + 10;
        } else if (base == 16 && c >= 'A' && c <= 'F') {
          digit = c - 'A' + 10;
        } else {
          ok = false;
          break;
        }
        cp = cp * static_cast<char32_t>(base) + static_cast<char32_t>(digit);
        if (cp > 0x10FFFF) {
          ok = false;
          break;
        }
      }
      if (ok) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      const auto it = named_entities().find(std::string(body));
      if (it != named_entities().end()) {
        append_utf8(out, it->second);
        i = semi + 1;
        continue;
      }
    }
    out.push_back(raw[i++]);
  }
  return out;
}

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
         c == ':';
}

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view input) : in_(input) {}

  Token next() {
    if (pos_ >= in_.size()) return {};

    if (in_[pos_] != '<') {
      const std::size_t start = pos_;
      while (pos_ < in_.size() && in_[pos_] != '<') ++pos_;
      Token t;
      t.kind = Token::Kind::Text;
      t.text = decode_entities(in_.substr(start, pos_ - start));
      return t;
    }

    // Comments, doctype, and CDATA-ish constructs are skipped.
    if (in_.compare(pos_, 4, "<!--") == 0) {
      const std::size_t end = in_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? in_.size() : end + 3;
      return next_or_eof();
    }
    if (pos_ + 1 < in_.size() && (in_[pos_ + 1] == '!' || in_[pos_ + 1] == '?')) {
      const std::size_t end = in_.find('>', pos_ + 1);
      pos_ = end == std::string_view::npos ? in_.size() : end + 1;
      return next_or_eof();
    }

    const bool closing = pos_ + 1 < in_.size() && in_[pos_ + 1] == '/';
    const std::size_t name_at = pos_ + (closing ? 2 : 1);
    if (name_at >= in_.size() || !is_name_start(in_[name_at])) {
      // A lone '<' is literal text.
      ++pos_;
      Token t;
      t.kind = Token::Kind::Text;
      t.text = "<";
      return t;
    }

    std::size_t i = name_at;
    while (i < in_.size() && is_name_char(in_[i])) ++i;
    Token t;
    t.kind = Token::Kind::Tag;
    t.tag.closing = closing;
    t.tag.name = to_lower(in_.substr(name_at, i - name_at));

    // Attributes.
    while (i < in_.size() && in_[i] != '>') {
      if (in_[i] == '/' && i + 1 < in_.size() && in_[i + 1] == '>') {
        i += 1;
        break;
      }
      if (!is_name_start(in_[i])) {
        ++i;
        continue;
      }
      const std::size_t attr_start = i;
      while (i < in_.size() && is_name_char(in_[i])) ++i;
      const std::string attr = to_lower(in_.substr(attr_start, i - attr_start));
      while (i < in_.size() && is_ascii_ws(in_[i])) ++i;
      std::string value;
      if (i < in_.size() && in_[i] == '=') {
        ++i;
        while (i < in_.size() && is_ascii_ws(in_[i])) ++i;
        if (i < in_.size() && (in_[i] == '"' || in_[i] == '\'')) {
          const char quote = in_[i++];
          const std::size_t vstart = i;
          while (i < in_.size() && in_[i] != quote) ++i;
          value = decode_entities(in_.substr(vstart, i - vstart));
          if (i < in_.size()) ++i;
        } else {
          const std::size_t vstart = i;
          while (i < in_.size() && !is_ascii_ws(in_[i]) && in_[i] != '>') ++i;
          value = decode_entities(in_.substr(vstart, i - vstart));
        }
      }
      t.tag.attrs.emplace(attr, std::move(value));
    }
    if (i >= in_.size()) {
      // Unterminated tag at end of input: swallow it.
      pos_ = in_.size();
      truncated_tag_ = true;
      return t;
    }
    pos_ = i + 1;

    // Raw-text elements: consume up to the matching close tag.
    if (!t.tag.closing &&
        (t.tag.name == "script" || t.tag.name == "style")) {
      const std::string close = "</" + t.tag.name;
      const std::string lower = to_lower(in_.substr(pos_));
      const std::size_t at = lower.find(close);
      if (at == std::string::npos) {
        pos_ = in_.size();
      } else {
        const std::size_t gt = in_.find('>', pos_ + at);
        pos_ = gt == std::string_view::npos ? in_.size() : gt + 1;
      }
      return next_or_eof();
    }
    return t;
  }

  bool truncated_tag() const { return truncated_tag_; }

 private:
  Token next_or_eof() { return pos_ < in_.size() ? next() : Token{}; }

  std::string_view in_;
  std::size_t pos_ = 0;
  bool truncated_tag_ = false;
};

// ---------------------------------------------------------------------------
// Table assembly
// ---------------------------------------------------------------------------

struct RawCell {
  std::size_t rowspan = 1;
  std::size_t colspan = 1;
  bool header = false;
  std::string text;
};

struct RawTable {
  std::vector<std::vector<RawCell>> rows;
};

// Parses an integer span attribute the way browsers do: optional leading
// whitespace, then a decimal prefix. Values below 1 clamp to 1.
std::size_t parse_span_attr(const std::string& value, const char* attr,
                            std::size_t table_index, ParseReport& report) {
  std::size_t i = 0;
  while (i < value.size() && is_ascii_ws(value[i])) ++i;
  std::size_t digits_start = i;
  std::uint64_t parsed = 0;
  bool any = false;
  while (i < value.size() && value[i] >= '0' && value[i] <= '9') {
    parsed = std::min<std::uint64_t>(parsed * 10 + (value[i] - '0'), 65534);
    any = true;
    ++i;
  }
  (void)digits_start;
  if (!any) {
    report.warn(WarnCode::MalformedAttribute,
                std::string(attr) + "=\"" + value + "\" is not a number; using 1",
                "table " + std::to_string(table_index));
    return 1;
  }
  if (parsed < 1) {
    report.warn(WarnCode::MalformedAttribute,
                std::string(attr) + "=\"" + value + "\" below 1; using 1",
                "table " + std::to_string(table_index));
    return 1;
  }
  return static_cast<std::size_t>(parsed);
}

// First-free-slot layout of one raw table into a logical-cell tiling.
std::optional<TableGrid> lay_out_table(const RawTable& raw,
                                       std::size_t table_index,
                                       ParseReport& report) {
  const std::size_t n_rows = raw.rows.size();
  if (n_rows == 0) {
    report.warn(WarnCode::EmptyTable, "table has no rows; skipped",
                "table " + std::to_string(table_index));
    return std::nullopt;
  }

  struct Placed {
    std::size_t row, col, h, w;
    const RawCell* cell;
  };
  std::vector<Placed> placed;
  // occupancy[r] marks columns taken in row r; rows index the final grid.
  std::vector<std::vector<bool>> occupancy(n_rows);
  std::size_t n_cols = 0;

  const auto occupied = [&](std::size_t r, std::size_t c) {
    return c < occupancy[r].size() && occupancy[r][c];
  };
  const auto mark = [&](std::size_t r, std::size_t c) {
    if (occupancy[r].size() <= c) occupancy[r].resize(c + 1, false);
    occupancy[r][c] = true;
  };

  bool clipped = false;
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t x = 0;
    for (const RawCell& cell : raw.rows[r]) {
      while (occupied(r, x)) ++x;
      const std::size_t w = cell.colspan;
      std::size_t h = cell.rowspan;
      if (r + h > n_rows) {
        h = n_rows - r;
        clipped = true;
      }
      // A colspan may run into a slot shadowed by an earlier rowspan; clip
      // rather than overlap.
      std::size_t w_clipped = w;
      for (std::size_t dx = 1; dx < w; ++dx) {
        bool blocked = false;
        for (std::size_t dy = 0; dy < h && !blocked; ++dy) {
          blocked = occupied(r + dy, x + dx);
        }
        if (blocked) {
          w_clipped = dx;
          clipped = true;
          break;
        }
      }
      for (std::size_t dy = 0; dy < h; ++dy) {
        for (std::size_t dx = 0; dx < w_clipped; ++dx) {
          mark(r + dy, x + dx);
        }
      }
      placed.push_back({r, x, h, w_clipped, &cell});
      n_cols = std::max(n_cols, x + w_clipped);
      x += w_clipped;
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
    lc.is_column_header = p.cell->header;
    cells.push_back(std::move(lc));
  }

  // Pad positions no cell reached (ragged rows).
  std::size_t padded = 0;
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!occupied(r, c)) {
        LogicalCell pad;
        pad.span = {r, r, c, c};
        cells.push_back(std::move(pad));
        ++padded;
      }
    }
  }
  if (padded > 0) {
    report.warn(WarnCode::RaggedRow,
                std::to_string(padded) + " uncovered position(s) padded with "
                                         "empty cells",
                "table " + std::to_string(table_index));
  }

  return TableGrid::build(n_rows, n_cols, std::move(cells));
}

class TableCollector {
 public:
  explicit TableCollector(ParseReport& report) : report_(report) {}

  void on_tag(const TagToken& tag) {
    if (tag.name == "table") {
      if (!tag.closing) {
        if (!in_table_) {
          start_table();
        } else {
          // A nested table flattens into the owning cell's text.
          ++nested_depth_;
          report_.warn(WarnCode::NestedTableFlattened,
                       in_cell_ ? "nested table flattened to cell text"
                                : "nested table outside a cell discarded",
                       "table " + std::to_string(table_count_ - 1));
        }
      } else {
        if (nested_depth_ > 0) {
          --nested_depth_;
        } else if (in_table_) {
          finish_table();
        }
      }
      return;
    }
    if (!in_table_ || nested_depth_ > 0) {
      // Structure tags inside a flattened table only contribute spacing.
      if (nested_depth_ > 0 && block_boundary(tag.name)) pad_text();
      return;
    }

    if (tag.name == "tr") {
      if (!tag.closing) {
        close_cell();
        current_.rows.emplace_back();
        in_row_ = true;
      } else {
        close_cell();
        in_row_ = false;
      }
    } else if (tag.name == "td" || tag.name == "th") {
      if (!tag.closing) {
        close_cell();
        if (!in_row_) {
          current_.rows.emplace_back();
          in_row_ = true;
        }
        in_cell_ = true;
        cell_ = RawCell{};
        cell_.header = tag.name == "th" || in_thead_;
        const auto rs = tag.attrs.find("rowspan");
        if (rs != tag.attrs.end()) {
          cell_.rowspan =
              parse_span_attr(rs->second, "rowspan", table_count_ - 1, report_);
        }
        const auto cs = tag.attrs.find("colspan");
        if (cs != tag.attrs.end()) {
          cell_.colspan =
              parse_span_attr(cs->second, "colspan", table_count_ - 1, report_);
        }
      } else {
        close_cell();
      }
    } else if (tag.name == "thead") {
      in_thead_ = !tag.closing;
    } else if (tag.name == "tbody" || tag.name == "tfoot") {
      in_thead_ = false;
    } else if (tag.name == "caption") {
      in_caption_ = !tag.closing;
    } else if (block_boundary(tag.name)) {
      pad_text();
    }
  }

  void on_text(const std::string& text) {
    if (in_cell_ && !in_caption_) cell_.text += text;
  }

  void finish(bool truncated) {
    if (in_table_) {
      if (truncated) {
        report_.warn(WarnCode::TruncatedInput,
                     "input ended inside a table; open elements closed",
                     "table " + std::to_string(table_count_ - 1));
      }
      finish_table();
    }
  }

 private:
  static bool block_boundary(const std::string& name) {
    return name == "br" || name == "p" || name == "div" || name == "li" ||
           name == "tr" || name == "td" || name == "th";
  }

  void pad_text() {
    if (in_cell_ && !cell_.text.empty()) cell_.text += ' ';
  }

  void start_table() {
    in_table_ = true;
    in_row_ = false;
    in_cell_ = false;
    in_thead_ = false;
    in_caption_ = false;
    nested_depth_ = 0;
    current_ = RawTable{};
    ++table_count_;
  }

  void close_cell() {
    if (!in_cell_) return;
    current_.rows.back().push_back(std::move(cell_));
    cell_ = RawCell{};
    in_cell_ = false;
  }

  void finish_table() {
    close_cell();
    in_table_ = false;
    if (auto grid = lay_out_table(current_, table_count_ - 1, report_)) {
      report_.grids.push_back(std::move(*grid));
    }
  }

  ParseReport& report_;
  RawTable current_;
  RawCell cell_;
  bool in_table_ = false;
  bool in_row_ = false;
  bool in_cell_ = false;
  bool in_thead_ = false;
  bool in_caption_ = false;
  std::size_t nested_depth_ = 0;
  std::size_t table_count_ = 0;
};

}  // namespace

ParseReport parse_html_tables(std::string_view text) {
  if (!is_valid_utf8(text)) {
    fail(ErrorCode::HardParseFailure, "input is not valid UTF-8");
  }
  // Strip a UTF-8 BOM if present.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }

  ParseReport report;
  TableCollector collector(report);
  Tokenizer tokenizer(text);
  for (Token t = tokenizer.next(); t.kind != Token::Kind::Eof;
       t = tokenizer.next()) {
    if (t.kind == Token::Kind::Text) {
      collector.on_text(t.text);
    } else {
      collector.on_tag(t.tag);
    }
  }
  collector.finish(/*truncated=*/true);
  if (report.grids.empty()) {
    report.warn(WarnCode::NoTableFound, "no <table> element found");
  }
  return report;
}

}  // namespace tge
