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

#include <string_view>

#include "tge/parse_report.hpp"

namespace tge {

/// Extracts one TableGrid per <table> element, in document order, from
/// lenient HTML.
///
/// Recovery rules: rowspan/colspan resolve by first-free-slot layout; table
/// height is the number of <tr> rows, with rowspans clipped at the bottom
/// edge; ragged rows are padded with empty cells; truncated input closes all
/// open elements and keeps the partial table; nested tables flatten to text
/// inside the owning cell. Every repair is reported as a warning.
///
/// <th> cells and cells inside <thead> are marked is_column_header.
///
/// Throws HardParseFailure only for non-UTF-8 input; a document with no
/// tables yields an empty grid list plus a NoTableFound warning.
ParseReport parse_html_tables(std::string_view text);

}  // namespace tge
