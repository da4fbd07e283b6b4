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

/// Parses pipe-delimited markdown tables with the cell-span extension: a
/// leading `<ROWSPAN=k>` / `<COLSPAN=k>` token (either or both) declares a
/// cell's footprint.
///
/// Layout is first-free-slot. A grid position shadowed by a span from an
/// earlier row consumes the next listed cell of its row (the emitter repeats
/// placeholder cells under open rowspans), while positions covered by a span
/// declared earlier in the same row are skipped without consuming one.
///
/// Separator rows (`| --- | ... |`) are ignored wherever they appear, and
/// `<md>`/`</md>` wrappers are stripped. A malformed span tag (non-integer
/// or < 1) is reported as a warning and kept as literal text.
///
/// Throws HardParseFailure only for non-UTF-8 input.
ParseReport parse_span_markdown(std::string_view text);

}  // namespace tge
