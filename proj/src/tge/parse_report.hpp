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
#include <vector>

#include "tge/table_grid.hpp"

namespace tge {

enum class WarnCode {
  NoTableFound,
  EmptyTable,
  RaggedRow,
  SpanClipped,
  MalformedAttribute,
  MalformedSpanTag,
  NestedTableFlattened,
  TruncatedInput,
  StrayContent,
  SchemaEntrySkipped,
  UnknownClassName,
  HierarchyViolation,
  MissingFile,
};

const char* warn_code_name(WarnCode code);

/// Repair warnings indicate the parser changed or dropped input to produce a
/// valid grid; diagnostics (NoTableFound etc.) do not.
bool is_repair(WarnCode code);

struct Warning {
  WarnCode code;
  std::string message;
  std::string location;  // e.g. "table 0, row 2"
};

/// Result of parsing one input document: the recovered grids in source order
/// plus any diagnostics.
struct ParseReport {
  std::vector<TableGrid> grids;
  std::vector<Warning> warnings;

  bool repaired() const {
    for (const Warning& w : warnings) {
      if (is_repair(w.code)) return true;
    }
    return false;
  }

  void warn(WarnCode code, std::string message, std::string location = {}) {
    warnings.push_back({code, std::move(message), std::move(location)});
  }
};

}  // namespace tge
