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

#include "tge/parse_report.hpp"

namespace tge {

const char* warn_code_name(WarnCode code) {
  switch (code) {
    case WarnCode::NoTableFound: return "NoTableFound";
    case WarnCode::EmptyTable: return "EmptyTable";
    case WarnCode::RaggedRow: return "RaggedRow";
    case WarnCode::SpanClipped: return "SpanClipped";
    case WarnCode::MalformedAttribute: return "MalformedAttribute";
    case WarnCode::MalformedSpanTag: return "MalformedSpanTag";
    case WarnCode::NestedTableFlattened: return "NestedTableFlattened";
    case WarnCode::TruncatedInput: return "TruncatedInput";
    case WarnCode::StrayContent: return "StrayContent";
    case WarnCode::SchemaEntrySkipped: return "SchemaEntrySkipped";
    case WarnCode::UnknownClassName: return "UnknownClassName";
    case WarnCode::HierarchyViolation: return "HierarchyViolation";
    case WarnCode::MissingFile: return "MissingFile";
  }
  return "Unknown";
}

bool is_repair(WarnCode code) {
  switch (code) {
    case WarnCode::RaggedRow:
    case WarnCode::SpanClipped:
    case WarnCode::MalformedAttribute:
    case WarnCode::MalformedSpanTag:
    case WarnCode::NestedTableFlattened:
    case WarnCode::TruncatedInput:
    case WarnCode::EmptyTable:
    case WarnCode::SchemaEntrySkipped:
      return true;
    default:
      return false;
  }
}

}  // namespace tge
