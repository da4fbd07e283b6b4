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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tge/dataset_io.hpp"

namespace tge {

/// Verdict of the text-match verification between table parts extracted from
/// a document and a reference table.
struct MatchVerdict {
  double normalized_distance = 0.0;
  bool matched = false;
  double threshold = 0.02;
};

/// Levenshtein distance over Unicode scalars, normalized by the longer text
/// (0 when both are empty), compared against the threshold. Texts are
/// whitespace-normalized before the distance is taken.
MatchVerdict verify_multipart_match(std::string_view extracted_text,
                                    std::string_view reference_text,
                                    double threshold = 0.02);

struct DetectedPart {
  std::size_t page_index = 0;
  std::string text;
};

struct PartCombination {
  std::size_t start = 0;   // index into the detected-part list
  std::size_t length = 0;  // number of contiguous parts
  std::string text;        // texts joined with a single space
};

/// All contiguous sub-sequences of the detected parts, longest first, then by
/// start index.
std::vector<PartCombination> enumerate_part_combinations(
    std::span<const DetectedPart> parts);

struct PagePair {
  std::string doc_id;
  std::size_t first_page_index = 0;  // second page is first + 1
  bool positive = false;
};

/// Cross-page continuation pairs. A contiguous page pair is positive when
/// some table has parts on both pages; it is a candidate negative when the
/// first page ends in a table and the second begins in one (by vertical
/// extent of the annotated boxes) but no table spans both. Negatives are
/// kept only from documents that contribute at least one positive. Output is
/// ordered by (doc_id, first page index) with no duplicate pairs.
std::vector<PagePair> sample_continuation_pairs(
    std::span<const DocumentRecord> docs);

}  // namespace tge
