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

#include "tge/datagen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tge/text.hpp"

namespace tge {

MatchVerdict verify_multipart_match(std::string_view extracted_text,
                                    std::string_view reference_text,
                                    double threshold) {
  if (threshold < 0.0 || threshold > 1.0) {
    fail(ErrorCode::InvalidArgument, "threshold must be in [0, 1]");
  }
  MatchVerdict verdict;
  verdict.threshold = threshold;
  verdict.normalized_distance = normalized_edit_distance(
      normalize_ws(extracted_text), normalize_ws(reference_text));
  verdict.matched = verdict.normalized_distance <= threshold;
  return verdict;
}

std::vector<PartCombination> enumerate_part_combinations(
    std::span<const DetectedPart> parts) {
  std::vector<PartCombination> out;
  out.reserve(parts.size() * (parts.size() + 1) / 2);
  for (std::size_t length = parts.size(); length >= 1; --length) {
    for (std::size_t start = 0; start + length <= parts.size(); ++start) {
      PartCombination combo;
      combo.start = start;
      combo.length = length;
      for (std::size_t k = 0; k < length; ++k) {
        if (k > 0) combo.text += ' ';
        combo.text += parts[start + k].text;
      }
      out.push_back(std::move(combo));
    }
  }
  return out;
}

namespace {

// A page "ends in a table" when the object reaching furthest down the page
// is a table (ties count as a table); symmetric rule for "begins".
bool page_ends_in_table(const PageAnnotation& page) {
  bool any = false;
  double max_bottom = 0.0;
  double max_table_bottom = 0.0;
  bool any_table = false;
  for (const PageObject& obj : page.objects) {
    if (!any || obj.bbox.y_max > max_bottom) max_bottom = obj.bbox.y_max;
    any = true;
    if (is_table_class(obj.class_label)) {
      if (!any_table || obj.bbox.y_max > max_table_bottom) {
        max_table_bottom = obj.bbox.y_max;
      }
      any_table = true;
    }
  }
  return any && any_table && max_table_bottom >= max_bottom;
}

bool page_begins_in_table(const PageAnnotation& page) {
  bool any = false;
  double min_top = 0.0;
  double min_table_top = 0.0;
  bool any_table = false;
  for (const PageObject& obj : page.objects) {
    if (!any || obj.bbox.y_min < min_top) min_top = obj.bbox.y_min;
    any = true;
    if (is_table_class(obj.class_label)) {
      if (!any_table || obj.bbox.y_min < min_table_top) {
        min_table_top = obj.bbox.y_min;
      }
      any_table = true;
    }
  }
  return any && any_table && min_table_top <= min_top;
}

}  // namespace

std::vector<PagePair> sample_continuation_pairs(
    std::span<const DocumentRecord> docs) {
  std::vector<PagePair> out;
  for (const DocumentRecord& doc : docs) {
    const std::size_t n_pages =
        std::max(doc.pages.size(), doc.page_ids.size());
    if (n_pages < 2) continue;

    // Contiguous page pairs bridged by some table part.
    std::set<std::size_t> positive_firsts;
    for (const MultiPartTable& table : doc.tables) {
      std::set<std::size_t> on_pages;
      for (const TablePart& part : table.parts) {
        on_pages.insert(part.page_index);
      }
      for (const std::size_t p : on_pages) {
        if (on_pages.count(p + 1) > 0) positive_firsts.insert(p);
      }
    }

    std::vector<PagePair> negatives;
    if (!doc.pages.empty()) {
      for (std::size_t p = 0; p + 1 < doc.pages.size(); ++p) {
        if (positive_firsts.count(p) > 0) continue;
        if (page_ends_in_table(doc.pages[p]) &&
            page_begins_in_table(doc.pages[p + 1])) {
          negatives.push_back({doc.doc_id, p, false});
        }
      }
    }

    // The continuation task keeps negatives only from documents that also
    // contribute a positive, so stylistic cues cannot separate the labels.
    for (const std::size_t p : positive_firsts) {
      out.push_back({doc.doc_id, p, true});
    }
    if (!positive_firsts.empty()) {
      out.insert(out.end(), negatives.begin(), negatives.end());
    }
  }
  std::sort(out.begin(), out.end(), [](const PagePair& a, const PagePair& b) {
    return std::tie(a.doc_id, a.first_page_index) <
           std::tie(b.doc_id, b.first_page_index);
  });
  return out;
}

}  // namespace tge
