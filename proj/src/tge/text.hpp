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
#include <string>
#include <string_view>
#include <vector>

namespace tge {

/// Canonical cell-text normalization: trims leading/trailing whitespace and
/// collapses internal whitespace runs to a single space. Case and punctuation
/// are preserved.
std::string normalize_ws(std::string_view text);

bool is_ascii_ws(char c);

/// Decodes UTF-8 into Unicode scalar values. Invalid byte sequences decode to
/// U+FFFD, one replacement per rejected byte.
std::vector<char32_t> decode_utf8(std::string_view bytes);

bool is_valid_utf8(std::string_view bytes);

/// Appends the UTF-8 encoding of `cp` to `out`. Surrogates and out-of-range
/// values encode as U+FFFD.
void append_utf8(std::string& out, char32_t cp);

/// Length of the longest common subsequence of two scalar sequences.
std::size_t lcs_length(const std::vector<char32_t>& a,
                       const std::vector<char32_t>& b);

/// Normalized character LCS similarity: 2*LCS(a,b) / (|a|+|b|) over Unicode
/// scalars, 1 when both strings are empty.
double lcs_similarity(std::string_view a, std::string_view b);

/// Levenshtein distance over Unicode scalar sequences.
std::size_t levenshtein(const std::vector<char32_t>& a,
                        const std::vector<char32_t>& b);

/// Levenshtein distance normalized by max(|a|,|b|); 0 when both empty.
double normalized_edit_distance(std::string_view a, std::string_view b);

}  // namespace tge
