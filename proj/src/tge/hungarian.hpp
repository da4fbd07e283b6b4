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

#include <cstddef>
#include <vector>

namespace tge {

/// Maximum-total one-to-one assignment between the rows and columns of a
/// rectangular non-negative gain matrix (row-major). Exactly
/// min(n_rows, n_cols) rows are matched; `row_to_col[i]` is the matched
/// column of row i, or -1.
///
/// Among all optimal assignments the returned one has the lexicographically
/// smallest (row, col) pair sequence, resolved by a per-row refinement with
/// Hungarian lookahead on the remaining submatrix. Returns the total gain of
/// the selected assignment, summed in row order.
double solve_max_assignment(std::size_t n_rows, std::size_t n_cols,
                            const std::vector<double>& gains,
                            std::vector<std::ptrdiff_t>& row_to_col);

/// Optimal total only (no tie-break refinement).
double max_assignment_value(std::size_t n_rows, std::size_t n_cols,
                            const std::vector<double>& gains);

}  // namespace tge
