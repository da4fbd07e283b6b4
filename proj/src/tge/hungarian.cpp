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

#include "tge/hungarian.hpp"

#include <algorithm>
#include <limits>

#include "tge/error.hpp"

namespace tge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-9;

// Kuhn-Munkres with potentials on an n x n matrix, maximizing total gain.
// The total is recomputed from the selected pairs rather than read off the
// dual variables.
double square_max_value(std::size_t n, const std::vector<double>& gain) {
  if (n == 0) return 0.0;
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = kInf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -gain[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) total += gain[(p[j] - 1) * n + (j - 1)];
  }
  return total;
}

// Optimal value over the submatrix selected by `rows` x `cols`, padded square
// with zero gain. Padding leaves the optimum unchanged for non-negative
// gains.
double submatrix_value(const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols,
                       std::size_t n_cols_full,
                       const std::vector<double>& gains) {
  const std::size_t n = std::max(rows.size(), cols.size());
  if (n == 0) return 0.0;
  std::vector<double> square(n * n, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      square[i * n + j] = gains[rows[i] * n_cols_full + cols[j]];
    }
  }
  return square_max_value(n, square);
}

}  // namespace

double max_assignment_value(std::size_t n_rows, std::size_t n_cols,
                            const std::vector<double>& gains) {
  std::vector<std::size_t> rows(n_rows), cols(n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) rows[i] = i;
  for (std::size_t j = 0; j < n_cols; ++j) cols[j] = j;
  return submatrix_value(rows, cols, n_cols, gains);
}

double solve_max_assignment(std::size_t n_rows, std::size_t n_cols,
                            const std::vector<double>& gains,
                            std::vector<std::ptrdiff_t>& row_to_col) {
  if (gains.size() != n_rows * n_cols) {
    fail(ErrorCode::InvalidArgument, "gain matrix size mismatch");
  }
  row_to_col.assign(n_rows, -1);

  std::vector<std::size_t> free_cols(n_cols);
  for (std::size_t j = 0; j < n_cols; ++j) free_cols[j] = j;

  double total = 0.0;
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (free_cols.empty()) break;
    std::vector<std::size_t> rest_rows;
    for (std::size_t r = i + 1; r < n_rows; ++r) rest_rows.push_back(r);

    // Value of leaving row i unmatched; only feasible while enough rows
    // remain to cover every free column (the assignment must reach size
    // min(n_rows, n_cols)).
    const bool skip_feasible = rest_rows.size() >= free_cols.size();
    double skip_value = -kInf;
    if (skip_feasible) {
      skip_value = submatrix_value(rest_rows, free_cols, n_cols, gains);
    }

    double best_value = -kInf;
    std::size_t best_col = 0;
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const std::size_t j = free_cols[k];
      std::vector<std::size_t> rest_cols;
      for (std::size_t c : free_cols) {
        if (c != j) rest_cols.push_back(c);
      }
      const double value = gains[i * n_cols + j] +
                           submatrix_value(rest_rows, rest_cols, n_cols, gains);
      // Keep the first (smallest) column among ties.
      if (value > best_value + kTieEps) {
        best_value = value;
        best_col = j;
      }
    }

    // A matched earlier row is lexicographically smaller than skipping to a
    // later one, so ties go to matching.
    if (skip_feasible && skip_value > best_value + kTieEps) {
      continue;
    }
    row_to_col[i] = static_cast<std::ptrdiff_t>(best_col);
    total += gains[i * n_cols + best_col];
    free_cols.erase(std::find(free_cols.begin(), free_cols.end(), best_col));
  }
  return total;
}

}  // namespace tge
