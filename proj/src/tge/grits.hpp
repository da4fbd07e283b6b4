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

#include <functional>
#include <utility>
#include <vector>

#include "tge/table_grid.hpp"

namespace tge {

/// A pair of monotone index maps selecting aligned sub-grids of a ground
/// truth and a predicted grid, together with the total cell-similarity mass
/// of the aligned positions.
///
/// Both maps are strictly increasing in both coordinates (subsequence
/// alignments, no crossings), and
///   tp_score = sum over (r,r') in row_map, (c,c') in col_map
///              of f(gt[r][c], pred[r'][c']).
struct Alignment2D {
  std::vector<std::pair<std::size_t, std::size_t>> row_map;
  std::vector<std::pair<std::size_t, std::size_t>> col_map;
  double tp_score = 0.0;
};

/// Per-table-pair score. score = 2*tp / (size_gt + size_pred); 0 when both
/// grids are empty.
struct GritsResult {
  Criterion criterion = Criterion::Top;
  double tp = 0.0;
  std::size_t size_gt = 0;
  std::size_t size_pred = 0;
  double score = 0.0;
};

/// Similarity of two grid cells given their grid coordinates. Must be
/// symmetric, bounded in [0,1], and 1 on identical cells.
using CellSim = std::function<double(
    const TableGrid& a, std::size_t ar, std::size_t ac, const TableGrid& b,
    std::size_t br, std::size_t bc)>;

/// Content similarity: normalized character LCS over Unicode scalars,
/// 2*LCS(a,b)/(|a|+|b|), 1 when both texts are empty. Inputs are expected to
/// be whitespace-normalized (TableGrid normalizes on construction).
double cell_sim_con(std::string_view a_text, std::string_view b_text);

/// Topology similarity: IoU of the two cells' logical footprints expressed
/// relative to their own grid position, areas in grid units.
double cell_sim_top(const CellSpan& a, std::size_t ar, std::size_t ac,
                    const CellSpan& b, std::size_t br, std::size_t bc);

CellSim criterion_cell_sim(Criterion c);

/// Factored alignment heuristic. Phase 1 aligns columns with a monotone
/// sequence-alignment DP whose pairwise gain is an inner monotone DP over the
/// rows of the two columns. Phase 2 fixes the column map and aligns rows by
/// the symmetric DP. Ties break toward the lexicographically smallest map.
/// The returned tp_score is the consistent double sum over the two maps.
Alignment2D align_2d_factored(const TableGrid& gt, const TableGrid& pred,
                              const CellSim& sim);
Alignment2D align_2d_factored(const TableGrid& gt, const TableGrid& pred,
                              Criterion c);

/// Exhaustive alignment oracle: enumerates every pair of monotone row and
/// column maps and returns a tp maximizer (lexicographically smallest on
/// ties, row map compared first). Intended for small grids; throws
/// OracleLimitExceeded when either grid has a dimension above `oracle_limit`.
Alignment2D align_2d_exact(const TableGrid& gt, const TableGrid& pred,
                           const CellSim& sim, std::size_t oracle_limit = 4);
Alignment2D align_2d_exact(const TableGrid& gt, const TableGrid& pred,
                           Criterion c, std::size_t oracle_limit = 4);

/// Grid table similarity of a ground-truth/predicted pair under the given
/// criterion, using the factored alignment.
GritsResult grits(const TableGrid& gt, const TableGrid& pred, Criterion c);

/// As `grits` but using the exhaustive oracle alignment.
GritsResult grits_exact(const TableGrid& gt, const TableGrid& pred,
                        Criterion c, std::size_t oracle_limit = 4);

}  // namespace tge
