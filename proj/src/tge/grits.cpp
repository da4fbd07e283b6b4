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

#include "tge/grits.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>

#include "tge/text.hpp"

namespace tge {

namespace {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

// Maximum total of a monotone (strictly increasing in both coordinates)
// matching over a non-negative gain matrix. Value only.
double monotone_value(const Matrix& g) {
  const std::size_t m = g.rows, n = g.cols;
  std::vector<double> row(n + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    double diag = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double up = row[j];
      row[j] = std::max({row[j], row[j - 1], g.at(i - 1, j - 1) + diag});
      diag = up;
    }
  }
  return row[n];
}

struct MonotoneAlignment {
  std::vector<IndexPair> map;
  double value = 0.0;  // sum of gains over map, accumulated in map order
};

// Maximum-total monotone matching, reconstructing the lexicographically
// smallest optimal map. Sequences compare element-wise on (a, b) pairs, a
// proper prefix preceding its extensions; in particular the empty map is the
// canonical optimum when the best total is zero.
MonotoneAlignment monotone_align(const Matrix& g) {
  const std::size_t m = g.rows, n = g.cols;
  // Suffix DP: dp(i,j) = best total over rows i.. and columns j.. .
  std::vector<double> dp((m + 1) * (n + 1), 0.0);
  const auto D = [&](std::size_t i, std::size_t j) -> double& {
    return dp[i * (n + 1) + j];
  };
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      D(i, j) =
          std::max({D(i + 1, j), D(i, j + 1), g.at(i, j) + D(i + 1, j + 1)});
    }
  }

  MonotoneAlignment out;
  std::size_t i = 0, j = 0;
  while (i < m && j < n && D(i, j) > 0.0) {
    // The first pair of the lex-smallest optimum is the smallest (a, b)
    // whose match move preserves the suffix optimum. Skip moves copy dp
    // values, so the comparison below is exact for at least one candidate.
    bool found = false;
    for (std::size_t a = i; a < m && !found; ++a) {
      for (std::size_t b = j; b < n && !found; ++b) {
        if (g.at(a, b) + D(a + 1, b + 1) == D(i, j)) {
          out.map.emplace_back(a, b);
          i = a + 1;
          j = b + 1;
          found = true;
        }
      }
    }
    if (!found) break;
  }
  for (const auto& [a, b] : out.map) out.value += g.at(a, b);
  return out;
}

// Consistent alignment total: sum of sim over the cross product of the two
// maps, accumulated row-major in map order. The exact oracle scores candidate
// maps with this same accumulation, which keeps tp comparisons between the
// heuristic and the oracle exact.
double alignment_tp(const TableGrid& gt, const TableGrid& pred,
                    const CellSim& sim, const std::vector<IndexPair>& row_map,
                    const std::vector<IndexPair>& col_map) {
  double total = 0.0;
  for (const auto& [ra, rb] : row_map) {
    for (const auto& [ca, cb] : col_map) {
      total += sim(gt, ra, ca, pred, rb, cb);
    }
  }
  return total;
}

// Content-similarity cache over logical-cell pairs; spanning cells repeat
// one logical text across many positions, so the LCS work is keyed on the
// owning cells rather than positions.
class ConSimCache {
 public:
  ConSimCache(const TableGrid& a, const TableGrid& b)
      : a_(&a),
        b_(&b),
        n_b_(b.logical_cells().size()),
        cache_(a.logical_cells().size() * n_b_, -1.0) {}

  double at(std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb) {
    const std::size_t ia = a_->owner_index(ra, ca);
    const std::size_t ib = b_->owner_index(rb, cb);
    double& slot = cache_[ia * n_b_ + ib];
    if (slot < 0.0) {
      slot = cell_sim_con(a_->logical_cells()[ia].text,
                          b_->logical_cells()[ib].text);
    }
    return slot;
  }

 private:
  const TableGrid* a_;
  const TableGrid* b_;
  std::size_t n_b_;
  std::vector<double> cache_;
};

CellSim make_pair_sim(const TableGrid& gt, const TableGrid& pred,
                      Criterion c) {
  if (c == Criterion::Top) return criterion_cell_sim(Criterion::Top);
  auto cache = std::make_shared<ConSimCache>(gt, pred);
  return [cache](const TableGrid&, std::size_t ar, std::size_t ac,
                 const TableGrid&, std::size_t br, std::size_t bc) {
    return cache->at(ar, ac, br, bc);
  };
}

// All monotone maps between index ranges [0,m) and [0,n), in lexicographic
// sequence order (each prefix visited before its extensions).
std::vector<std::vector<IndexPair>> all_monotone_maps(std::size_t m,
                                                      std::size_t n) {
  std::vector<std::vector<IndexPair>> maps;
  std::vector<IndexPair> cur;
  const auto rec = [&](auto&& self, std::size_t i0, std::size_t j0) -> void {
    maps.push_back(cur);
    for (std::size_t a = i0; a < m; ++a) {
      for (std::size_t b = j0; b < n; ++b) {
        cur.emplace_back(a, b);
        self(self, a + 1, b + 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, 0, 0);
  return maps;
}

GritsResult make_result(Criterion c, double tp, const TableGrid& gt,
                        const TableGrid& pred) {
  GritsResult r;
  r.criterion = c;
  r.tp = tp;
  r.size_gt = gt.size();
  r.size_pred = pred.size();
  const double den = static_cast<double>(r.size_gt + r.size_pred);
  r.score = den > 0.0 ? 2.0 * r.tp / den : 0.0;
  return r;
}

}  // namespace

double cell_sim_con(std::string_view a_text, std::string_view b_text) {
  return lcs_similarity(a_text, b_text);
}

double cell_sim_top(const CellSpan& a, std::size_t ar, std::size_t ac,
                    const CellSpan& b, std::size_t br, std::size_t bc) {
  const auto i64 = [](std::size_t x) { return static_cast<std::int64_t>(x); };
  // Footprints relative to the cell's own grid position.
  const std::int64_t ar0 = i64(a.row_start) - i64(ar);
  const std::int64_t ar1 = i64(a.row_end) - i64(ar);
  const std::int64_t ac0 = i64(a.col_start) - i64(ac);
  const std::int64_t ac1 = i64(a.col_end) - i64(ac);
  const std::int64_t br0 = i64(b.row_start) - i64(br);
  const std::int64_t br1 = i64(b.row_end) - i64(br);
  const std::int64_t bc0 = i64(b.col_start) - i64(bc);
  const std::int64_t bc1 = i64(b.col_end) - i64(bc);

  const std::int64_t ih = std::min(ar1, br1) - std::max(ar0, br0) + 1;
  const std::int64_t iw = std::min(ac1, bc1) - std::max(ac0, bc0) + 1;
  const std::int64_t inter = (ih > 0 && iw > 0) ? ih * iw : 0;
  const std::int64_t area_a = (ar1 - ar0 + 1) * (ac1 - ac0 + 1);
  const std::int64_t area_b = (br1 - br0 + 1) * (bc1 - bc0 + 1);
  const std::int64_t uni = area_a + area_b - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

CellSim criterion_cell_sim(Criterion c) {
  if (c == Criterion::Top) {
    return [](const TableGrid& a, std::size_t ar, std::size_t ac,
              const TableGrid& b, std::size_t br, std::size_t bc) {
      return cell_sim_top(a.cell_at(ar, ac).span, ar, ac,
                          b.cell_at(br, bc).span, br, bc);
    };
  }
  return [](const TableGrid& a, std::size_t ar, std::size_t ac,
            const TableGrid& b, std::size_t br, std::size_t bc) {
    return cell_sim_con(a.cell_at(ar, ac).text, b.cell_at(br, bc).text);
  };
}

Alignment2D align_2d_factored(const TableGrid& gt, const TableGrid& pred,
                              const CellSim& sim) {
  Alignment2D out;
  if (gt.empty() || pred.empty()) return out;
  const std::size_t ra_n = gt.rows(), ca_n = gt.cols();
  const std::size_t rb_n = pred.rows(), cb_n = pred.cols();

  // Phase 1: the gain of pairing column ca with cb is the value of a monotone
  // alignment over the rows of those two columns.
  Matrix col_gain(ca_n, cb_n);
  Matrix inner(ra_n, rb_n);
  for (std::size_t ca = 0; ca < ca_n; ++ca) {
    for (std::size_t cb = 0; cb < cb_n; ++cb) {
      for (std::size_t ra = 0; ra < ra_n; ++ra) {
        for (std::size_t rb = 0; rb < rb_n; ++rb) {
          inner.at(ra, rb) = sim(gt, ra, ca, pred, rb, cb);
        }
      }
      col_gain.at(ca, cb) = monotone_value(inner);
    }
  }
  MonotoneAlignment cols = monotone_align(col_gain);

  // Phase 2: with the column map fixed, align rows by the symmetric DP.
  Matrix row_gain(ra_n, rb_n);
  for (std::size_t ra = 0; ra < ra_n; ++ra) {
    for (std::size_t rb = 0; rb < rb_n; ++rb) {
      double total = 0.0;
      for (const auto& [ca, cb] : cols.map) {
        total += sim(gt, ra, ca, pred, rb, cb);
      }
      row_gain.at(ra, rb) = total;
    }
  }
  MonotoneAlignment rows = monotone_align(row_gain);

  out.row_map = std::move(rows.map);
  out.col_map = std::move(cols.map);
  out.tp_score = alignment_tp(gt, pred, sim, out.row_map, out.col_map);
  return out;
}

Alignment2D align_2d_factored(const TableGrid& gt, const TableGrid& pred,
                              Criterion c) {
  return align_2d_factored(gt, pred, make_pair_sim(gt, pred, c));
}

Alignment2D align_2d_exact(const TableGrid& gt, const TableGrid& pred,
                           const CellSim& sim, std::size_t oracle_limit) {
  if (std::max(gt.rows(), gt.cols()) > oracle_limit ||
      std::max(pred.rows(), pred.cols()) > oracle_limit) {
    fail(ErrorCode::OracleLimitExceeded,
         "grid dimensions exceed the oracle limit of " +
             std::to_string(oracle_limit));
  }
  Alignment2D best;  // empty alignment: the canonical all-dissimilar optimum
  if (gt.empty() || pred.empty()) return best;

  const auto row_maps = all_monotone_maps(gt.rows(), pred.rows());
  const auto col_maps = all_monotone_maps(gt.cols(), pred.cols());
  for (const auto& rm : row_maps) {
    for (const auto& cm : col_maps) {
      const double tp = alignment_tp(gt, pred, sim, rm, cm);
      if (tp > best.tp_score) {
        best.row_map = rm;
        best.col_map = cm;
        best.tp_score = tp;
      }
    }
  }
  return best;
}

Alignment2D align_2d_exact(const TableGrid& gt, const TableGrid& pred,
                           Criterion c, std::size_t oracle_limit) {
  return align_2d_exact(gt, pred, make_pair_sim(gt, pred, c), oracle_limit);
}

GritsResult grits(const TableGrid& gt, const TableGrid& pred, Criterion c) {
  const Alignment2D a = align_2d_factored(gt, pred, c);
  return make_result(c, a.tp_score, gt, pred);
}

GritsResult grits_exact(const TableGrid& gt, const TableGrid& pred,
                        Criterion c, std::size_t oracle_limit) {
  const Alignment2D a = align_2d_exact(gt, pred, c, oracle_limit);
  return make_result(c, a.tp_score, gt, pred);
}

}  // namespace tge
