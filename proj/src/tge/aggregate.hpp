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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tge/grits.hpp"
#include "tge/table_grid.hpp"

namespace tge {

enum class AggregateMode { MeanPerTable, PseudoF1 };

/// Corpus-level score. PseudoF1 treats the summed per-table tp mass as a
/// real-valued true-positive count over all grid cells; MeanPerTable stores
/// the per-table mean in `f1` and leaves precision/recall unset.
struct AggregateScore {
  AggregateMode mode = AggregateMode::MeanPerTable;
  std::optional<double> precision;
  std::optional<double> recall;
  double f1 = 0.0;
  std::uint64_t n_gt_cells = 0;
  std::uint64_t n_pred_cells = 0;
};

/// Mean of per-table scores, accumulated in input order with compensated
/// summation. Throws EmptyCorpus.
AggregateScore aggregate_mean(std::span<const GritsResult> results);

/// Cell-level pseudo-F1: TP = sum of tp, precision = TP / total predicted
/// cells, recall = TP / total ground-truth cells. Zero denominators score 0.
/// Throws EmptyCorpus.
AggregateScore aggregate_pseudo_f1(std::span<const GritsResult> results);

/// Fraction of pairs whose prediction exists and matches the ground truth
/// exactly under the criterion. Null prediction pointers count as misses.
/// Throws EmptyCorpus.
double exact_match_accuracy(
    std::span<const std::pair<const TableGrid*, const TableGrid*>> pairs,
    Criterion criterion);

/// One-to-one correspondence between a ground-truth and a predicted table
/// set, maximizing total true-positive mass.
struct TableSetMatch {
  Criterion criterion = Criterion::Top;
  /// Matched (gt_index, pred_index) pairs, sorted by gt index; exactly
  /// min(#gt, #pred) entries.
  std::vector<std::pair<std::size_t, std::size_t>> assignment;
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_pred;
  /// One result per ground-truth table; unmatched tables score tp = 0
  /// against size_pred = 0.
  std::vector<GritsResult> per_gt_results;
  double total_tp = 0.0;
};

/// Hungarian set matching over the #gt x #pred matrix of grits tp scores
/// (rectangular, padded square with zero gain internally). Ties break toward
/// the lowest (gt_index, pred_index).
TableSetMatch match_table_sets(std::span<const TableGrid> gt,
                               std::span<const TableGrid> pred,
                               Criterion criterion);

struct BinaryPrf {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

/// Precision/recall/F1 over the positive class of two equal-length label
/// sequences. Throws LengthMismatch and EmptyCorpus.
BinaryPrf binary_prf(const std::vector<bool>& gold,
                     const std::vector<bool>& predicted);

/// Compensated (Neumaier) summation for reproducible corpus aggregation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace tge
