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

#include "tge/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "tge/hungarian.hpp"

namespace tge {

namespace {

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double harmonic_f1(double p, double r) {
  return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

AggregateScore aggregate_mean(std::span<const GritsResult> results) {
  if (results.empty()) {
    fail(ErrorCode::EmptyCorpus, "aggregate_mean over an empty corpus");
  }
  AggregateScore out;
  out.mode = AggregateMode::MeanPerTable;
  CompensatedSum sum;
  for (const GritsResult& r : results) {
    sum.add(r.score);
    out.n_gt_cells += r.size_gt;
    out.n_pred_cells += r.size_pred;
  }
  out.f1 = sum.value() / static_cast<double>(results.size());
  return out;
}

AggregateScore aggregate_pseudo_f1(std::span<const GritsResult> results) {
  if (results.empty()) {
    fail(ErrorCode::EmptyCorpus, "aggregate_pseudo_f1 over an empty corpus");
  }
  AggregateScore out;
  out.mode = AggregateMode::PseudoF1;
  CompensatedSum tp;
  for (const GritsResult& r : results) {
    tp.add(r.tp);
    out.n_gt_cells += r.size_gt;
    out.n_pred_cells += r.size_pred;
  }
  const double total_tp = tp.value();
  out.precision = safe_ratio(total_tp, static_cast<double>(out.n_pred_cells));
  out.recall = safe_ratio(total_tp, static_cast<double>(out.n_gt_cells));
  out.f1 = harmonic_f1(*out.precision, *out.recall);
  return out;
}

double exact_match_accuracy(
    std::span<const std::pair<const TableGrid*, const TableGrid*>> pairs,
    Criterion criterion) {
  if (pairs.empty()) {
    fail(ErrorCode::EmptyCorpus, "exact_match_accuracy over an empty corpus");
  }
  std::size_t hits = 0;
  for (const auto& [gt, pred] : pairs) {
    if (gt == nullptr) {
      fail(ErrorCode::InvalidArgument, "ground-truth grid is null");
    }
    if (pred != nullptr && grid_exact_match(*gt, *pred, criterion)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

TableSetMatch match_table_sets(std::span<const TableGrid> gt,
                               std::span<const TableGrid> pred,
                               Criterion criterion) {
  TableSetMatch out;
  out.criterion = criterion;

  const std::size_t n_gt = gt.size();
  const std::size_t n_pred = pred.size();
  std::vector<GritsResult> pair_results(n_gt * n_pred);
  std::vector<double> gains(n_gt * n_pred, 0.0);
  for (std::size_t i = 0; i < n_gt; ++i) {
    for (std::size_t j = 0; j < n_pred; ++j) {
      pair_results[i * n_pred + j] = grits(gt[i], pred[j], criterion);
      gains[i * n_pred + j] = pair_results[i * n_pred + j].tp;
    }
  }

  std::vector<std::ptrdiff_t> row_to_col;
  out.total_tp = solve_max_assignment(n_gt, n_pred, gains, row_to_col);

  std::vector<bool> pred_used(n_pred, false);
  out.per_gt_results.reserve(n_gt);
  for (std::size_t i = 0; i < n_gt; ++i) {
    if (row_to_col[i] >= 0) {
      const auto j = static_cast<std::size_t>(row_to_col[i]);
      out.assignment.emplace_back(i, j);
      pred_used[j] = true;
      out.per_gt_results.push_back(pair_results[i * n_pred + j]);
    } else {
      out.unmatched_gt.push_back(i);
      GritsResult miss;
      miss.criterion = criterion;
      miss.size_gt = gt[i].size();
      out.per_gt_results.push_back(miss);
    }
  }
  for (std::size_t j = 0; j < n_pred; ++j) {
    if (!pred_used[j]) out.unmatched_pred.push_back(j);
  }
  return out;
}

BinaryPrf binary_prf(const std::vector<bool>& gold,
                     const std::vector<bool>& predicted) {
  if (gold.size() != predicted.size()) {
    fail(ErrorCode::LengthMismatch,
         "gold and predicted label lists differ in length");
  }
  if (gold.empty()) {
    fail(ErrorCode::EmptyCorpus, "binary_prf over an empty corpus");
  }
  BinaryPrf out;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] && predicted[i]) ++out.tp;
    if (!gold[i] && predicted[i]) ++out.fp;
    if (gold[i] && !predicted[i]) ++out.fn;
  }
  out.recall = safe_ratio(static_cast<double>(out.tp),
                          static_cast<double>(out.tp + out.fn));
  out.precision = safe_ratio(static_cast<double>(out.tp),
                             static_cast<double>(out.tp + out.fp));
  out.f1 = harmonic_f1(out.precision, out.recall);
  return out;
}

}  // namespace tge
