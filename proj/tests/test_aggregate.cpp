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

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "testutil.hpp"
#include "tge/aggregate.hpp"
#include "tge/grid_json.hpp"
#include "tge/hungarian.hpp"

using namespace tge;

namespace {

GritsResult result_of(double tp, std::size_t size_gt, std::size_t size_pred) {
  GritsResult r;
  r.criterion = Criterion::Con;
  r.tp = tp;
  r.size_gt = size_gt;
  r.size_pred = size_pred;
  const double den = static_cast<double>(size_gt + size_pred);
  r.score = den > 0 ? 2.0 * tp / den : 0.0;
  return r;
}

TableGrid plain_grid(const std::vector<std::vector<std::string>>& texts) {
  std::vector<LogicalCell> cells;
  for (std::size_t r = 0; r < texts.size(); ++r) {
    for (std::size_t c = 0; c < texts[r].size(); ++c) {
      LogicalCell cellv;
      cellv.span = {r, r, c, c};
      cellv.text = texts[r][c];
      cells.push_back(std::move(cellv));
    }
  }
  return TableGrid::build(texts.size(), texts[0].size(), std::move(cells));
}

// Exhaustive assignment maximum over all injective row->col maps.
double permutation_oracle(std::size_t n_rows, std::size_t n_cols,
                          const std::vector<double>& gains) {
  std::vector<std::size_t> cols(n_cols);
  std::iota(cols.begin(), cols.end(), 0);
  double best = 0.0;
  // Permute columns; rows take the first min(n_rows, n_cols) slots.
  std::sort(cols.begin(), cols.end());
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < std::min(n_rows, n_cols); ++i) {
      total += gains[i * n_cols + cols[i]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(cols.begin(), cols.end()));
  if (n_rows > n_cols) {
    // Also consider which rows are matched: permute rows instead.
    std::vector<std::size_t> rows(n_rows);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      double total = 0.0;
      for (std::size_t j = 0; j < n_cols; ++j) {
        total += gains[rows[j] * n_cols + j];
      }
      best = std::max(best, total);
    } while (std::next_permutation(rows.begin(), rows.end()));
  }
  return best;
}

}  // namespace

TEST_CASE("aggregate_mean basics") {
  CHECK(aggregate_mean(std::vector<GritsResult>{result_of(4, 4, 4)}).f1 ==
        doctest::Approx(1.0));
  const std::vector<GritsResult> two = {result_of(4, 4, 4),
                                        result_of(0, 4, 4)};
  CHECK(aggregate_mean(two).f1 == doctest::Approx(0.5));
  CHECK_THROWS_AS(aggregate_mean({}), Error);
}

TEST_CASE("pseudo-F1 worked example") {
  // A perfect 2x2 table plus an empty prediction against a 2x2 table.
  const std::vector<GritsResult> results = {result_of(4, 4, 4),
                                            result_of(0, 4, 0)};
  const AggregateScore mean = aggregate_mean(results);
  CHECK(mean.f1 == doctest::Approx(0.5).epsilon(1e-12));

  const AggregateScore f1 = aggregate_pseudo_f1(results);
  CHECK(*f1.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*f1.recall == doctest::Approx(0.5).epsilon(1e-12));
  const double expected = 2.0 * 1.0 * 0.5 / 1.5;
  CHECK(f1.f1 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(f1.n_gt_cells == 8);
  CHECK(f1.n_pred_cells == 4);
}

TEST_CASE("single perfect table gives unit pseudo-F1") {
  const AggregateScore s =
      aggregate_pseudo_f1(std::vector<GritsResult>{result_of(4, 4, 4)});
  CHECK(*s.precision == 1.0);
  CHECK(*s.recall == 1.0);
  CHECK(s.f1 == 1.0);
}

TEST_CASE("equal-sized pairs make pseudo-F1 equal the mean") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> tp(0.0, 4.0);
  std::vector<GritsResult> results;
  for (int i = 0; i < 20; ++i) results.push_back(result_of(tp(rng), 4, 4));
  const double mean = aggregate_mean(results).f1;
  const double f1 = aggregate_pseudo_f1(results).f1;
  CHECK(f1 == doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("unmatchable extra prediction only hurts precision") {
  std::vector<GritsResult> results = {result_of(3.0, 4, 4),
                                      result_of(2.0, 4, 4)};
  const AggregateScore before = aggregate_pseudo_f1(results);
  results.push_back(result_of(0.0, 0, 6));  // extra predicted table
  const AggregateScore after = aggregate_pseudo_f1(results);
  CHECK(*after.precision < *before.precision);
  CHECK(*after.recall == doctest::Approx(*before.recall));
}

TEST_CASE("exact match accuracy counts missing predictions as misses") {
  const TableGrid g = plain_grid({{"a", "b"}});
  const TableGrid g2 = plain_grid({{"a", "c"}});
  using Pair = std::pair<const TableGrid*, const TableGrid*>;
  const std::vector<Pair> pairs = {{&g, &g}, {&g, nullptr}, {&g, &g2}};
  CHECK(exact_match_accuracy(pairs, Criterion::Con) ==
        doctest::Approx(1.0 / 3.0));
  CHECK(exact_match_accuracy(pairs, Criterion::Top) ==
        doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(exact_match_accuracy({}, Criterion::Top), Error);
}

TEST_CASE("match_table_sets identity and empty cases") {
  const TableGrid g = plain_grid({{"a", "b"}, {"c", "d"}});
  const std::vector<TableGrid> gt = {g};
  const std::vector<TableGrid> pred = {g};
  const TableSetMatch match = match_table_sets(gt, pred, Criterion::Con);
  REQUIRE(match.assignment.size() == 1);
  CHECK(match.assignment[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(match.per_gt_results[0].tp == doctest::Approx(4.0));
  CHECK(match.total_tp == doctest::Approx(4.0));

  const TableSetMatch vacuous =
      match_table_sets(std::vector<TableGrid>{g, g}, {}, Criterion::Con);
  CHECK(vacuous.assignment.empty());
  CHECK(vacuous.unmatched_gt.size() == 2);
  CHECK(vacuous.per_gt_results[0].score == 0.0);
  CHECK(vacuous.per_gt_results[1].size_pred == 0);
}

TEST_CASE("match_table_sets picks the maximizing permutation") {
  // Distinct tables whose pairwise tp matrix is near [[0.9, 0.2], [0.3, 0.8]]
  // scaled to cell counts: the diagonal beats the anti-diagonal.
  const TableGrid gt0 = plain_grid({{"aaaa", "bbbb"}});
  const TableGrid gt1 = plain_grid({{"cccc", "dddd"}});
  const TableGrid pred0 = plain_grid({{"aaaa", "bbbx"}});
  const TableGrid pred1 = plain_grid({{"cccx", "dddd"}});
  const std::vector<TableGrid> gt = {gt0, gt1};
  const std::vector<TableGrid> pred = {pred0, pred1};
  const TableSetMatch match = match_table_sets(gt, pred, Criterion::Con);
  REQUIRE(match.assignment.size() == 2);
  CHECK(match.assignment[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(match.assignment[1] == std::pair<std::size_t, std::size_t>{1, 1});

  // Cross-check against the two permutations by hand.
  const double diag = grits(gt0, pred0, Criterion::Con).tp +
                      grits(gt1, pred1, Criterion::Con).tp;
  const double anti = grits(gt0, pred1, Criterion::Con).tp +
                      grits(gt1, pred0, Criterion::Con).tp;
  CHECK(match.total_tp == doctest::Approx(std::max(diag, anti)));
  CHECK(diag > anti);
}

TEST_CASE("assignment solver matches the permutation oracle") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  std::uniform_int_distribution<int> grain(0, 1023);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t m = size(rng), n = size(rng);
    std::vector<double> gains(m * n);
    // Dyadic values keep every sum exact in double precision.
    for (double& g : gains) g = static_cast<double>(grain(rng)) / 1024.0;
    std::vector<std::ptrdiff_t> assignment;
    const double total = solve_max_assignment(m, n, gains, assignment);
    CHECK(total == permutation_oracle(m, n, gains));
    std::size_t matched = 0;
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (assignment[i] >= 0) {
        ++matched;
        CHECK_FALSE(used[static_cast<std::size_t>(assignment[i])]);
        used[static_cast<std::size_t>(assignment[i])] = true;
      }
    }
    CHECK(matched == std::min(m, n));
  }
}

TEST_CASE("set matching is stable under prediction permutation") {
  test::Rng rng(59);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<TableGrid> gt, pred;
    std::uniform_int_distribution<std::size_t> count(1, 4);
    const std::size_t n_gt = count(rng), n_pred = count(rng);
    // Unique texts keep tp values tie-free.
    for (std::size_t i = 0; i < n_gt; ++i) {
      gt.push_back(test::random_grid_max(rng, 3, test::TextStyle::UniquePerCell));
    }
    for (std::size_t j = 0; j < n_pred; ++j) {
      pred.push_back(test::delete_rows_cols(rng, gt[j % n_gt], 0.8));
    }
    const TableSetMatch base = match_table_sets(gt, pred, Criterion::Con);

    std::vector<std::size_t> perm(pred.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<TableGrid> shuffled(pred.size());
    for (std::size_t j = 0; j < pred.size(); ++j) {
      shuffled[perm[j]] = pred[j];
    }
    const TableSetMatch moved = match_table_sets(gt, shuffled, Criterion::Con);
    CHECK(moved.total_tp == doctest::Approx(base.total_tp).epsilon(1e-12));
    // The same ground-truth table matches the same prediction content.
    REQUIRE(moved.assignment.size() == base.assignment.size());
    for (std::size_t k = 0; k < base.assignment.size(); ++k) {
      const auto [gi, pj] = base.assignment[k];
      const auto [gi2, pj2] = moved.assignment[k];
      CHECK(gi == gi2);
      CHECK(save_grid_json(pred[pj]) == save_grid_json(shuffled[pj2]));
    }
  }
}

TEST_CASE("binary precision/recall/F1") {
  const std::vector<bool> all_pos = {true, true};
  CHECK(binary_prf(all_pos, all_pos).f1 == doctest::Approx(1.0));

  const std::vector<bool> gold = {true, true, false, false};
  const std::vector<bool> none = {false, false, false, false};
  CHECK(binary_prf(gold, none).recall == doctest::Approx(0.0));

  const std::vector<bool> pred = {true, false, true, false};
  const BinaryPrf r = binary_prf(gold, pred);
  CHECK(r.recall == doctest::Approx(0.5));
  CHECK(r.precision == doctest::Approx(0.5));
  CHECK(r.f1 == doctest::Approx(0.5));

  CHECK_THROWS_AS(binary_prf(gold, all_pos), Error);
  CHECK_THROWS_AS(binary_prf({}, {}), Error);
}
