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

#include <cmath>

#include "testutil.hpp"
#include "tge/grits.hpp"

using namespace tge;

namespace {

LogicalCell cell(std::size_t r0, std::size_t r1, std::size_t c0,
                 std::size_t c1, std::string text) {
  LogicalCell out;
  out.span = {r0, r1, c0, c1};
  out.text = std::move(text);
  return out;
}

TableGrid plain_grid(const std::vector<std::vector<std::string>>& texts) {
  std::vector<LogicalCell> cells;
  for (std::size_t r = 0; r < texts.size(); ++r) {
    for (std::size_t c = 0; c < texts[r].size(); ++c) {
      cells.push_back(cell(r, r, c, c, texts[r][c]));
    }
  }
  return TableGrid::build(texts.size(), texts[0].size(), std::move(cells));
}

void check_monotone(const Alignment2D& a) {
  for (std::size_t i = 1; i < a.row_map.size(); ++i) {
    CHECK(a.row_map[i - 1].first < a.row_map[i].first);
    CHECK(a.row_map[i - 1].second < a.row_map[i].second);
  }
  for (std::size_t i = 1; i < a.col_map.size(); ++i) {
    CHECK(a.col_map[i - 1].first < a.col_map[i].first);
    CHECK(a.col_map[i - 1].second < a.col_map[i].second);
  }
}

}  // namespace

TEST_CASE("content similarity on aligned cells") {
  CHECK(cell_sim_con("abc", "abc") == doctest::Approx(1.0));
  CHECK(cell_sim_con("", "x") == doctest::Approx(0.0));
  CHECK(cell_sim_con("", "") == doctest::Approx(1.0));
  CHECK(cell_sim_con("abc", "abd") == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("topology similarity is relative-footprint IoU") {
  // Identical relative footprints.
  CHECK(cell_sim_top({0, 1, 0, 0}, 0, 0, {2, 3, 4, 4}, 2, 4) ==
        doctest::Approx(1.0));
  // a spans 1x2 from its own position, b is 1x1: IoU = 1/2.
  CHECK(cell_sim_top({0, 0, 0, 1}, 0, 0, {0, 0, 0, 0}, 0, 0) ==
        doctest::Approx(0.5));
  // Disjoint relative rectangles.
  CHECK(cell_sim_top({5, 5, 5, 5}, 0, 0, {0, 0, 0, 0}, 0, 0) ==
        doctest::Approx(0.0));
}

TEST_CASE("identity alignment scores 1") {
  test::Rng rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    const TableGrid g = test::random_grid_max(rng, 5, test::TextStyle::Html);
    for (const Criterion c : {Criterion::Top, Criterion::Con}) {
      const GritsResult r = grits(g, g, c);
      CHECK(r.score == 1.0);
      CHECK(r.tp == doctest::Approx(static_cast<double>(g.size())));
    }
    const Alignment2D a = align_2d_factored(g, g, Criterion::Con);
    CHECK(a.row_map.size() == g.rows());
    CHECK(a.col_map.size() == g.cols());
    check_monotone(a);
  }
}

TEST_CASE("appended unmatched column worked example") {
  // gt 2x2 with distinct texts; pred adds a column whose texts share no
  // characters with anything else.
  const TableGrid gt = plain_grid({{"aa", "bb"}, {"cc", "dd"}});
  const TableGrid pred =
      plain_grid({{"aa", "bb", "zz"}, {"cc", "dd", "yy"}});

  const GritsResult heuristic = grits(gt, pred, Criterion::Con);
  CHECK(heuristic.tp == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(heuristic.score == doctest::Approx(0.8).epsilon(1e-12));

  const GritsResult oracle = grits_exact(gt, pred, Criterion::Con, 4);
  CHECK(oracle.tp == heuristic.tp);
  CHECK(oracle.score == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("score bound against a tiny prediction") {
  const TableGrid gt = plain_grid({{"a", "b"}, {"c", "d"}});
  const TableGrid tiny = plain_grid({{""}});
  const GritsResult r = grits(gt, tiny, Criterion::Con);
  CHECK(r.tp <= 1.0);
  CHECK(r.score <= 2.0 / (4 + 1));
}

TEST_CASE("empty prediction scores zero") {
  const TableGrid gt = plain_grid({{"a", "b"}, {"c", "d"}});
  const TableGrid empty;
  const GritsResult r = grits(gt, empty, Criterion::Con);
  CHECK(r.score == 0.0);
  CHECK(r.tp == 0.0);
  CHECK(r.size_pred == 0);
}

TEST_CASE("oracle refuses grids above its limit") {
  test::Rng rng(23);
  const TableGrid big = test::random_grid(rng, 5, 5, test::TextStyle::MarkdownSafe);
  CHECK_THROWS_AS(align_2d_exact(big, big, Criterion::Top, 4), Error);
  CHECK_NOTHROW(align_2d_exact(big, big, Criterion::Top, 5));
}

TEST_CASE("grits is symmetric") {
  test::Rng rng(29);
  for (int iter = 0; iter < 40; ++iter) {
    const TableGrid a = test::random_grid_max(rng, 4, test::TextStyle::Html);
    const TableGrid b = test::random_grid_max(rng, 4, test::TextStyle::Html);
    for (const Criterion c : {Criterion::Top, Criterion::Con}) {
      const GritsResult ab = grits(a, b, c);
      const GritsResult ba = grits(b, a, c);
      CHECK(std::abs(ab.score - ba.score) <= 1e-12);
      CHECK(ab.score >= 0.0);
      CHECK(ab.score <= 1.0);
    }
  }
}

TEST_CASE("factored alignment never beats the exhaustive oracle") {
  test::Rng rng(31);
  for (int iter = 0; iter < 150; ++iter) {
    const TableGrid a = test::random_grid_max(rng, 4, test::TextStyle::MarkdownSafe);
    const TableGrid b = test::random_grid_max(rng, 4, test::TextStyle::MarkdownSafe);
    for (const Criterion c : {Criterion::Top, Criterion::Con}) {
      const Alignment2D heuristic = align_2d_factored(a, b, c);
      const Alignment2D oracle = align_2d_exact(a, b, c, 4);
      CHECK(heuristic.tp_score <= oracle.tp_score);
      check_monotone(heuristic);
      check_monotone(oracle);
      CHECK(heuristic.tp_score <=
            static_cast<double>(heuristic.row_map.size() *
                                heuristic.col_map.size()) + 1e-12);
    }
  }
}

TEST_CASE("factored alignment is exact on sub-grid deletions") {
  test::Rng rng(37);
  for (int iter = 0; iter < 150; ++iter) {
    const TableGrid a =
        test::random_grid_max(rng, 4, test::TextStyle::UniquePerCell);
    const TableGrid b = test::delete_rows_cols(rng, a, 0.7);
    const Alignment2D heuristic = align_2d_factored(a, b, Criterion::Con);
    const Alignment2D oracle = align_2d_exact(a, b, Criterion::Con, 4);
    CHECK(heuristic.tp_score == oracle.tp_score);
  }
}

TEST_CASE("ties break toward the lexicographically smallest maps") {
  // Every cell identical: any full-size alignment is optimal, so the
  // identity maps must come back.
  const TableGrid same = plain_grid({{"x", "x"}, {"x", "x"}});
  const Alignment2D a = align_2d_factored(same, same, Criterion::Con);
  REQUIRE(a.row_map.size() == 2);
  REQUIRE(a.col_map.size() == 2);
  CHECK(a.row_map[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(a.row_map[1] == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(a.col_map[0] == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(a.col_map[1] == std::pair<std::size_t, std::size_t>{1, 1});

  // Nothing matches: the canonical optimum is the empty alignment.
  const TableGrid left = plain_grid({{"aa"}});
  const TableGrid right = plain_grid({{"zz"}});
  const Alignment2D none = align_2d_factored(left, right, Criterion::Con);
  CHECK(none.tp_score == 0.0);
  CHECK(none.row_map.empty());
  const Alignment2D none_exact = align_2d_exact(left, right, Criterion::Con, 4);
  CHECK(none_exact.row_map.empty());
  CHECK(none_exact.col_map.empty());
}

TEST_CASE("tp never exceeds the smaller grid") {
  test::Rng rng(97);
  for (int iter = 0; iter < 60; ++iter) {
    const TableGrid a = test::random_grid_max(rng, 5, test::TextStyle::Html);
    const TableGrid b = test::random_grid_max(rng, 5, test::TextStyle::Html);
    for (const Criterion c : {Criterion::Top, Criterion::Con}) {
      const GritsResult r = grits(a, b, c);
      CHECK(r.tp <= static_cast<double>(std::min(a.size(), b.size())) + 1e-12);
      CHECK(r.tp >= 0.0);
    }
  }
}

TEST_CASE("score 1 implies positionwise equality") {
  test::Rng rng(41);
  for (int iter = 0; iter < 60; ++iter) {
    const TableGrid a = test::random_grid_max(rng, 4, test::TextStyle::MarkdownSafe);
    const TableGrid b = test::random_grid_max(rng, 4, test::TextStyle::MarkdownSafe);
    const GritsResult top = grits(a, b, Criterion::Top);
    if (top.score == 1.0) {
      CHECK(grid_exact_match(a, b, Criterion::Top));
    }
    if (grid_exact_match(a, b, Criterion::Con)) {
      CHECK(grits(a, b, Criterion::Con).score == 1.0);
    }
  }
}
