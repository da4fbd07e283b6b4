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

#include "testutil.hpp"
#include "tge/grid_json.hpp"

using namespace tge;

TEST_CASE("grid json round trip") {
  test::Rng rng(67);
  for (int iter = 0; iter < 50; ++iter) {
    const TableGrid g = test::random_grid_max(rng, 6, test::TextStyle::Html);
    const std::string saved = save_grid_json(g);
    const TableGrid loaded = load_grid_json(saved);
    CHECK(test::same_grid(g, loaded));
    // Canonical form is stable: save(load(save(g))) == save(g).
    CHECK(save_grid_json(loaded) == saved);
  }
}

TEST_CASE("single cell document") {
  const std::string saved = save_grid_json(
      TableGrid::build(1, 1, {{CellSpan{0, 0, 0, 0}, "x", false, false}}));
  const TableGrid loaded = load_grid_json(saved);
  CHECK(loaded.rows() == 1);
  CHECK(loaded.cell_at(0, 0).text == "x");
}

TEST_CASE("schema violations") {
  try {
    load_grid_json(R"({"n_rows":1,"cells":[]})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchemaViolation);
  }
  CHECK_THROWS_AS(load_grid_json("not json"), Error);
  CHECK_THROWS_AS(load_grid_json(R"({"n_rows":1,"n_cols":1,"cells":[{}]})"),
                  Error);
  // Overlap propagates from grid construction.
  const std::string overlapping = R"({"n_rows":1,"n_cols":1,"cells":[
    {"row_start":0,"row_end":0,"col_start":0,"col_end":0,"text":"a"},
    {"row_start":0,"row_end":0,"col_start":0,"col_end":0,"text":"b"}]})";
  try {
    load_grid_json(overlapping);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingSpans);
  }
}

TEST_CASE("empty grid sentinel round trips") {
  const TableGrid empty;
  const std::string saved = save_grid_json(empty);
  const TableGrid loaded = load_grid_json(saved);
  CHECK(loaded.empty());
  CHECK_THROWS_AS(load_grid_json(R"({"n_rows":0,"n_cols":2,"cells":[]})"),
                  Error);
}

TEST_CASE("lenient multi-grid parsing") {
  const std::string doc = R"([
    {"n_rows":1,"n_cols":1,"cells":[
      {"row_start":0,"row_end":0,"col_start":0,"col_end":0,"text":"a"}]},
    {"n_rows":1,"n_cols":1,"cells":[{}]},
    {"n_rows":1,"n_cols":1,"cells":[
      {"row_start":0,"row_end":0,"col_start":0,"col_end":0,"text":"b"}]}
  ])";
  const ParseReport report = parse_grid_json(doc);
  REQUIRE(report.grids.size() == 2);
  CHECK(report.grids[0].cell_at(0, 0).text == "a");
  CHECK(report.grids[1].cell_at(0, 0).text == "b");
  CHECK(report.warnings.size() == 1);
  CHECK(report.repaired());

  // A single object parses as one grid.
  const ParseReport single = parse_grid_json(
      R"({"n_rows":1,"n_cols":1,"cells":[
        {"row_start":0,"row_end":0,"col_start":0,"col_end":0,"text":"a"}]})");
  CHECK(single.grids.size() == 1);
}
