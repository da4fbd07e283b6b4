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

#include <random>

#include "tge/graph_metrics.hpp"

using namespace tge;

namespace {

PageObject obj(ObjectClass cls, double x0, double y0, double x1, double y1,
               std::optional<double> score = std::nullopt) {
  PageObject out;
  out.class_label = cls;
  out.bbox = {x0, y0, x1, y1};
  out.score = score;
  return out;
}

// One table with a caption child; target box configurable.
PageGraph small_graph(const BBox& caption_box) {
  PageGraph g;
  g.nodes.push_back(obj(ObjectClass::Table, 0, 0, 100, 100));
  PageObject caption = obj(ObjectClass::TableCaption, caption_box.x_min,
                           caption_box.y_min, caption_box.x_max,
                           caption_box.y_max);
  g.nodes.push_back(caption);
  g.edges.emplace_back(0, 1);
  return g;
}

}  // namespace

TEST_CASE("iou rectangle arithmetic") {
  CHECK(iou({0, 0, 2, 2}, {0, 0, 2, 2}) == doctest::Approx(1.0));
  CHECK(iou({0, 0, 1, 1}, {5, 5, 6, 6}) == doctest::Approx(0.0));
  CHECK(iou({0, 0, 2, 2}, {1, 0, 3, 2}) == doctest::Approx(2.0 / 6.0));
  // Degenerate boxes have zero area and zero IoU.
  CHECK(iou({1, 1, 1, 1}, {1, 1, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("class names round trip") {
  for (std::size_t i = 0; i < kNumObjectClasses; ++i) {
    const auto cls = static_cast<ObjectClass>(i);
    CHECK(object_class_from_name(object_class_name(cls)) == cls);
  }
  CHECK(object_class_name(ObjectClass::TableSpanningCellRotated) ==
        "table spanning cell rotated");
  CHECK(is_rotated(ObjectClass::TableRotated));
  CHECK_FALSE(is_rotated(ObjectClass::TableFooter));
  CHECK(base_class(ObjectClass::TableCaptionRotated) ==
        ObjectClass::TableCaption);
  CHECK(is_table_class(ObjectClass::TableRotated));
  CHECK_THROWS_AS(object_class_from_name("widget"), Error);
}

TEST_CASE("edge f1 identity") {
  const PageGraph g = small_graph({0, 100, 100, 120});
  const EdgeF1Result r = edge_f1(g, g, 0.8);
  CHECK(r.tp == 1);
  CHECK(r.precision == doctest::Approx(1.0));
  CHECK(r.recall == doctest::Approx(1.0));
  CHECK(r.f1 == doctest::Approx(1.0));

  const EdgeF1Result empty = edge_f1(PageGraph{}, PageGraph{}, 0.8);
  CHECK(empty.f1 == doctest::Approx(1.0));
}

TEST_CASE("edge at IoU 0.6 fails the 0.8 threshold") {
  // Target box shifted to IoU exactly 0.6: (0,0,10,10) vs (0,2.5,10,12.5)
  // has intersection 75 and union 125.
  const PageGraph gt = small_graph({0, 0, 10, 10});
  const PageGraph pred = small_graph({0, 2.5, 10, 12.5});
  CHECK(iou(gt.nodes[1].bbox, pred.nodes[1].bbox) == doctest::Approx(0.6));

  const EdgeF1Result r = edge_f1(gt, pred, 0.8);
  CHECK(r.tp == 0);
  CHECK(r.fp == 1);
  CHECK(r.fn == 1);
  CHECK(r.f1 == doctest::Approx(0.0));

  // The same pair passes a 0.5 threshold.
  const EdgeF1Result relaxed = edge_f1(gt, pred, 0.5);
  CHECK(relaxed.tp == 1);
}

TEST_CASE("extra predicted edge costs precision only") {
  PageGraph gt = small_graph({0, 100, 100, 120});
  PageGraph pred = gt;
  pred.nodes.push_back(obj(ObjectClass::TableFooter, 0, 130, 100, 140));
  pred.edges.emplace_back(0, 2);
  const EdgeF1Result r = edge_f1(gt, pred, 0.8);
  CHECK(r.recall == doctest::Approx(1.0));
  CHECK(r.precision == doctest::Approx(1.0 / 2.0));
}

TEST_CASE("edge f1 is monotone in the threshold") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> coord(0.0, 100.0);
  std::uniform_int_distribution<int> n_nodes(1, 6);
  std::uniform_int_distribution<int> cls(0, 7);
  const auto random_graph = [&](PageGraph& g) {
    const int n = n_nodes(rng);
    g.nodes.push_back(obj(ObjectClass::Table, 0, 0, 100, 100));
    for (int i = 1; i < n; ++i) {
      const double x = coord(rng), y = coord(rng);
      g.nodes.push_back(obj(static_cast<ObjectClass>(cls(rng)), x, y,
                            x + 5 + coord(rng) / 10, y + 5 + coord(rng) / 10));
      g.edges.emplace_back(0, static_cast<std::size_t>(i));
    }
  };
  for (int iter = 0; iter < 50; ++iter) {
    PageGraph gt, pred;
    random_graph(gt);
    random_graph(pred);
    double prev_f1 = 1.0;
    for (const double t : {0.3, 0.5, 0.8, 0.95}) {
      const EdgeF1Result r = edge_f1(gt, pred, t);
      CHECK(r.f1 <= prev_f1 + 1e-12);
      CHECK(r.tp + r.fp == r.n_pred_edges);
      CHECK(r.tp + r.fn == r.n_gt_edges);
      prev_f1 = r.f1;
      // Greedy never beats the optimal-cardinality matching.
      const EdgeF1Result optimal =
          edge_f1(gt, pred, t, EdgeMatchStrategy::Hungarian);
      CHECK(r.tp <= optimal.tp);
    }
  }
}

TEST_CASE("detection ap hand cases") {
  DetectionInput page;
  page.gt.push_back(obj(ObjectClass::Table, 0, 0, 10, 10));
  page.pred.push_back(obj(ObjectClass::Table, 0, 0, 10, 10, 0.9));
  const std::vector<DetectionInput> pages = {page};

  const std::vector<double> fifty = {0.5};
  CHECK(detection_ap(pages, fifty).mean_over_thresholds ==
        doctest::Approx(1.0));

  // A single prediction at IoU 0.6 is a hit at 0.5 and a miss at 0.75.
  DetectionInput shifted;
  shifted.gt.push_back(obj(ObjectClass::Table, 0, 0, 10, 10));
  shifted.pred.push_back(obj(ObjectClass::Table, 0, 2.5, 10, 12.5, 0.9));
  const std::vector<DetectionInput> pages2 = {shifted};
  const std::vector<double> both = {0.5, 0.75};
  const DetectionApReport r = detection_ap(pages2, both);
  CHECK(r.mean_per_threshold[0] == doctest::Approx(1.0));
  CHECK(r.mean_per_threshold[1] == doctest::Approx(0.0));

  // No predictions at all.
  DetectionInput none;
  none.gt.push_back(obj(ObjectClass::Table, 0, 0, 10, 10));
  const std::vector<DetectionInput> pages3 = {none};
  CHECK(detection_ap(pages3, fifty).mean_over_thresholds ==
        doctest::Approx(0.0));
}

TEST_CASE("detection ap requires scores") {
  DetectionInput page;
  page.gt.push_back(obj(ObjectClass::Table, 0, 0, 10, 10));
  page.pred.push_back(obj(ObjectClass::Table, 0, 0, 10, 10));
  const std::vector<DetectionInput> pages = {page};
  const std::vector<double> fifty = {0.5};
  CHECK_THROWS_AS(detection_ap(pages, fifty), Error);
}

TEST_CASE("removing a false positive never lowers ap") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> coord(0.0, 50.0);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  for (int iter = 0; iter < 40; ++iter) {
    DetectionInput page;
    for (int i = 0; i < 4; ++i) {
      const double x = coord(rng), y = coord(rng);
      page.gt.push_back(obj(ObjectClass::Table, x, y, x + 10, y + 10));
    }
    for (int i = 0; i < 6; ++i) {
      const double x = coord(rng), y = coord(rng);
      page.pred.push_back(
          obj(ObjectClass::Table, x, y, x + 10, y + 10, score(rng)));
    }
    const std::vector<double> fifty = {0.5};
    std::vector<DetectionInput> pages = {page};
    const double base = detection_ap(pages, fifty).mean_over_thresholds;

    // Drop one prediction that matched nothing at the threshold, if any.
    for (std::size_t k = 0; k < page.pred.size(); ++k) {
      bool overlaps = false;
      for (const PageObject& g : page.gt) {
        if (iou(page.pred[k].bbox, g.bbox) >= 0.5) {
          overlaps = true;
          break;
        }
      }
      if (overlaps) continue;
      DetectionInput fewer = page;
      fewer.pred.erase(fewer.pred.begin() + static_cast<std::ptrdiff_t>(k));
      std::vector<DetectionInput> pages2 = {fewer};
      CHECK(detection_ap(pages2, fifty).mean_over_thresholds >= base - 1e-12);
    }
  }
}

TEST_CASE("graph json round trip and validation") {
  const PageGraph g = small_graph({0, 100, 100, 120});
  const std::string saved = graph_to_json(g);
  const PageGraph loaded = graph_from_json(saved);
  CHECK(loaded.nodes.size() == 2);
  CHECK(loaded.edges.size() == 1);
  CHECK(graph_to_json(loaded) == saved);

  // Caption as edge source violates the hierarchy.
  const std::string bad = R"({"nodes":[
      {"class":"table caption","bbox":[0,0,1,1]},
      {"class":"table","bbox":[0,0,10,10]}],
    "edges":[[0,1]]})";
  CHECK_THROWS_AS(graph_from_json(bad, true), Error);
  std::vector<Warning> warnings;
  const PageGraph lenient = graph_from_json(bad, false, &warnings);
  CHECK(lenient.edges.size() == 1);
  CHECK(warnings.size() == 1);

  // Out-of-range indices are rejected in both modes.
  const std::string oob =
      R"({"nodes":[{"class":"table","bbox":[0,0,1,1]}],"edges":[[0,7]]})";
  CHECK_THROWS_AS(graph_from_json(oob, false), Error);
}
