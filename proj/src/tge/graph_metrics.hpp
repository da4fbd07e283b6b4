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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tge/error.hpp"
#include "tge/parse_report.hpp"

namespace tge {

/// Axis-aligned box in page-pixel units.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// The 16-class page-object taxonomy: 8 base classes and their rotated
/// counterparts.
enum class ObjectClass : std::uint8_t {
  Table,
  TableColumn,
  TableRow,
  TableColumnHeader,
  TableSpanningCell,
  TableProjectedRowHeader,
  TableCaption,
  TableFooter,
  TableRotated,
  TableColumnRotated,
  TableRowRotated,
  TableColumnHeaderRotated,
  TableSpanningCellRotated,
  TableProjectedRowHeaderRotated,
  TableCaptionRotated,
  TableFooterRotated,
};

inline constexpr std::size_t kNumObjectClasses = 16;

bool is_rotated(ObjectClass c);
ObjectClass base_class(ObjectClass c);
bool is_table_class(ObjectClass c);

/// Canonical class-name string, e.g. "table spanning cell rotated".
std::string_view object_class_name(ObjectClass c);

/// Inverse of object_class_name. Throws UnknownClassName.
ObjectClass object_class_from_name(std::string_view name);

struct PageObject {
  ObjectClass class_label = ObjectClass::Table;
  BBox bbox;
  std::optional<double> score;  // predictions only
};

/// Typed page objects with parent->child relation edges. The annotation
/// hierarchy rule requires every edge source to be a table (possibly
/// rotated), no self-loops, and at most one parent per child.
struct PageGraph {
  std::vector<PageObject> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Hierarchy-rule violations as warnings (empty means the graph conforms).
std::vector<Warning> validate_hierarchy(const PageGraph& graph);

/// Standard intersection-over-union of two boxes; 0 when the union area is 0.
double iou(const BBox& a, const BBox& b);

/// Loads the graph interchange JSON
///   {"nodes":[{"class":"table","bbox":[x0,y0,x1,y1],"score":s?}, ...],
///    "edges":[[source,target], ...]}.
/// Edge indices must be in range. In strict mode hierarchy violations throw
/// SchemaViolation; otherwise the offending edges are kept and reported
/// through `warnings` (predicted graphs may be malformed and still need
/// scoring).
PageGraph graph_from_json(std::string_view bytes, bool strict = true,
                          std::vector<Warning>* warnings = nullptr);

std::string graph_to_json(const PageGraph& graph);

enum class EdgeMatchStrategy { Greedy, Hungarian };

struct EdgeF1Result {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t n_gt_edges = 0;
  std::uint64_t n_pred_edges = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Relation-edge F1: a predicted edge is a true positive when an unused
/// ground-truth edge has identical source and target class labels and both
/// node IoUs meet the threshold. Greedy one-to-one consumption in descending
/// min-IoU order with (pred_index, gt_index) tie-break; the Hungarian
/// strategy instead maximizes the matched-edge count. Both graphs empty
/// scores (1,1,1).
EdgeF1Result edge_f1(const PageGraph& gt, const PageGraph& pred,
                     double iou_threshold,
                     EdgeMatchStrategy strategy = EdgeMatchStrategy::Greedy);

/// One evaluation page: ground-truth objects and scored predictions.
struct DetectionInput {
  std::vector<PageObject> gt;
  std::vector<PageObject> pred;
};

struct DetectionApReport {
  std::vector<double> thresholds;
  /// AP per class per threshold; classes with no ground-truth instance are
  /// excluded.
  std::map<ObjectClass, std::vector<double>> per_class;
  /// Class-mean AP at each threshold.
  std::vector<double> mean_per_threshold;
  /// Mean over all thresholds of the class-mean (the "AP" column when run
  /// with thresholds 0.50:0.05:0.95).
  double mean_over_thresholds = 0.0;
};

/// COCO-style 10-point threshold sweep 0.50:0.05:0.95.
std::vector<double> default_ap_thresholds();

/// Per-class average precision over the pooled pages: predictions sort by
/// descending score and greedily match the unused same-page ground-truth box
/// of highest IoU >= threshold; AP is the area under the monotone
/// (all-points interpolated) precision-recall envelope.
/// Throws MissingScores when a prediction lacks a score.
DetectionApReport detection_ap(std::span<const DetectionInput> pages,
                               std::span<const double> thresholds);

}  // namespace tge
