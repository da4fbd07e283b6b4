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

#include "tge/graph_metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

#include <json.hpp>

#include "tge/hungarian.hpp"

namespace tge {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kNumObjectClasses / 2> kBaseNames = {
    "table",
    "table column",
    "table row",
    "table column header",
    "table spanning cell",
    "table projected row header",
    "table caption",
    "table footer",
};

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

bool is_rotated(ObjectClass c) {
  return static_cast<std::size_t>(c) >= kNumObjectClasses / 2;
}

ObjectClass base_class(ObjectClass c) {
  const auto v = static_cast<std::size_t>(c);
  return static_cast<ObjectClass>(v % (kNumObjectClasses / 2));
}

bool is_table_class(ObjectClass c) {
  return base_class(c) == ObjectClass::Table;
}

std::string_view object_class_name(ObjectClass c) {
  static const std::array<std::string, kNumObjectClasses> names = [] {
    std::array<std::string, kNumObjectClasses> out;
    for (std::size_t i = 0; i < kBaseNames.size(); ++i) {
      out[i] = std::string(kBaseNames[i]);
      out[i + kBaseNames.size()] = std::string(kBaseNames[i]) + " rotated";
    }
    return out;
  }();
  return names[static_cast<std::size_t>(c)];
}

ObjectClass object_class_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumObjectClasses; ++i) {
    if (object_class_name(static_cast<ObjectClass>(i)) == name) {
      return static_cast<ObjectClass>(i);
    }
  }
  fail(ErrorCode::UnknownClassName,
       "unknown object class \"" + std::string(name) + "\"");
}

std::vector<Warning> validate_hierarchy(const PageGraph& graph) {
  std::vector<Warning> out;
  std::vector<bool> has_parent(graph.nodes.size(), false);
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& [src, tgt] = graph.edges[i];
    const std::string loc = "edge " + std::to_string(i);
    if (src >= graph.nodes.size() || tgt >= graph.nodes.size()) {
      out.push_back({WarnCode::HierarchyViolation, "edge index out of range", loc});
      continue;
    }
    if (src == tgt) {
      out.push_back({WarnCode::HierarchyViolation, "self-loop", loc});
    }
    if (!is_table_class(graph.nodes[src].class_label)) {
      out.push_back({WarnCode::HierarchyViolation,
                     "edge source is not a table object", loc});
    }
    if (tgt < has_parent.size()) {
      if (has_parent[tgt]) {
        out.push_back({WarnCode::HierarchyViolation,
                       "child has more than one parent", loc});
      }
      has_parent[tgt] = true;
    }
  }
  return out;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  const double inter = (ix > 0.0 && iy > 0.0) ? ix * iy : 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

PageGraph graph_from_json(std::string_view bytes, bool strict,
                          std::vector<Warning>* warnings) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    fail(ErrorCode::SchemaViolation, "graph document is not a JSON object");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    fail(ErrorCode::SchemaViolation, "missing or non-array \"nodes\"");
  }
  PageGraph graph;
  for (const json& n : doc["nodes"]) {
    if (!n.is_object() || !n.contains("class") || !n["class"].is_string() ||
        !n.contains("bbox") || !n["bbox"].is_array() || n["bbox"].size() != 4) {
      fail(ErrorCode::SchemaViolation,
           "node must carry \"class\" and a 4-element \"bbox\"");
    }
    PageObject obj;
    obj.class_label = object_class_from_name(n["class"].get<std::string>());
    for (const json& v : n["bbox"]) {
      if (!v.is_number()) {
        fail(ErrorCode::SchemaViolation, "bbox entries must be numbers");
      }
    }
    obj.bbox = {n["bbox"][0].get<double>(), n["bbox"][1].get<double>(),
                n["bbox"][2].get<double>(), n["bbox"][3].get<double>()};
    if (obj.bbox.x_min > obj.bbox.x_max || obj.bbox.y_min > obj.bbox.y_max) {
      fail(ErrorCode::SchemaViolation, "bbox has negative extent");
    }
    if (n.contains("score")) {
      if (!n["score"].is_number()) {
        fail(ErrorCode::SchemaViolation, "score must be a number");
      }
      obj.score = n["score"].get<double>();
    }
    graph.nodes.push_back(obj);
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) {
      fail(ErrorCode::SchemaViolation, "\"edges\" must be an array");
    }
    for (const json& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned()) {
        fail(ErrorCode::SchemaViolation,
             "edges must be [source, target] index pairs");
      }
      const auto src = e[0].get<std::size_t>();
      const auto tgt = e[1].get<std::size_t>();
      if (src >= graph.nodes.size() || tgt >= graph.nodes.size()) {
        fail(ErrorCode::SchemaViolation, "edge index out of range");
      }
      graph.edges.emplace_back(src, tgt);
    }
  }

  const std::vector<Warning> violations = validate_hierarchy(graph);
  if (!violations.empty()) {
    if (strict) {
      fail(ErrorCode::SchemaViolation,
           "hierarchy violation: " + violations.front().message + " (" +
               violations.front().location + ")");
    }
    if (warnings != nullptr) {
      warnings->insert(warnings->end(), violations.begin(), violations.end());
    }
  }
  return graph;
}

std::string graph_to_json(const PageGraph& graph) {
  json doc;
  json nodes = json::array();
  for (const PageObject& obj : graph.nodes) {
    json n;
    n["class"] = std::string(object_class_name(obj.class_label));
    n["bbox"] = {obj.bbox.x_min, obj.bbox.y_min, obj.bbox.x_max, obj.bbox.y_max};
    if (obj.score.has_value()) n["score"] = *obj.score;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& [s, t] : graph.edges) edges.push_back({s, t});
  doc["edges"] = std::move(edges);
  return doc.dump();
}

EdgeF1Result edge_f1(const PageGraph& gt, const PageGraph& pred,
                     double iou_threshold, EdgeMatchStrategy strategy) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    fail(ErrorCode::InvalidArgument, "iou threshold must be in (0, 1]");
  }
  EdgeF1Result out;
  out.n_gt_edges = gt.edges.size();
  out.n_pred_edges = pred.edges.size();
  if (gt.edges.empty() && pred.edges.empty()) {
    out.precision = out.recall = out.f1 = 1.0;
    return out;
  }

  // Eligible pairs: identical class labels at both endpoints and both node
  // IoUs at or above the threshold.
  struct Candidate {
    double min_iou;
    std::size_t pred_index;
    std::size_t gt_index;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < pred.edges.size(); ++p) {
    const auto& [ps, pt] = pred.edges[p];
    if (ps >= pred.nodes.size() || pt >= pred.nodes.size()) continue;
    for (std::size_t g = 0; g < gt.edges.size(); ++g) {
      const auto& [gs, gtgt] = gt.edges[g];
      if (gs >= gt.nodes.size() || gtgt >= gt.nodes.size()) continue;
      if (pred.nodes[ps].class_label != gt.nodes[gs].class_label) continue;
      if (pred.nodes[pt].class_label != gt.nodes[gtgt].class_label) continue;
      const double src_iou = iou(pred.nodes[ps].bbox, gt.nodes[gs].bbox);
      const double tgt_iou = iou(pred.nodes[pt].bbox, gt.nodes[gtgt].bbox);
      const double min_iou = std::min(src_iou, tgt_iou);
      if (min_iou >= iou_threshold) {
        candidates.push_back({min_iou, p, g});
      }
    }
  }

  std::vector<bool> pred_used(pred.edges.size(), false);
  std::vector<bool> gt_used(gt.edges.size(), false);
  std::uint64_t tp = 0;
  if (strategy == EdgeMatchStrategy::Greedy) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return std::tie(b.min_iou, a.pred_index, a.gt_index) <
                       std::tie(a.min_iou, b.pred_index, b.gt_index);
              });
    for (const Candidate& c : candidates) {
      if (pred_used[c.pred_index] || gt_used[c.gt_index]) continue;
      pred_used[c.pred_index] = true;
      gt_used[c.gt_index] = true;
      ++tp;
    }
  } else {
    // Unit gains on eligible pairs: the optimum is the maximum number of
    // simultaneously matchable edges.
    std::vector<double> gains(pred.edges.size() * gt.edges.size(), 0.0);
    for (const Candidate& c : candidates) {
      gains[c.pred_index * gt.edges.size() + c.gt_index] = 1.0;
    }
    std::vector<std::ptrdiff_t> row_to_col;
    const double total = solve_max_assignment(pred.edges.size(),
                                              gt.edges.size(), gains,
                                              row_to_col);
    tp = static_cast<std::uint64_t>(std::llround(total));
  }

  out.tp = tp;
  out.fp = out.n_pred_edges - tp;
  out.fn = out.n_gt_edges - tp;
  out.precision = safe_ratio(static_cast<double>(tp),
                             static_cast<double>(out.n_pred_edges));
  out.recall =
      safe_ratio(static_cast<double>(tp), static_cast<double>(out.n_gt_edges));
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall /
                     (out.precision + out.recall)
               : 0.0;
  return out;
}

std::vector<double> default_ap_thresholds() {
  std::vector<double> out;
  for (int i = 0; i < 10; ++i) out.push_back(0.50 + 0.05 * i);
  return out;
}

namespace {

// Average precision for one class at one threshold over pooled pages.
double class_ap(std::span<const DetectionInput> pages, ObjectClass cls,
                double threshold) {
  struct Pred {
    double score;
    std::size_t page;
    std::size_t index;
  };
  std::vector<Pred> preds;
  std::size_t n_gt = 0;
  for (std::size_t p = 0; p < pages.size(); ++p) {
    for (std::size_t i = 0; i < pages[p].pred.size(); ++i) {
      if (pages[p].pred[i].class_label == cls) {
        preds.push_back({*pages[p].pred[i].score, p, i});
      }
    }
    for (const PageObject& g : pages[p].gt) {
      if (g.class_label == cls) ++n_gt;
    }
  }
  if (n_gt == 0) return 0.0;
  std::sort(preds.begin(), preds.end(), [](const Pred& a, const Pred& b) {
    return std::tie(b.score, a.page, a.index) <
           std::tie(a.score, b.page, b.index);
  });

  // Greedy per-page matching against unused ground truth.
  std::vector<std::vector<bool>> gt_used(pages.size());
  for (std::size_t p = 0; p < pages.size(); ++p) {
    gt_used[p].assign(pages[p].gt.size(), false);
  }
  std::vector<bool> is_tp(preds.size(), false);
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const DetectionInput& page = pages[preds[k].page];
    const PageObject& det = page.pred[preds[k].index];
    double best_iou = 0.0;
    std::ptrdiff_t best_gt = -1;
    for (std::size_t g = 0; g < page.gt.size(); ++g) {
      if (page.gt[g].class_label != cls || gt_used[preds[k].page][g]) continue;
      const double v = iou(det.bbox, page.gt[g].bbox);
      if (v > best_iou) {
        best_iou = v;
        best_gt = static_cast<std::ptrdiff_t>(g);
      }
    }
    if (best_gt >= 0 && best_iou >= threshold) {
      is_tp[k] = true;
      gt_used[preds[k].page][static_cast<std::size_t>(best_gt)] = true;
    }
  }

  // All-points interpolated area under the precision-recall envelope.
  std::vector<double> recall(preds.size()), precision(preds.size());
  std::size_t cum_tp = 0;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    if (is_tp[k]) ++cum_tp;
    recall[k] = static_cast<double>(cum_tp) / static_cast<double>(n_gt);
    precision[k] =
        static_cast<double>(cum_tp) / static_cast<double>(k + 1);
  }
  double ap = 0.0;
  double max_prec = 0.0;
  for (std::size_t k = preds.size(); k-- > 0;) {
    max_prec = std::max(max_prec, precision[k]);
    const double r_prev = k == 0 ? 0.0 : recall[k - 1];
    if (recall[k] > r_prev) {
      ap += (recall[k] - r_prev) * max_prec;
    }
  }
  return ap;
}

}  // namespace

DetectionApReport detection_ap(std::span<const DetectionInput> pages,
                               std::span<const double> thresholds) {
  for (const DetectionInput& page : pages) {
    for (const PageObject& det : page.pred) {
      if (!det.score.has_value()) {
        fail(ErrorCode::MissingScores, "prediction lacks a detection score");
      }
    }
  }
  DetectionApReport report;
  report.thresholds.assign(thresholds.begin(), thresholds.end());

  std::vector<ObjectClass> classes;
  for (std::size_t c = 0; c < kNumObjectClasses; ++c) {
    const auto cls = static_cast<ObjectClass>(c);
    bool any_gt = false;
    for (const DetectionInput& page : pages) {
      for (const PageObject& g : page.gt) {
        if (g.class_label == cls) {
          any_gt = true;
          break;
        }
      }
      if (any_gt) break;
    }
    if (any_gt) classes.push_back(cls);
  }

  for (const ObjectClass cls : classes) {
    auto& row = report.per_class[cls];
    row.reserve(thresholds.size());
    for (const double t : thresholds) {
      row.push_back(class_ap(pages, cls, t));
    }
  }

  report.mean_per_threshold.assign(thresholds.size(), 0.0);
  if (!classes.empty()) {
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      double sum = 0.0;
      for (const ObjectClass cls : classes) {
        sum += report.per_class[cls][ti];
      }
      report.mean_per_threshold[ti] = sum / static_cast<double>(classes.size());
    }
  }
  if (!thresholds.empty()) {
    double sum = 0.0;
    for (const double v : report.mean_per_threshold) sum += v;
    report.mean_over_thresholds = sum / static_cast<double>(thresholds.size());
  }
  return report;
}

}  // namespace tge
