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

#include "tablegrid_eval.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "tge/aggregate.hpp"
#include "tge/datagen.hpp"
#include "tge/dataset_io.hpp"
#include "tge/grid_json.hpp"
#include "tge/grits.hpp"
#include "tge/graph_metrics.hpp"
#include "tge/html_tables.hpp"
#include "tge/span_markdown.hpp"
#include "tge/table_grid.hpp"

struct tge_grid {
  tge::TableGrid value;
};

struct tge_parse_report {
  tge::ParseReport value;
  // Handles exposed through tge_parse_report_grid, kept alive by the report.
  std::vector<tge_grid> grids;
};

struct tge_set_match {
  tge::TableSetMatch value;
};

struct tge_graph {
  tge::PageGraph value;
};

namespace {

thread_local std::string g_last_error;

tge_status map_code(tge::ErrorCode code) {
  using tge::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TGE_ERR_INVALID_ARGUMENT;
    case ErrorCode::OverlappingSpans: return TGE_ERR_OVERLAPPING_SPANS;
    case ErrorCode::UncoveredPosition: return TGE_ERR_UNCOVERED_POSITION;
    case ErrorCode::SpanOutOfBounds: return TGE_ERR_SPAN_OUT_OF_BOUNDS;
    case ErrorCode::SchemaViolation: return TGE_ERR_SCHEMA_VIOLATION;
    case ErrorCode::HardParseFailure: return TGE_ERR_HARD_PARSE_FAILURE;
    case ErrorCode::OracleLimitExceeded: return TGE_ERR_ORACLE_LIMIT_EXCEEDED;
    case ErrorCode::EmptyCorpus: return TGE_ERR_EMPTY_CORPUS;
    case ErrorCode::LengthMismatch: return TGE_ERR_LENGTH_MISMATCH;
    case ErrorCode::MissingScores: return TGE_ERR_MISSING_SCORES;
    case ErrorCode::XmlMalformed: return TGE_ERR_XML_MALFORMED;
    case ErrorCode::UnknownClassName: return TGE_ERR_UNKNOWN_CLASS_NAME;
    case ErrorCode::IoFailure: return TGE_ERR_IO;
    case ErrorCode::Internal: return TGE_ERR_INTERNAL;
  }
  return TGE_ERR_INTERNAL;
}

template <typename Fn>
tge_status guarded(Fn&& fn) {
  try {
    fn();
    return TGE_OK;
  } catch (const tge::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TGE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TGE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TGE_ERR_INTERNAL;
  }
}

tge_status invalid(const char* message) {
  g_last_error = message;
  return TGE_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

tge::Criterion to_criterion(tge_criterion c) {
  return c == TGE_CRITERION_TOP ? tge::Criterion::Top : tge::Criterion::Con;
}

tge_grits_result to_c(const tge::GritsResult& r) {
  return {r.tp, static_cast<uint64_t>(r.size_gt),
          static_cast<uint64_t>(r.size_pred), r.score};
}

tge_parse_report* wrap_report(tge::ParseReport&& report) {
  auto* out = new tge_parse_report{std::move(report), {}};
  out->grids.reserve(out->value.grids.size());
  for (const tge::TableGrid& g : out->value.grids) {
    out->grids.push_back(tge_grid{g});
  }
  return out;
}

nlohmann::json warning_to_json(const tge::Warning& w) {
  nlohmann::json doc;
  doc["code"] = tge::warn_code_name(w.code);
  doc["message"] = w.message;
  doc["location"] = w.location;
  return doc;
}

const tge::TableGrid& grid_or_empty(const tge_grid* grid) {
  static const tge::TableGrid empty;
  return grid == nullptr ? empty : grid->value;
}

}  // namespace

extern "C" {

const char* tge_version(void) { return "0.1.0"; }

const char* tge_status_name(tge_status status) {
  switch (status) {
    case TGE_OK: return "OK";
    case TGE_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TGE_ERR_OVERLAPPING_SPANS: return "OverlappingSpans";
    case TGE_ERR_UNCOVERED_POSITION: return "UncoveredPosition";
    case TGE_ERR_SPAN_OUT_OF_BOUNDS: return "SpanOutOfBounds";
    case TGE_ERR_SCHEMA_VIOLATION: return "SchemaViolation";
    case TGE_ERR_HARD_PARSE_FAILURE: return "HardParseFailure";
    case TGE_ERR_ORACLE_LIMIT_EXCEEDED: return "OracleLimitExceeded";
    case TGE_ERR_EMPTY_CORPUS: return "EmptyCorpus";
    case TGE_ERR_LENGTH_MISMATCH: return "LengthMismatch";
    case TGE_ERR_MISSING_SCORES: return "MissingScores";
    case TGE_ERR_XML_MALFORMED: return "XmlMalformed";
    case TGE_ERR_UNKNOWN_CLASS_NAME: return "UnknownClassName";
    case TGE_ERR_IO: return "IoFailure";
    case TGE_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* tge_last_error(void) { return g_last_error.c_str(); }

void tge_string_free(char* s) { delete[] s; }

/* --- Grids ---------------------------------------------------------- */

tge_status tge_grid_from_json(const char* bytes, size_t len, tge_grid** out) {
  if (bytes == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new tge_grid{tge::load_grid_json(std::string_view(bytes, len))};
  });
}

tge_status tge_grid_to_json(const tge_grid* grid, char** out) {
  if (grid == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = dup_string(tge::save_grid_json(grid->value)); });
}

tge_status tge_grid_clone(const tge_grid* grid, tge_grid** out) {
  if (grid == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new tge_grid{grid->value}; });
}

void tge_grid_free(tge_grid* grid) { delete grid; }

uint64_t tge_grid_rows(const tge_grid* grid) {
  return grid == nullptr ? 0 : grid->value.rows();
}

uint64_t tge_grid_cols(const tge_grid* grid) {
  return grid == nullptr ? 0 : grid->value.cols();
}

tge_status tge_grid_exact_match(const tge_grid* a, const tge_grid* b,
                                tge_criterion criterion, int* out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    *out = tge::grid_exact_match(a->value, b->value, to_criterion(criterion))
               ? 1
               : 0;
  });
}

/* --- Parsing -------------------------------------------------------- */

tge_status tge_parse_html(const char* bytes, size_t len,
                          tge_parse_report** out) {
  if (bytes == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = wrap_report(tge::parse_html_tables(std::string_view(bytes, len)));
  });
}

tge_status tge_parse_span_markdown(const char* bytes, size_t len,
                                   tge_parse_report** out) {
  if (bytes == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = wrap_report(tge::parse_span_markdown(std::string_view(bytes, len)));
  });
}

tge_status tge_parse_grid_json(const char* bytes, size_t len,
                               tge_parse_report** out) {
  if (bytes == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = wrap_report(tge::parse_grid_json(std::string_view(bytes, len)));
  });
}

size_t tge_parse_report_grid_count(const tge_parse_report* report) {
  return report == nullptr ? 0 : report->grids.size();
}

const tge_grid* tge_parse_report_grid(const tge_parse_report* report,
                                      size_t index) {
  if (report == nullptr || index >= report->grids.size()) return nullptr;
  return &report->grids[index];
}

size_t tge_parse_report_warning_count(const tge_parse_report* report) {
  return report == nullptr ? 0 : report->value.warnings.size();
}

tge_status tge_parse_report_warning(const tge_parse_report* report,
                                    size_t index, char** out) {
  if (report == nullptr || out == nullptr) return invalid("null argument");
  if (index >= report->value.warnings.size()) {
    return invalid("warning index out of range");
  }
  return guarded([&] {
    *out = dup_string(warning_to_json(report->value.warnings[index]).dump());
  });
}

int tge_parse_report_repaired(const tge_parse_report* report) {
  return report != nullptr && report->value.repaired() ? 1 : 0;
}

void tge_parse_report_free(tge_parse_report* report) { delete report; }

/* --- GriTS ---------------------------------------------------------- */

tge_status tge_grits(const tge_grid* gt, const tge_grid* pred,
                     tge_criterion criterion, tge_grits_result* out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = to_c(tge::grits(grid_or_empty(gt), grid_or_empty(pred),
                           to_criterion(criterion)));
  });
}

tge_status tge_grits_exact(const tge_grid* gt, const tge_grid* pred,
                           tge_criterion criterion, size_t oracle_limit,
                           tge_grits_result* out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = to_c(tge::grits_exact(grid_or_empty(gt), grid_or_empty(pred),
                                 to_criterion(criterion), oracle_limit));
  });
}

/* --- Set matching and aggregation ----------------------------------- */

tge_status tge_match_table_sets(const tge_grid* const* gt, size_t n_gt,
                                const tge_grid* const* pred, size_t n_pred,
                                tge_criterion criterion, tge_set_match** out) {
  if (out == nullptr || (n_gt > 0 && gt == nullptr) ||
      (n_pred > 0 && pred == nullptr)) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<tge::TableGrid> gts, preds;
    gts.reserve(n_gt);
    preds.reserve(n_pred);
    for (size_t i = 0; i < n_gt; ++i) gts.push_back(grid_or_empty(gt[i]));
    for (size_t j = 0; j < n_pred; ++j) preds.push_back(grid_or_empty(pred[j]));
    *out = new tge_set_match{
        tge::match_table_sets(gts, preds, to_criterion(criterion))};
  });
}

size_t tge_set_match_pair_count(const tge_set_match* match) {
  return match == nullptr ? 0 : match->value.assignment.size();
}

tge_status tge_set_match_pair(const tge_set_match* match, size_t index,
                              size_t* gt_index, size_t* pred_index) {
  if (match == nullptr || gt_index == nullptr || pred_index == nullptr) {
    return invalid("null argument");
  }
  if (index >= match->value.assignment.size()) {
    return invalid("assignment index out of range");
  }
  *gt_index = match->value.assignment[index].first;
  *pred_index = match->value.assignment[index].second;
  return TGE_OK;
}

tge_status tge_set_match_gt_result(const tge_set_match* match, size_t gt_index,
                                   tge_grits_result* out) {
  if (match == nullptr || out == nullptr) return invalid("null argument");
  if (gt_index >= match->value.per_gt_results.size()) {
    return invalid("gt index out of range");
  }
  *out = to_c(match->value.per_gt_results[gt_index]);
  return TGE_OK;
}

double tge_set_match_total_tp(const tge_set_match* match) {
  return match == nullptr ? 0.0 : match->value.total_tp;
}

void tge_set_match_free(tge_set_match* match) { delete match; }

tge_status tge_aggregate(const tge_grits_result* results, size_t n,
                         tge_aggregate_mode mode, tge_aggregate_score* out) {
  if (out == nullptr || (n > 0 && results == nullptr)) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<tge::GritsResult> rs;
    rs.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      tge::GritsResult r;
      r.tp = results[i].tp;
      r.size_gt = results[i].size_gt;
      r.size_pred = results[i].size_pred;
      r.score = results[i].score;
      rs.push_back(r);
    }
    const tge::AggregateScore score = mode == TGE_AGG_MEAN
                                          ? tge::aggregate_mean(rs)
                                          : tge::aggregate_pseudo_f1(rs);
    out->has_precision_recall = score.precision.has_value() ? 1 : 0;
    out->precision = score.precision.value_or(0.0);
    out->recall = score.recall.value_or(0.0);
    out->f1 = score.f1;
    out->n_gt_cells = score.n_gt_cells;
    out->n_pred_cells = score.n_pred_cells;
  });
}

tge_status tge_binary_prf(const int* gold, const int* predicted, size_t n,
                          double* recall, double* precision, double* f1) {
  if (gold == nullptr || predicted == nullptr || recall == nullptr ||
      precision == nullptr || f1 == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<bool> g(n), p(n);
    for (size_t i = 0; i < n; ++i) {
      g[i] = gold[i] != 0;
      p[i] = predicted[i] != 0;
    }
    const tge::BinaryPrf r = tge::binary_prf(g, p);
    *recall = r.recall;
    *precision = r.precision;
    *f1 = r.f1;
  });
}

/* --- Graph metrics --------------------------------------------------- */

tge_status tge_graph_from_json(const char* bytes, size_t len, int strict,
                               tge_graph** out) {
  if (bytes == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new tge_graph{
        tge::graph_from_json(std::string_view(bytes, len), strict != 0)};
  });
}

tge_status tge_graph_to_json(const tge_graph* graph, char** out) {
  if (graph == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = dup_string(tge::graph_to_json(graph->value)); });
}

size_t tge_graph_node_count(const tge_graph* graph) {
  return graph == nullptr ? 0 : graph->value.nodes.size();
}

size_t tge_graph_edge_count(const tge_graph* graph) {
  return graph == nullptr ? 0 : graph->value.edges.size();
}

void tge_graph_free(tge_graph* graph) { delete graph; }

tge_status tge_edge_f1(const tge_graph* gt, const tge_graph* pred,
                       double iou_threshold, tge_edge_f1_result* out) {
  if (gt == nullptr || pred == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const tge::EdgeF1Result r =
        tge::edge_f1(gt->value, pred->value, iou_threshold);
    *out = {r.tp, r.fp, r.fn, r.n_gt_edges, r.n_pred_edges,
            r.precision, r.recall, r.f1};
  });
}

tge_status tge_detection_ap_json(const tge_graph* const* gt_pages,
                                 const tge_graph* const* pred_pages,
                                 size_t n_pages, const double* thresholds,
                                 size_t n_thresholds, char** out) {
  if (out == nullptr || (n_pages > 0 &&
                         (gt_pages == nullptr || pred_pages == nullptr))) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<tge::DetectionInput> pages(n_pages);
    for (size_t p = 0; p < n_pages; ++p) {
      if (gt_pages[p] != nullptr) pages[p].gt = gt_pages[p]->value.nodes;
      if (pred_pages[p] != nullptr) pages[p].pred = pred_pages[p]->value.nodes;
    }
    std::vector<double> ts;
    if (n_thresholds == 0 || thresholds == nullptr) {
      ts = tge::default_ap_thresholds();
    } else {
      ts.assign(thresholds, thresholds + n_thresholds);
    }
    const tge::DetectionApReport report = tge::detection_ap(pages, ts);
    nlohmann::json doc;
    doc["thresholds"] = report.thresholds;
    nlohmann::json per_class = nlohmann::json::object();
    for (const auto& [cls, aps] : report.per_class) {
      per_class[std::string(tge::object_class_name(cls))] = aps;
    }
    doc["per_class"] = std::move(per_class);
    doc["mean_per_threshold"] = report.mean_per_threshold;
    doc["mean"] = report.mean_over_thresholds;
    *out = dup_string(doc.dump());
  });
}

/* --- Dataset tools ---------------------------------------------------- */

tge_status tge_corpus_stats_json(const char* root, int strict, char** out) {
  if (root == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    std::vector<tge::Warning> warnings;
    const tge::StatsReport stats = tge::corpus_stats(
        root,
        strict != 0 ? tge::ClassNameMode::Strict : tge::ClassNameMode::Lenient,
        &warnings);
    nlohmann::json doc = nlohmann::json::parse(stats.to_json());
    nlohmann::json warn = nlohmann::json::array();
    for (const tge::Warning& w : warnings) warn.push_back(warning_to_json(w));
    doc["warnings"] = std::move(warn);
    *out = dup_string(doc.dump());
  });
}

tge_status tge_sample_pairs_jsonl(const char* root, char** out) {
  if (root == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    std::vector<tge::Warning> warnings;
    const std::vector<tge::DocumentRecord> docs =
        tge::load_document_corpus(root, tge::ClassNameMode::Lenient, &warnings);
    std::string lines;
    for (const tge::PagePair& pair : tge::sample_continuation_pairs(docs)) {
      nlohmann::json rec;
      rec["doc_id"] = pair.doc_id;
      rec["first_page"] = pair.first_page_index;
      rec["label"] = pair.positive ? "positive" : "negative";
      lines += rec.dump();
      lines += '\n';
    }
    *out = dup_string(lines);
  });
}

tge_status tge_verify_multipart(const char* extracted, const char* reference,
                                double threshold, double* distance,
                                int* matched) {
  if (extracted == nullptr || reference == nullptr || distance == nullptr ||
      matched == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const tge::MatchVerdict v =
        tge::verify_multipart_match(extracted, reference, threshold);
    *distance = v.normalized_distance;
    *matched = v.matched ? 1 : 0;
  });
}

tge_status tge_part_combinations_json(const char* const* parts, size_t n_parts,
                                      char** out) {
  if (out == nullptr || (n_parts > 0 && parts == nullptr)) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<tge::DetectedPart> ps;
    ps.reserve(n_parts);
    for (size_t i = 0; i < n_parts; ++i) {
      if (parts[i] == nullptr) {
        tge::fail(tge::ErrorCode::InvalidArgument, "null part text");
      }
      ps.push_back({i, parts[i]});
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const tge::PartCombination& combo :
         tge::enumerate_part_combinations(ps)) {
      nlohmann::json rec;
      rec["start"] = combo.start;
      rec["length"] = combo.length;
      rec["text"] = combo.text;
      arr.push_back(std::move(rec));
    }
    *out = dup_string(arr.dump());
  });
}

} /* extern "C" */
