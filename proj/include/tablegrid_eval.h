/* Copyright 2026 The tablegrid-eval Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the tablegrid-eval shared library.
 *
 * All functions return a tge_status; results travel through out-parameters.
 * Objects returned through tge_* handle pointers are owned by the caller and
 * released with the matching *_free function; strings returned as char* are
 * released with tge_string_free. On failure tge_last_error() carries a
 * human-readable message for the calling thread.
 */

#ifndef TABLEGRID_EVAL_H_
#define TABLEGRID_EVAL_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tge_status {
  TGE_OK = 0,
  TGE_ERR_INVALID_ARGUMENT = 1,
  TGE_ERR_OVERLAPPING_SPANS = 2,
  TGE_ERR_UNCOVERED_POSITION = 3,
  TGE_ERR_SPAN_OUT_OF_BOUNDS = 4,
  TGE_ERR_SCHEMA_VIOLATION = 5,
  TGE_ERR_HARD_PARSE_FAILURE = 6,
  TGE_ERR_ORACLE_LIMIT_EXCEEDED = 7,
  TGE_ERR_EMPTY_CORPUS = 8,
  TGE_ERR_LENGTH_MISMATCH = 9,
  TGE_ERR_MISSING_SCORES = 10,
  TGE_ERR_XML_MALFORMED = 11,
  TGE_ERR_UNKNOWN_CLASS_NAME = 12,
  TGE_ERR_IO = 13,
  TGE_ERR_INTERNAL = 14
} tge_status;

typedef enum tge_criterion {
  TGE_CRITERION_TOP = 0,
  TGE_CRITERION_CON = 1
} tge_criterion;

typedef enum tge_aggregate_mode {
  TGE_AGG_MEAN = 0,
  TGE_AGG_PSEUDO_F1 = 1
} tge_aggregate_mode;

/* Opaque handles. */
typedef struct tge_grid tge_grid;
typedef struct tge_parse_report tge_parse_report;
typedef struct tge_set_match tge_set_match;
typedef struct tge_graph tge_graph;

typedef struct tge_grits_result {
  double tp;
  uint64_t size_gt;
  uint64_t size_pred;
  double score;
} tge_grits_result;

typedef struct tge_aggregate_score {
  int has_precision_recall; /* 1 in pseudo-F1 mode */
  double precision;
  double recall;
  double f1; /* the mean in mean mode */
  uint64_t n_gt_cells;
  uint64_t n_pred_cells;
} tge_aggregate_score;

typedef struct tge_edge_f1_result {
  uint64_t tp;
  uint64_t fp;
  uint64_t fn;
  uint64_t n_gt_edges;
  uint64_t n_pred_edges;
  double precision;
  double recall;
  double f1;
} tge_edge_f1_result;

const char* tge_version(void);
const char* tge_status_name(tge_status status);
/* Message of the most recent failure on the calling thread. */
const char* tge_last_error(void);
void tge_string_free(char* s);

/* --- Grids ---------------------------------------------------------- */

/* Canonical grid JSON (single object). */
tge_status tge_grid_from_json(const char* bytes, size_t len, tge_grid** out);
tge_status tge_grid_to_json(const tge_grid* grid, char** out);
tge_status tge_grid_clone(const tge_grid* grid, tge_grid** out);
void tge_grid_free(tge_grid* grid);

uint64_t tge_grid_rows(const tge_grid* grid);
uint64_t tge_grid_cols(const tge_grid* grid);

tge_status tge_grid_exact_match(const tge_grid* a, const tge_grid* b,
                                tge_criterion criterion, int* out);

/* --- Parsing -------------------------------------------------------- */

/* One grid per <table> element, lenient recovery. */
tge_status tge_parse_html(const char* bytes, size_t len,
                          tge_parse_report** out);
/* Pipe-delimited markdown with <ROWSPAN=k>/<COLSPAN=k> cell tags. */
tge_status tge_parse_span_markdown(const char* bytes, size_t len,
                                   tge_parse_report** out);
/* Canonical grid JSON: a single object or an array of them. */
tge_status tge_parse_grid_json(const char* bytes, size_t len,
                               tge_parse_report** out);

size_t tge_parse_report_grid_count(const tge_parse_report* report);
/* Borrowed reference, valid while the report lives. */
const tge_grid* tge_parse_report_grid(const tge_parse_report* report,
                                      size_t index);
size_t tge_parse_report_warning_count(const tge_parse_report* report);
/* One warning as a JSON object {"code":..,"message":..,"location":..}. */
tge_status tge_parse_report_warning(const tge_parse_report* report,
                                    size_t index, char** out);
int tge_parse_report_repaired(const tge_parse_report* report);
void tge_parse_report_free(tge_parse_report* report);

/* --- GriTS ---------------------------------------------------------- */

/* pred may be NULL (scored as the empty prediction). */
tge_status tge_grits(const tge_grid* gt, const tge_grid* pred,
                     tge_criterion criterion, tge_grits_result* out);
/* Exhaustive-alignment oracle, for grids within the dimension limit. */
tge_status tge_grits_exact(const tge_grid* gt, const tge_grid* pred,
                           tge_criterion criterion, size_t oracle_limit,
                           tge_grits_result* out);

/* --- Set matching and aggregation ----------------------------------- */

tge_status tge_match_table_sets(const tge_grid* const* gt, size_t n_gt,
                                const tge_grid* const* pred, size_t n_pred,
                                tge_criterion criterion, tge_set_match** out);
size_t tge_set_match_pair_count(const tge_set_match* match);
tge_status tge_set_match_pair(const tge_set_match* match, size_t index,
                              size_t* gt_index, size_t* pred_index);
/* Per-ground-truth-table result; unmatched tables score 0 against an empty
 * prediction. */
tge_status tge_set_match_gt_result(const tge_set_match* match, size_t gt_index,
                                   tge_grits_result* out);
double tge_set_match_total_tp(const tge_set_match* match);
void tge_set_match_free(tge_set_match* match);

tge_status tge_aggregate(const tge_grits_result* results, size_t n,
                         tge_aggregate_mode mode, tge_aggregate_score* out);

/* Labels: nonzero = positive. Outputs follow the (recall, precision, f1)
 * convention. */
tge_status tge_binary_prf(const int* gold, const int* predicted, size_t n,
                          double* recall, double* precision, double* f1);

/* --- Graph metrics --------------------------------------------------- */

/* strict=0 keeps hierarchy-violating edges (predictions may be malformed). */
tge_status tge_graph_from_json(const char* bytes, size_t len, int strict,
                               tge_graph** out);
tge_status tge_graph_to_json(const tge_graph* graph, char** out);
size_t tge_graph_node_count(const tge_graph* graph);
size_t tge_graph_edge_count(const tge_graph* graph);
void tge_graph_free(tge_graph* graph);

tge_status tge_edge_f1(const tge_graph* gt, const tge_graph* pred,
                       double iou_threshold, tge_edge_f1_result* out);

/* Detection AP over pooled pages. Returns a JSON report
 * {"thresholds":[..],"per_class":{..},"mean_per_threshold":[..],"mean":..}.
 * Pass n_thresholds = 0 for the standard 0.50:0.05:0.95 sweep. */
tge_status tge_detection_ap_json(const tge_graph* const* gt_pages,
                                 const tge_graph* const* pred_pages,
                                 size_t n_pages, const double* thresholds,
                                 size_t n_thresholds, char** out);

/* --- Dataset tools ---------------------------------------------------- */

/* Corpus statistics as a JSON report; strict=1 errors on unknown classes. */
tge_status tge_corpus_stats_json(const char* root, int strict, char** out);

/* Cross-page continuation pairs from a full-documents collection, one JSON
 * object per line: {"doc_id":..,"first_page":..,"label":"positive"}. */
tge_status tge_sample_pairs_jsonl(const char* root, char** out);

tge_status tge_verify_multipart(const char* extracted, const char* reference,
                                double threshold, double* distance,
                                int* matched);

/* All contiguous combinations of the given part texts, longest first, as a
 * JSON array of {"start":..,"length":..,"text":..}. */
tge_status tge_part_combinations_json(const char* const* parts, size_t n_parts,
                                      char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TABLEGRID_EVAL_H_ */
