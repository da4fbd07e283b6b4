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

// Command-line front end for table-extraction evaluation. All metric and
// parsing work goes through the tablegrid_eval C API; this binary only does
// argument handling, file discovery, scheduling, and report assembly.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tablegrid_eval.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Handle wrappers and small helpers
// ---------------------------------------------------------------------------

struct GridDeleter {
  void operator()(tge_grid* g) const { tge_grid_free(g); }
};
using GridPtr = std::unique_ptr<tge_grid, GridDeleter>;

struct ReportDeleter {
  void operator()(tge_parse_report* r) const { tge_parse_report_free(r); }
};
using ParseReportPtr = std::unique_ptr<tge_parse_report, ReportDeleter>;

struct MatchDeleter {
  void operator()(tge_set_match* m) const { tge_set_match_free(m); }
};
using MatchPtr = std::unique_ptr<tge_set_match, MatchDeleter>;

struct GraphDeleter {
  void operator()(tge_graph* g) const { tge_graph_free(g); }
};
using GraphPtr = std::unique_ptr<tge_graph, GraphDeleter>;

// Owned C string from the library.
class CString {
 public:
  CString() = default;
  ~CString() { tge_string_free(ptr_); }
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;

  char** out() { return &ptr_; }
  std::string str() const { return ptr_ == nullptr ? std::string() : ptr_; }

 private:
  char* ptr_ = nullptr;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + out_path);
  out << content << "\n";
}

unsigned default_jobs() {
  if (const char* env = std::getenv("TABLEGRID_EVAL_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, n) on `jobs` workers. Workers own disjoint result
// slots, so merging stays in index order and reports are byte-stable across
// parallelism degrees.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const unsigned count = static_cast<unsigned>(
      std::min<std::size_t>(jobs, n));
  workers.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

struct SampleWarning {
  std::string sample;
  json body;
};

void emit_warnings(const std::vector<std::vector<SampleWarning>>& per_sample) {
  for (const auto& list : per_sample) {
    for (const SampleWarning& w : list) {
      json line = w.body;
      line["sample"] = w.sample;
      std::cerr << line.dump() << "\n";
    }
  }
}

void collect_report_warnings(const tge_parse_report* report,
                             const std::string& sample,
                             std::vector<SampleWarning>& sink) {
  const std::size_t n = tge_parse_report_warning_count(report);
  for (std::size_t i = 0; i < n; ++i) {
    CString text;
    if (tge_parse_report_warning(report, i, text.out()) == TGE_OK) {
      sink.push_back({sample, json::parse(text.str(), nullptr, false)});
    }
  }
}

json warning_line(const std::string& code, const std::string& message) {
  json out;
  out["code"] = code;
  out["message"] = message;
  out["location"] = "";
  return out;
}

// ---------------------------------------------------------------------------
// Sample discovery
// ---------------------------------------------------------------------------

struct Sample {
  std::string id;
  fs::path gt_path;
  fs::path pred_path;  // empty when missing
  std::string format;  // resolved per sample: html | span-markdown | grid-json
};

std::string extension_for(const std::string& format) {
  if (format == "html") return ".html";
  if (format == "span-markdown") return ".md";
  if (format == "grid-json") return ".json";
  return "";
}

std::vector<Sample> discover_samples(const fs::path& gt_dir,
                                     const fs::path& pred_dir,
                                     const std::string& format) {
  if (!fs::is_directory(gt_dir)) {
    throw ConfigError("--gt " + gt_dir.string() + " is not a directory");
  }
  if (!fs::is_directory(pred_dir)) {
    throw ConfigError("--pred " + pred_dir.string() + " is not a directory");
  }
  std::vector<Sample> samples;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") {
      continue;
    }
    Sample s;
    s.id = entry.path().stem().string();
    s.gt_path = entry.path();
    if (format == "auto") {
      for (const char* fmt : {"html", "span-markdown", "grid-json"}) {
        const fs::path candidate = pred_dir / (s.id + extension_for(fmt));
        if (fs::exists(candidate)) {
          s.pred_path = candidate;
          s.format = fmt;
          break;
        }
      }
    } else {
      const fs::path candidate = pred_dir / (s.id + extension_for(format));
      if (fs::exists(candidate)) s.pred_path = candidate;
      s.format = format;
    }
    samples.push_back(std::move(s));
  }
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.id < b.id; });
  if (samples.empty()) {
    throw ConfigError("no ground-truth .json samples under " +
                      gt_dir.string());
  }
  return samples;
}

// Parses a prediction file into a report; null on hard failure.
ParseReportPtr parse_prediction(const std::string& bytes,
                                const std::string& format,
                                tge_status* status) {
  tge_parse_report* raw = nullptr;
  if (format == "html") {
    *status = tge_parse_html(bytes.data(), bytes.size(), &raw);
  } else if (format == "span-markdown") {
    *status = tge_parse_span_markdown(bytes.data(), bytes.size(), &raw);
  } else {
    *status = tge_parse_grid_json(bytes.data(), bytes.size(), &raw);
  }
  return ParseReportPtr(raw);
}

// ---------------------------------------------------------------------------
// Shared eval options and report helpers
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string gt_dir;
  std::string pred_dir;
  std::string format = "auto";
  std::string criteria = "top,con";
  std::string out;
  unsigned jobs = default_jobs();
  std::size_t oracle_limit = 4;
  bool oracle_check = false;
  bool text_table = false;
};

std::vector<tge_criterion> parse_criteria(const std::string& spec) {
  std::vector<tge_criterion> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "top") {
      out.push_back(TGE_CRITERION_TOP);
    } else if (item == "con") {
      out.push_back(TGE_CRITERION_CON);
    } else if (!item.empty()) {
      throw ConfigError("unknown criterion \"" + item + "\" (use top,con)");
    }
  }
  if (out.empty()) throw ConfigError("no criterion selected");
  return out;
}

const char* criterion_key(tge_criterion c) {
  return c == TGE_CRITERION_TOP ? "grits_top" : "grits_con";
}

const char* acc_key(tge_criterion c) {
  return c == TGE_CRITERION_TOP ? "acc_top" : "acc_con";
}

json grits_to_json(const tge_grits_result& r) {
  json out;
  out["tp"] = r.tp;
  out["score"] = r.score;
  out["size_gt"] = r.size_gt;
  out["size_pred"] = r.size_pred;
  return out;
}

// Pins the metric definitions a report was produced under.
json metric_config() {
  json out;
  out["cell_similarity_con"] = "normalized character LCS";
  out["cell_similarity_top"] = "relative-footprint IoU";
  out["alignment"] = "factored columns-then-rows, single pass";
  return out;
}

json aggregate_block(const std::vector<tge_grits_result>& mean_results,
                     const std::vector<tge_grits_result>& pseudo_results) {
  json block;
  if (mean_results.empty()) {
    block["mean"] = nullptr;
  } else {
    tge_aggregate_score mean{};
    if (tge_aggregate(mean_results.data(), mean_results.size(), TGE_AGG_MEAN,
                      &mean) != TGE_OK) {
      throw std::runtime_error(tge_last_error());
    }
    block["mean"] = mean.f1;
  }
  if (pseudo_results.empty()) {
    block["pseudo_f1"] = nullptr;
  } else {
    tge_aggregate_score f1{};
    if (tge_aggregate(pseudo_results.data(), pseudo_results.size(),
                      TGE_AGG_PSEUDO_F1, &f1) != TGE_OK) {
      throw std::runtime_error(tge_last_error());
    }
    json pf1;
    pf1["p"] = f1.precision;
    pf1["r"] = f1.recall;
    pf1["f1"] = f1.f1;
    pf1["n_gt_cells"] = f1.n_gt_cells;
    pf1["n_pred_cells"] = f1.n_pred_cells;
    block["pseudo_f1"] = std::move(pf1);
  }
  return block;
}

void print_metric_table(const std::string& run_name,
                        const std::vector<std::string>& columns,
                        const std::vector<std::string>& values) {
  std::vector<std::size_t> widths;
  widths.push_back(std::max<std::size_t>(run_name.size(), 3));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    widths.push_back(std::max(columns[i].size(), values[i].size()));
  }
  const auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  std::string header = "| " + pad("Run", widths[0]) + " |";
  std::string row = "| " + pad(run_name, widths[0]) + " |";
  std::string rule = "|-" + std::string(widths[0], '-') + "-|";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    header += " " + pad(columns[i], widths[i + 1]) + " |";
    row += " " + pad(values[i], widths[i + 1]) + " |";
    rule += "-" + std::string(widths[i + 1], '-') + "-|";
  }
  std::cout << header << "\n" << rule << "\n" << row << "\n";
}

std::string format_score(const json& v) {
  if (v.is_null()) return "n/a";
  std::ostringstream out;
  out.precision(4);
  out << std::fixed << v.get<double>();
  return out.str();
}

// ---------------------------------------------------------------------------
// eval-tsr: one ground-truth table against one prediction per sample
// ---------------------------------------------------------------------------

struct TsrRecord {
  json sample_json;
  bool failed = false;
  bool gt_error = false;
  std::map<tge_criterion, tge_grits_result> results;
  std::map<tge_criterion, bool> acc;
  std::vector<SampleWarning> warnings;
};

int run_eval_tsr(const EvalOptions& opt) {
  const std::vector<tge_criterion> criteria = parse_criteria(opt.criteria);
  const std::vector<Sample> samples =
      discover_samples(opt.gt_dir, opt.pred_dir, opt.format);

  std::vector<TsrRecord> records(samples.size());
  parallel_for(samples.size(), opt.jobs, [&](std::size_t i) {
    const Sample& sample = samples[i];
    TsrRecord& rec = records[i];
    rec.sample_json["id"] = sample.id;
    try {
      const std::string gt_bytes = read_file(sample.gt_path);
      tge_grid* gt_raw = nullptr;
      if (tge_grid_from_json(gt_bytes.data(), gt_bytes.size(), &gt_raw) !=
          TGE_OK) {
        rec.gt_error = true;
        rec.warnings.push_back(
            {sample.id,
             warning_line("GroundTruthError", tge_last_error())});
        return;
      }
      GridPtr gt(gt_raw);

      GridPtr pred;
      std::size_t n_pred_tables = 0;
      if (sample.pred_path.empty()) {
        rec.failed = true;
        rec.warnings.push_back(
            {sample.id, warning_line("MissingPrediction",
                                     "no prediction file; scored as empty")});
      } else {
        const std::string pred_bytes = read_file(sample.pred_path);
        tge_status status = TGE_OK;
        ParseReportPtr report =
            parse_prediction(pred_bytes, sample.format, &status);
        if (status != TGE_OK) {
          rec.failed = true;
          rec.warnings.push_back(
              {sample.id,
               warning_line("UnparsablePrediction", tge_last_error())});
        } else {
          collect_report_warnings(report.get(), sample.id, rec.warnings);
          n_pred_tables = tge_parse_report_grid_count(report.get());
          if (n_pred_tables == 0) {
            rec.failed = true;
          } else {
            if (n_pred_tables > 1) {
              rec.warnings.push_back(
                  {sample.id,
                   warning_line("ExtraTableIgnored",
                                "prediction has " +
                                    std::to_string(n_pred_tables) +
                                    " tables; scoring the first")});
            }
            tge_grid* clone = nullptr;
            if (tge_grid_clone(tge_parse_report_grid(report.get(), 0),
                               &clone) == TGE_OK) {
              pred.reset(clone);
            }
          }
        }
      }

      rec.sample_json["n_pred_tables"] = n_pred_tables;
      for (const tge_criterion crit : criteria) {
        tge_grits_result r{};
        if (tge_grits(gt.get(), pred.get(), crit, &r) != TGE_OK) {
          throw std::runtime_error(tge_last_error());
        }
        rec.results[crit] = r;
        rec.sample_json[criterion_key(crit)] = grits_to_json(r);
        int exact = 0;
        if (pred != nullptr) {
          tge_grid_exact_match(gt.get(), pred.get(), crit, &exact);
        }
        rec.acc[crit] = exact != 0;
        rec.sample_json[acc_key(crit)] = exact != 0;

        if (opt.oracle_check) {
          const uint64_t max_dim =
              std::max({tge_grid_rows(gt.get()), tge_grid_cols(gt.get()),
                        tge_grid_rows(pred.get()), tge_grid_cols(pred.get())});
          const std::string gap_key =
              std::string("oracle_gap_") +
              (crit == TGE_CRITERION_TOP ? "top" : "con");
          if (max_dim <= opt.oracle_limit) {
            tge_grits_result exact_r{};
            if (tge_grits_exact(gt.get(), pred.get(), crit, opt.oracle_limit,
                                &exact_r) == TGE_OK) {
              rec.sample_json[gap_key] = exact_r.tp - r.tp;
            }
          } else {
            rec.sample_json[gap_key] = nullptr;
          }
        }
      }
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.warnings.push_back(
          {sample.id, warning_line("SampleError", e.what())});
    }
    rec.sample_json["failed"] = rec.failed;
  });

  emit_warnings([&] {
    std::vector<std::vector<SampleWarning>> all;
    for (const TsrRecord& rec : records) all.push_back(rec.warnings);
    return all;
  }());

  json report;
  report["command"] = "eval-tsr";
  report["metrics"] = metric_config();
  report["criteria"] = json::parse(R"([])");
  for (const tge_criterion c : criteria) {
    report["criteria"].push_back(c == TGE_CRITERION_TOP ? "top" : "con");
  }
  json sample_list = json::array();
  std::size_t n_failed = 0, n_gt_errors = 0;
  std::map<tge_criterion, std::vector<tge_grits_result>> per_criterion;
  std::map<tge_criterion, std::size_t> acc_hits;
  double max_gap = 0.0;
  bool any_gap = false;
  for (const TsrRecord& rec : records) {
    sample_list.push_back(rec.sample_json);
    if (rec.gt_error) {
      ++n_gt_errors;
      continue;
    }
    if (rec.failed) ++n_failed;
    for (const auto& [crit, r] : rec.results) {
      per_criterion[crit].push_back(r);
      if (rec.acc.at(crit)) ++acc_hits[crit];
    }
    for (const auto& [key, value] : rec.sample_json.items()) {
      if (key.rfind("oracle_gap_", 0) == 0 && value.is_number()) {
        max_gap = std::max(max_gap, value.get<double>());
        any_gap = true;
      }
    }
  }
  report["samples"] = std::move(sample_list);

  json corpus;
  for (const tge_criterion crit : criteria) {
    const auto& results = per_criterion[crit];
    corpus[criterion_key(crit)] = aggregate_block(results, results);
    corpus[acc_key(crit)] =
        results.empty() ? json(nullptr)
                        : json(static_cast<double>(acc_hits[crit]) /
                               static_cast<double>(results.size()));
  }
  corpus["n_samples"] = records.size();
  corpus["n_failed"] = n_failed;
  corpus["n_gt_errors"] = n_gt_errors;
  if (opt.oracle_check) {
    corpus["max_oracle_gap"] = any_gap ? json(max_gap) : json(nullptr);
  }
  report["corpus"] = std::move(corpus);

  write_output(opt.out, report.dump(2));
  if (opt.text_table) {
    std::vector<std::string> cols, vals;
    for (const tge_criterion c : criteria) {
      cols.push_back(c == TGE_CRITERION_TOP ? "GriTS_Top" : "GriTS_Con");
      vals.push_back(
          format_score(report["corpus"][criterion_key(c)]["mean"]));
    }
    for (const tge_criterion c : criteria) {
      cols.push_back(c == TGE_CRITERION_TOP ? "Acc_Top" : "Acc_Con");
      vals.push_back(format_score(report["corpus"][acc_key(c)]));
    }
    print_metric_table(fs::path(opt.pred_dir).filename().string(), cols, vals);
  }
  return n_failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// eval-page / eval-doc: table sets matched per page or document
// ---------------------------------------------------------------------------

struct SetRecord {
  json sample_json;
  bool failed = false;
  bool gt_error = false;
  std::map<tge_criterion, std::vector<tge_grits_result>> per_gt;
  std::map<tge_criterion, std::vector<bool>> acc;
  std::map<tge_criterion, tge_grits_result> extra_pred;  // unmatched cells
  std::vector<SampleWarning> warnings;
};

int run_eval_set(const EvalOptions& opt, const std::string& command) {
  const std::vector<tge_criterion> criteria = parse_criteria(opt.criteria);
  const std::vector<Sample> samples =
      discover_samples(opt.gt_dir, opt.pred_dir, opt.format);

  std::vector<SetRecord> records(samples.size());
  parallel_for(samples.size(), opt.jobs, [&](std::size_t i) {
    const Sample& sample = samples[i];
    SetRecord& rec = records[i];
    rec.sample_json["id"] = sample.id;
    try {
      // Ground truth: a JSON array of grids (or a single grid object).
      const std::string gt_bytes = read_file(sample.gt_path);
      tge_parse_report* gt_raw = nullptr;
      if (tge_parse_grid_json(gt_bytes.data(), gt_bytes.size(), &gt_raw) !=
          TGE_OK) {
        rec.gt_error = true;
        rec.warnings.push_back(
            {sample.id, warning_line("GroundTruthError", tge_last_error())});
        return;
      }
      ParseReportPtr gt_report(gt_raw);
      if (tge_parse_report_repaired(gt_report.get()) != 0) {
        rec.gt_error = true;
        rec.warnings.push_back(
            {sample.id,
             warning_line("GroundTruthError",
                          "ground-truth file has invalid grid entries")});
        return;
      }
      std::vector<const tge_grid*> gt_grids;
      for (std::size_t k = 0;
           k < tge_parse_report_grid_count(gt_report.get()); ++k) {
        gt_grids.push_back(tge_parse_report_grid(gt_report.get(), k));
      }

      // Prediction set.
      ParseReportPtr pred_report;
      if (sample.pred_path.empty()) {
        rec.failed = true;
        rec.warnings.push_back(
            {sample.id, warning_line("MissingPrediction",
                                     "no prediction file; scored as empty")});
      } else {
        const std::string pred_bytes = read_file(sample.pred_path);
        tge_status status = TGE_OK;
        ParseReportPtr parsed =
            parse_prediction(pred_bytes, sample.format, &status);
        if (status != TGE_OK) {
          rec.failed = true;
          rec.warnings.push_back(
              {sample.id,
               warning_line("UnparsablePrediction", tge_last_error())});
        } else {
          collect_report_warnings(parsed.get(), sample.id, rec.warnings);
          pred_report = std::move(parsed);
        }
      }
      std::vector<const tge_grid*> pred_grids;
      if (pred_report != nullptr) {
        for (std::size_t k = 0;
             k < tge_parse_report_grid_count(pred_report.get()); ++k) {
          pred_grids.push_back(tge_parse_report_grid(pred_report.get(), k));
        }
      }

      uint64_t total_pred_cells = 0;
      for (const tge_grid* g : pred_grids) {
        total_pred_cells += tge_grid_rows(g) * tge_grid_cols(g);
      }
      rec.sample_json["n_gt_tables"] = gt_grids.size();
      rec.sample_json["n_pred_tables"] = pred_grids.size();

      json per_gt_json = json::array();
      for (std::size_t g = 0; g < gt_grids.size(); ++g) {
        json entry;
        entry["gt_index"] = g;
        per_gt_json.push_back(std::move(entry));
      }

      for (const tge_criterion crit : criteria) {
        // Touch the entries so pages without ground-truth tables still
        // contribute their unmatched prediction cells to the aggregates.
        rec.per_gt[crit];
        rec.acc[crit];
        tge_set_match* match_raw = nullptr;
        if (tge_match_table_sets(gt_grids.data(), gt_grids.size(),
                                 pred_grids.data(), pred_grids.size(), crit,
                                 &match_raw) != TGE_OK) {
          throw std::runtime_error(tge_last_error());
        }
        MatchPtr match(match_raw);

        std::vector<std::ptrdiff_t> gt_to_pred(gt_grids.size(), -1);
        for (std::size_t k = 0; k < tge_set_match_pair_count(match.get());
             ++k) {
          std::size_t gi = 0, pj = 0;
          tge_set_match_pair(match.get(), k, &gi, &pj);
          gt_to_pred[gi] = static_cast<std::ptrdiff_t>(pj);
        }

        uint64_t matched_pred_cells = 0;
        for (std::size_t g = 0; g < gt_grids.size(); ++g) {
          tge_grits_result r{};
          tge_set_match_gt_result(match.get(), g, &r);
          rec.per_gt[crit].push_back(r);
          matched_pred_cells += r.size_pred;

          int exact = 0;
          if (gt_to_pred[g] >= 0) {
            tge_grid_exact_match(
                gt_grids[g],
                pred_grids[static_cast<std::size_t>(gt_to_pred[g])], crit,
                &exact);
          }
          rec.acc[crit].push_back(exact != 0);

          json& entry = per_gt_json[g];
          json cell = grits_to_json(r);
          cell["pred_index"] = gt_to_pred[g] >= 0
                                   ? json(static_cast<std::size_t>(
                                         gt_to_pred[g]))
                                   : json(nullptr);
          entry[criterion_key(crit)] = std::move(cell);
          entry[acc_key(crit)] = exact != 0;
        }

        // Cells of predicted tables left unmatched: they count against
        // pseudo-F1 precision but not against per-table means.
        tge_grits_result extra{};
        extra.size_pred = total_pred_cells - matched_pred_cells;
        rec.extra_pred[crit] = extra;
        rec.sample_json[std::string("extra_pred_cells_") +
                        (crit == TGE_CRITERION_TOP ? "top" : "con")] =
            extra.size_pred;
      }
      rec.sample_json["per_gt"] = std::move(per_gt_json);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.warnings.push_back(
          {sample.id, warning_line("SampleError", e.what())});
    }
    rec.sample_json["failed"] = rec.failed;
  });

  emit_warnings([&] {
    std::vector<std::vector<SampleWarning>> all;
    for (const SetRecord& rec : records) all.push_back(rec.warnings);
    return all;
  }());

  json report;
  report["command"] = command;
  report["metrics"] = metric_config();
  json sample_list = json::array();
  std::size_t n_failed = 0, n_gt_errors = 0;
  std::map<tge_criterion, std::vector<tge_grits_result>> mean_results;
  std::map<tge_criterion, std::vector<tge_grits_result>> pseudo_results;
  std::map<tge_criterion, std::size_t> acc_hits, acc_total;
  for (const SetRecord& rec : records) {
    sample_list.push_back(rec.sample_json);
    if (rec.gt_error) {
      ++n_gt_errors;
      continue;
    }
    if (rec.failed) ++n_failed;
    for (const tge_criterion crit : criteria) {
      const auto it = rec.per_gt.find(crit);
      if (it == rec.per_gt.end()) continue;
      for (const tge_grits_result& r : it->second) {
        mean_results[crit].push_back(r);
        pseudo_results[crit].push_back(r);
      }
      const tge_grits_result& extra = rec.extra_pred.at(crit);
      if (extra.size_pred > 0) pseudo_results[crit].push_back(extra);
      for (const bool hit : rec.acc.at(crit)) {
        ++acc_total[crit];
        if (hit) ++acc_hits[crit];
      }
    }
  }
  report["samples"] = std::move(sample_list);

  json corpus;
  for (const tge_criterion crit : criteria) {
    corpus[criterion_key(crit)] =
        aggregate_block(mean_results[crit], pseudo_results[crit]);
    corpus[acc_key(crit)] =
        acc_total[crit] == 0
            ? json(nullptr)
            : json(static_cast<double>(acc_hits[crit]) /
                   static_cast<double>(acc_total[crit]));
  }
  corpus["n_samples"] = records.size();
  corpus["n_failed"] = n_failed;
  corpus["n_gt_errors"] = n_gt_errors;
  report["corpus"] = std::move(corpus);

  write_output(opt.out, report.dump(2));
  if (opt.text_table) {
    std::vector<std::string> cols, vals;
    for (const tge_criterion c : criteria) {
      cols.push_back(c == TGE_CRITERION_TOP ? "GriTS_Top" : "GriTS_Con");
      vals.push_back(format_score(report["corpus"][criterion_key(c)]["mean"]));
    }
    for (const tge_criterion c : criteria) {
      cols.push_back(c == TGE_CRITERION_TOP ? "Acc_Top" : "Acc_Con");
      vals.push_back(format_score(report["corpus"][acc_key(c)]));
    }
    print_metric_table(fs::path(opt.pred_dir).filename().string(), cols, vals);
  }
  return n_failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// eval-graph: relation-edge F1 and detection AP
// ---------------------------------------------------------------------------

struct GraphRecord {
  json sample_json;
  bool failed = false;
  bool gt_error = false;
  GraphPtr gt;
  GraphPtr pred;
  tge_edge_f1_result edges{};
  std::vector<SampleWarning> warnings;
};

GraphPtr empty_graph() {
  static const std::string kEmpty = R"({"nodes":[],"edges":[]})";
  tge_graph* raw = nullptr;
  tge_graph_from_json(kEmpty.data(), kEmpty.size(), 1, &raw);
  return GraphPtr(raw);
}

int run_eval_graph(const EvalOptions& opt, double iou_threshold) {
  if (!(iou_threshold > 0.0) || iou_threshold > 1.0) {
    throw ConfigError("--iou must be in (0, 1]");
  }
  if (!fs::is_directory(opt.gt_dir) || !fs::is_directory(opt.pred_dir)) {
    throw ConfigError("--gt and --pred must be directories");
  }
  std::vector<std::pair<std::string, fs::path>> ids;
  for (const auto& entry : fs::directory_iterator(opt.gt_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      ids.emplace_back(entry.path().stem().string(), entry.path());
    }
  }
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) {
    throw ConfigError("no ground-truth .json graphs under " + opt.gt_dir);
  }

  std::vector<GraphRecord> records(ids.size());
  parallel_for(ids.size(), opt.jobs, [&](std::size_t i) {
    GraphRecord& rec = records[i];
    const std::string& id = ids[i].first;
    rec.sample_json["id"] = id;
    try {
      const std::string gt_bytes = read_file(ids[i].second);
      tge_graph* gt_raw = nullptr;
      if (tge_graph_from_json(gt_bytes.data(), gt_bytes.size(), 1, &gt_raw) !=
          TGE_OK) {
        rec.gt_error = true;
        rec.warnings.push_back(
            {id, warning_line("GroundTruthError", tge_last_error())});
        return;
      }
      rec.gt.reset(gt_raw);

      const fs::path pred_path = fs::path(opt.pred_dir) / (id + ".json");
      if (!fs::exists(pred_path)) {
        rec.failed = true;
        rec.pred = empty_graph();
        rec.warnings.push_back(
            {id, warning_line("MissingPrediction",
                              "no prediction file; scored as empty")});
      } else {
        const std::string pred_bytes = read_file(pred_path);
        tge_graph* pred_raw = nullptr;
        // Lenient: predicted graphs may violate the hierarchy rule and are
        // still scored (those edges just cannot match ground truth).
        if (tge_graph_from_json(pred_bytes.data(), pred_bytes.size(), 0,
                                &pred_raw) != TGE_OK) {
          rec.failed = true;
          rec.pred = empty_graph();
          rec.warnings.push_back(
              {id, warning_line("UnparsablePrediction", tge_last_error())});
        } else {
          rec.pred.reset(pred_raw);
        }
      }

      if (tge_edge_f1(rec.gt.get(), rec.pred.get(), iou_threshold,
                      &rec.edges) != TGE_OK) {
        throw std::runtime_error(tge_last_error());
      }
      rec.sample_json["edge_tp"] = rec.edges.tp;
      rec.sample_json["edge_fp"] = rec.edges.fp;
      rec.sample_json["edge_fn"] = rec.edges.fn;
      rec.sample_json["edge_f1"] = rec.edges.f1;
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.warnings.push_back({id, warning_line("SampleError", e.what())});
    }
    rec.sample_json["failed"] = rec.failed;
  });

  emit_warnings([&] {
    std::vector<std::vector<SampleWarning>> all;
    for (const GraphRecord& rec : records) all.push_back(rec.warnings);
    return all;
  }());

  uint64_t tp = 0, n_gt = 0, n_pred = 0;
  std::size_t n_failed = 0, n_gt_errors = 0;
  std::vector<const tge_graph*> gt_pages, pred_pages;
  json sample_list = json::array();
  for (const GraphRecord& rec : records) {
    sample_list.push_back(rec.sample_json);
    if (rec.gt_error) {
      ++n_gt_errors;
      continue;
    }
    if (rec.failed) ++n_failed;
    tp += rec.edges.tp;
    n_gt += rec.edges.n_gt_edges;
    n_pred += rec.edges.n_pred_edges;
    gt_pages.push_back(rec.gt.get());
    pred_pages.push_back(rec.pred.get());
  }

  json corpus;
  json edge_block;
  double precision = 1.0, recall = 1.0;
  if (n_gt > 0 || n_pred > 0) {
    precision = n_pred > 0 ? static_cast<double>(tp) /
                                 static_cast<double>(n_pred)
                           : 0.0;
    recall = n_gt > 0 ? static_cast<double>(tp) / static_cast<double>(n_gt)
                      : 0.0;
  }
  edge_block["tp"] = tp;
  edge_block["n_gt_edges"] = n_gt;
  edge_block["n_pred_edges"] = n_pred;
  edge_block["precision"] = precision;
  edge_block["recall"] = recall;
  edge_block["f1"] = (precision + recall) > 0.0
                         ? 2.0 * precision * recall / (precision + recall)
                         : 0.0;
  edge_block["iou_threshold"] = iou_threshold;
  corpus["edge_f1"] = std::move(edge_block);

  CString detection;
  if (tge_detection_ap_json(gt_pages.data(), pred_pages.data(),
                            gt_pages.size(), nullptr, 0, detection.out()) !=
      TGE_OK) {
    throw std::runtime_error(tge_last_error());
  }
  json det = json::parse(detection.str());
  det["ap50"] = det["mean_per_threshold"].empty()
                    ? json(nullptr)
                    : det["mean_per_threshold"][0];
  det["ap75"] = det["mean_per_threshold"].size() > 5
                    ? det["mean_per_threshold"][5]
                    : json(nullptr);
  det["ap"] = det["mean"];
  corpus["detection"] = std::move(det);
  corpus["n_samples"] = records.size();
  corpus["n_failed"] = n_failed;
  corpus["n_gt_errors"] = n_gt_errors;

  json report;
  report["command"] = "eval-graph";
  report["samples"] = std::move(sample_list);
  report["corpus"] = std::move(corpus);
  write_output(opt.out, report.dump(2));

  if (opt.text_table) {
    print_metric_table(
        fs::path(opt.pred_dir).filename().string(),
        {"AP50", "AP75", "AP", "Edge F1"},
        {format_score(report["corpus"]["detection"]["ap50"]),
         format_score(report["corpus"]["detection"]["ap75"]),
         format_score(report["corpus"]["detection"]["ap"]),
         format_score(report["corpus"]["edge_f1"]["f1"])});
  }
  return n_failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// stats / verify-multipart / sample-pairs / score-pairs
// ---------------------------------------------------------------------------

int run_stats(const std::string& root, bool strict, const std::string& out) {
  CString result;
  if (tge_corpus_stats_json(root.c_str(), strict ? 1 : 0, result.out()) !=
      TGE_OK) {
    throw ConfigError(tge_last_error());
  }
  write_output(out, json::parse(result.str()).dump(2));
  return 0;
}

int run_sample_pairs(const std::string& root, const std::string& out) {
  CString result;
  if (tge_sample_pairs_jsonl(root.c_str(), result.out()) != TGE_OK) {
    throw ConfigError(tge_last_error());
  }
  std::string body = result.str();
  if (!body.empty() && body.back() == '\n') body.pop_back();
  write_output(out, body);
  return 0;
}

int run_verify_multipart(const std::string& reference_path,
                         const std::string& extracted_path,
                         const std::vector<std::string>& part_paths,
                         double threshold, const std::string& out) {
  const std::string reference = read_file(reference_path);
  json result;
  result["threshold"] = threshold;

  const auto verdict_json = [&](const std::string& text) {
    double distance = 0.0;
    int matched = 0;
    if (tge_verify_multipart(text.c_str(), reference.c_str(), threshold,
                             &distance, &matched) != TGE_OK) {
      throw ConfigError(tge_last_error());
    }
    json v;
    v["distance"] = distance;
    v["matched"] = matched != 0;
    return v;
  };

  if (!extracted_path.empty()) {
    result["verdict"] = verdict_json(read_file(extracted_path));
  } else {
    std::vector<std::string> parts;
    parts.reserve(part_paths.size());
    for (const std::string& p : part_paths) parts.push_back(read_file(p));
    std::vector<const char*> raw;
    raw.reserve(parts.size());
    for (const std::string& p : parts) raw.push_back(p.c_str());
    CString combos;
    if (tge_part_combinations_json(raw.data(), raw.size(), combos.out()) !=
        TGE_OK) {
      throw ConfigError(tge_last_error());
    }
    json candidates = json::array();
    json best;
    for (const json& combo : json::parse(combos.str())) {
      json v = verdict_json(combo["text"].get<std::string>());
      v["start"] = combo["start"];
      v["length"] = combo["length"];
      if (best.is_null() ||
          v["distance"].get<double>() < best["distance"].get<double>()) {
        best = v;
      }
      candidates.push_back(std::move(v));
    }
    result["candidates"] = std::move(candidates);
    result["best"] = std::move(best);
  }
  write_output(out, result.dump(2));
  return 0;
}

int run_score_pairs(const std::string& gold_path, const std::string& pred_path,
                    const std::string& out) {
  const auto read_labels = [](const std::string& path) {
    std::vector<std::pair<std::string, int>> labels;  // key -> positive
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json rec = json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.contains("label")) {
        throw ConfigError("bad pair line: " + line);
      }
      std::string key;
      if (rec.contains("doc_id") && rec.contains("first_page")) {
        key = rec["doc_id"].get<std::string>() + "#" +
              std::to_string(rec["first_page"].get<std::size_t>());
      }
      labels.emplace_back(key,
                          rec["label"].get<std::string>() == "positive" ? 1
                                                                        : 0);
    }
    return labels;
  };
  const auto gold = read_labels(gold_path);
  const auto pred = read_labels(pred_path);
  if (gold.size() != pred.size()) {
    throw ConfigError("gold and predicted pair files differ in length");
  }
  std::vector<int> g(gold.size()), p(pred.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!gold[i].first.empty() && !pred[i].first.empty() &&
        gold[i].first != pred[i].first) {
      throw ConfigError("pair key mismatch at line " + std::to_string(i + 1) +
                        ": " + gold[i].first + " vs " + pred[i].first);
    }
    g[i] = gold[i].second;
    p[i] = pred[i].second;
  }
  double recall = 0.0, precision = 0.0, f1 = 0.0;
  if (tge_binary_prf(g.data(), p.data(), g.size(), &recall, &precision, &f1) !=
      TGE_OK) {
    throw ConfigError(tge_last_error());
  }
  json result;
  result["n_pairs"] = g.size();
  result["recall"] = recall;
  result["precision"] = precision;
  result["f1"] = f1;
  write_output(out, result.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Table-extraction evaluation toolkit"};
  app.require_subcommand(1);

  EvalOptions tsr, page, doc, graph;
  double iou_threshold = 0.8;

  const auto add_eval_flags = [](CLI::App* cmd, EvalOptions& opt,
                                 bool with_format) {
    cmd->add_option("--gt", opt.gt_dir, "Ground-truth directory")->required();
    cmd->add_option("--pred", opt.pred_dir, "Prediction directory")
        ->required();
    if (with_format) {
      cmd->add_option("--format", opt.format,
                      "Prediction format: html|span-markdown|grid-json|auto");
      cmd->add_option("--criterion", opt.criteria,
                      "Comma-separated criteria (top,con)");
    }
    cmd->add_option("--jobs", opt.jobs,
                    "Worker threads (default: TABLEGRID_EVAL_JOBS or all "
                    "cores)");
    cmd->add_option("--out", opt.out, "Report path (default: stdout)");
    cmd->add_flag("--table", opt.text_table,
                  "Also print an aligned text metric table");
  };

  CLI::App* tsr_cmd =
      app.add_subcommand("eval-tsr", "Cropped-table structure recognition");
  add_eval_flags(tsr_cmd, tsr, true);
  tsr_cmd->add_flag("--oracle-check", tsr.oracle_check,
                    "Report heuristic-vs-exact alignment gaps");
  tsr_cmd->add_option("--oracle-limit", tsr.oracle_limit,
                      "Max grid dimension for the exact oracle");

  CLI::App* page_cmd =
      app.add_subcommand("eval-page", "Page-level table extraction");
  add_eval_flags(page_cmd, page, true);

  CLI::App* doc_cmd =
      app.add_subcommand("eval-doc", "Document-level table extraction");
  add_eval_flags(doc_cmd, doc, true);

  CLI::App* graph_cmd =
      app.add_subcommand("eval-graph", "Page-object graph metrics");
  add_eval_flags(graph_cmd, graph, false);
  graph_cmd->add_option("--iou", iou_threshold,
                        "Edge-match IoU threshold (default 0.8)");

  std::string stats_root, stats_out;
  bool strict_classes = false;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("root", stats_root, "Collection root")->required();
  stats_cmd->add_flag("--strict-classes", strict_classes,
                      "Error on unknown class names");
  stats_cmd->add_option("--out", stats_out, "Report path (default: stdout)");

  std::string verify_reference, verify_extracted, verify_out;
  std::vector<std::string> verify_parts;
  double verify_threshold = 0.02;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify-multipart", "Verify multi-part table text against a reference");
  verify_cmd->add_option("--reference", verify_reference, "Reference text file")
      ->required();
  verify_cmd->add_option("--extracted", verify_extracted,
                         "Extracted text file");
  verify_cmd->add_option("--parts", verify_parts,
                         "Detected part text files, in reading order");
  verify_cmd->add_option("--threshold", verify_threshold,
                         "Normalized edit-distance threshold (default 0.02)");
  verify_cmd->add_option("--out", verify_out, "Report path (default: stdout)");

  std::string pairs_root, pairs_out;
  CLI::App* pairs_cmd = app.add_subcommand(
      "sample-pairs", "Emit cross-page continuation pairs from a corpus");
  pairs_cmd->add_option("root", pairs_root, "Full-documents collection root")
      ->required();
  pairs_cmd->add_option("--out", pairs_out, "Output path (default: stdout)");

  std::string score_gold, score_pred, score_out;
  CLI::App* score_cmd = app.add_subcommand(
      "score-pairs", "Binary recall/precision/F1 over pair labels");
  score_cmd->add_option("--gold", score_gold, "Gold pair JSONL")->required();
  score_cmd->add_option("--pred", score_pred, "Predicted pair JSONL")
      ->required();
  score_cmd->add_option("--out", score_out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (tsr_cmd->parsed()) return run_eval_tsr(tsr);
    if (page_cmd->parsed()) return run_eval_set(page, "eval-page");
    if (doc_cmd->parsed()) return run_eval_set(doc, "eval-doc");
    if (graph_cmd->parsed()) return run_eval_graph(graph, iou_threshold);
    if (stats_cmd->parsed()) {
      return run_stats(stats_root, strict_classes, stats_out);
    }
    if (verify_cmd->parsed()) {
      if (verify_extracted.empty() == verify_parts.empty()) {
        throw ConfigError(
            "verify-multipart needs exactly one of --extracted or --parts");
      }
      return run_verify_multipart(verify_reference, verify_extracted,
                                  verify_parts, verify_threshold, verify_out);
    }
    if (pairs_cmd->parsed()) return run_sample_pairs(pairs_root, pairs_out);
    if (score_cmd->parsed()) {
      return run_score_pairs(score_gold, score_pred, score_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
