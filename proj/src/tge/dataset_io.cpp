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

#include "tge/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "tge/grid_json.hpp"

namespace tge {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kSplits[] = {"train", "val", "test"};

json parse_json(std::string_view bytes, const char* what) {
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) {
    fail(ErrorCode::SchemaViolation,
         std::string(what) + " is not valid JSON");
  }
  return doc;
}

BBox bbox_from_json(const json& arr, const char* what) {
  if (!arr.is_array() || arr.size() != 4) {
    fail(ErrorCode::SchemaViolation,
         std::string(what) + " bbox must be a 4-element array");
  }
  for (const json& v : arr) {
    if (!v.is_number()) {
      fail(ErrorCode::SchemaViolation,
           std::string(what) + " bbox entries must be numbers");
    }
  }
  BBox box{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
           arr[3].get<double>()};
  if (box.x_min > box.x_max || box.y_min > box.y_max) {
    fail(ErrorCode::SchemaViolation,
         std::string(what) + " bbox has negative extent");
  }
  return box;
}

json bbox_to_json(const BBox& box) {
  return json::array({box.x_min, box.y_min, box.x_max, box.y_max});
}

}  // namespace

std::size_t MultiPartTable::pages_spanned() const {
  std::set<std::size_t> pages;
  for (const TablePart& part : parts) pages.insert(part.page_index);
  return pages.size();
}

PageAnnotation read_voc_annotation(std::string_view xml_bytes,
                                   ClassNameMode mode,
                                   std::vector<Warning>* warnings) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream stream{std::string(xml_bytes)};
    pt::read_xml(stream, tree);
  } catch (const pt::xml_parser_error& e) {
    fail(ErrorCode::XmlMalformed, std::string("VOC XML: ") + e.what());
  }

  const auto annotation = tree.get_child_optional("annotation");
  if (!annotation) {
    fail(ErrorCode::XmlMalformed, "missing <annotation> root element");
  }

  PageAnnotation page;
  if (const auto filename = annotation->get_optional<std::string>("filename")) {
    page.image_id = fs::path(*filename).stem().string();
  }
  page.page_width = annotation->get<double>("size.width", 0.0);
  page.page_height = annotation->get<double>("size.height", 0.0);

  for (const auto& [key, node] : *annotation) {
    if (key != "object") continue;
    const std::string name = node.get<std::string>("name", "");
    PageObject obj;
    try {
      obj.class_label = object_class_from_name(name);
    } catch (const Error&) {
      if (mode == ClassNameMode::Strict) throw;
      if (warnings != nullptr) {
        warnings->push_back({WarnCode::UnknownClassName,
                             "object with unknown class \"" + name +
                                 "\" skipped",
                             page.image_id});
      }
      continue;
    }
    const auto bnd = node.get_child_optional("bndbox");
    if (!bnd) {
      fail(ErrorCode::XmlMalformed, "object without <bndbox>");
    }
    obj.bbox.x_min = bnd->get<double>("xmin", 0.0);
    obj.bbox.y_min = bnd->get<double>("ymin", 0.0);
    obj.bbox.x_max = bnd->get<double>("xmax", 0.0);
    obj.bbox.y_max = bnd->get<double>("ymax", 0.0);
    page.objects.push_back(obj);
  }
  return page;
}

std::vector<Word> read_words_json(std::string_view bytes) {
  const json doc = parse_json(bytes, "words file");
  if (!doc.is_object() || !doc.contains("words") || !doc["words"].is_array()) {
    fail(ErrorCode::SchemaViolation, "words file must carry a \"words\" array");
  }
  std::vector<Word> out;
  for (const json& w : doc["words"]) {
    if (!w.is_object() || !w.contains("text") || !w["text"].is_string() ||
        !w.contains("bbox")) {
      fail(ErrorCode::SchemaViolation,
           "word records need \"text\" and \"bbox\"");
    }
    out.push_back({w["text"].get<std::string>(),
                   bbox_from_json(w["bbox"], "word")});
  }
  return out;
}

std::string write_words_json(std::span<const Word> words) {
  json arr = json::array();
  for (const Word& w : words) {
    json rec;
    rec["text"] = w.text;
    rec["bbox"] = bbox_to_json(w.bbox);
    arr.push_back(std::move(rec));
  }
  json doc;
  doc["words"] = std::move(arr);
  return doc.dump();
}

RelationMap read_relations_json(std::string_view bytes) {
  const json doc = parse_json(bytes, "relations file");
  if (!doc.is_object() || !doc.contains("relations") ||
      !doc["relations"].is_object()) {
    fail(ErrorCode::SchemaViolation,
         "relations file must carry a \"relations\" object");
  }
  RelationMap out;
  for (const auto& [sample, edges] : doc["relations"].items()) {
    if (!edges.is_array()) {
      fail(ErrorCode::SchemaViolation, "relations entries must be arrays");
    }
    auto& list = out[sample];
    for (const json& e : edges) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned()) {
        fail(ErrorCode::SchemaViolation,
             "relations must be [parent, child] index pairs");
      }
      list.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
  }
  return out;
}

std::string write_relations_json(const RelationMap& relations) {
  json rel = json::object();
  for (const auto& [sample, edges] : relations) {
    json arr = json::array();
    for (const auto& [p, c] : edges) arr.push_back({p, c});
    rel[sample] = std::move(arr);
  }
  json doc;
  doc["relations"] = std::move(rel);
  return doc.dump();
}

namespace {

MultiPartTable table_from_json(const json& t) {
  if (!t.is_object() || !t.contains("table_id") || !t["table_id"].is_string() ||
      !t.contains("parts") || !t["parts"].is_array() || t["parts"].empty()) {
    fail(ErrorCode::SchemaViolation,
         "table records need \"table_id\" and non-empty \"parts\"");
  }
  MultiPartTable table;
  table.table_id = t["table_id"].get<std::string>();
  for (const json& p : t["parts"]) {
    if (!p.is_object() || !p.contains("page_index") ||
        !p["page_index"].is_number_unsigned() || !p.contains("bbox")) {
      fail(ErrorCode::SchemaViolation,
           "table parts need \"page_index\" and \"bbox\"");
    }
    table.parts.push_back(
        {p["page_index"].get<std::size_t>(), bbox_from_json(p["bbox"], "part")});
  }
  if (!t.contains("grid")) {
    fail(ErrorCode::SchemaViolation, "table record lacks \"grid\"");
  }
  table.grid = load_grid_json(t["grid"].dump());
  if (!t.contains("html") || !t["html"].is_string()) {
    fail(ErrorCode::SchemaViolation, "table record lacks \"html\"");
  }
  table.html = t["html"].get<std::string>();
  return table;
}

DocumentRecord document_from_json(const json& d) {
  if (!d.is_object() || !d.contains("doc_id") || !d["doc_id"].is_string() ||
      !d.contains("pages") || !d["pages"].is_array()) {
    fail(ErrorCode::SchemaViolation,
         "document records need \"doc_id\" and \"pages\"");
  }
  DocumentRecord doc;
  doc.doc_id = d["doc_id"].get<std::string>();
  for (const json& p : d["pages"]) {
    if (!p.is_string()) {
      fail(ErrorCode::SchemaViolation, "page ids must be strings");
    }
    doc.page_ids.push_back(p.get<std::string>());
  }
  if (d.contains("tables")) {
    if (!d["tables"].is_array()) {
      fail(ErrorCode::SchemaViolation, "\"tables\" must be an array");
    }
    for (const json& t : d["tables"]) {
      MultiPartTable table = table_from_json(t);
      for (const TablePart& part : table.parts) {
        if (part.page_index >= doc.page_ids.size()) {
          fail(ErrorCode::SchemaViolation,
               "table part references page " +
                   std::to_string(part.page_index) + " outside document \"" +
                   doc.doc_id + "\"");
        }
      }
      doc.tables.push_back(std::move(table));
    }
  }
  return doc;
}

}  // namespace

std::vector<DocumentRecord> read_documents_json(std::string_view bytes) {
  const json doc = parse_json(bytes, "documents file");
  if (!doc.is_object() || !doc.contains("documents") ||
      !doc["documents"].is_array()) {
    fail(ErrorCode::SchemaViolation,
         "documents file must carry a \"documents\" array");
  }
  std::vector<DocumentRecord> out;
  for (const json& d : doc["documents"]) out.push_back(document_from_json(d));
  return out;
}

std::string write_documents_json(std::span<const DocumentRecord> docs) {
  json arr = json::array();
  for (const DocumentRecord& d : docs) {
    json rec;
    rec["doc_id"] = d.doc_id;
    rec["pages"] = d.page_ids;
    json tables = json::array();
    for (const MultiPartTable& t : d.tables) {
      json tj;
      tj["table_id"] = t.table_id;
      json parts = json::array();
      for (const TablePart& p : t.parts) {
        json pj;
        pj["page_index"] = p.page_index;
        pj["bbox"] = bbox_to_json(p.bbox);
        parts.push_back(std::move(pj));
      }
      tj["parts"] = std::move(parts);
      tj["grid"] = json::parse(save_grid_json(t.grid));
      tj["html"] = t.html;
      tables.push_back(std::move(tj));
    }
    rec["tables"] = std::move(tables);
    arr.push_back(std::move(rec));
  }
  json doc;
  doc["documents"] = std::move(arr);
  return doc.dump();
}

SidecarData read_sidecar_json(std::string_view bytes) {
  const json doc = parse_json(bytes, "sidecar file");
  if (!doc.is_object()) {
    fail(ErrorCode::SchemaViolation, "sidecar file must be a JSON object");
  }
  SidecarData out;
  if (doc.contains("words")) out.words = read_words_json(bytes);
  if (doc.contains("relations")) out.relations = read_relations_json(bytes);
  if (doc.contains("documents")) out.documents = read_documents_json(bytes);
  return out;
}

void attach_relations(
    PageAnnotation& page,
    std::span<const std::pair<std::size_t, std::size_t>> relations) {
  PageGraph graph;
  graph.nodes = page.objects;
  graph.edges.assign(relations.begin(), relations.end());
  const std::vector<Warning> violations = validate_hierarchy(graph);
  if (!violations.empty()) {
    fail(ErrorCode::SchemaViolation,
         "relations rejected: " + violations.front().message + " (" +
             violations.front().location + ")");
  }
  page.relations.assign(relations.begin(), relations.end());
}

void StatsReport::merge(const StatsReport& other) {
  for (const auto& [k, v] : other.objects_per_class) objects_per_class[k] += v;
  for (const auto& [k, v] : other.samples_per_split) samples_per_split[k] += v;
  for (const auto& [k, v] : other.tables_by_pages_spanned) {
    tables_by_pages_spanned[k] += v;
  }
  multi_page_tables += other.multi_page_tables;
  multi_part_tables += other.multi_part_tables;
  n_documents += other.n_documents;
  n_document_tables += other.n_document_tables;
  n_grids += other.n_grids;
  long_tables += other.long_tables;
  wide_tables += other.wide_tables;
  long_and_wide += other.long_and_wide;
}

std::string StatsReport::to_json() const {
  json doc;
  doc["objects_per_class"] = objects_per_class;
  doc["samples_per_split"] = samples_per_split;
  json by_pages = json::object();
  for (const auto& [k, v] : tables_by_pages_spanned) {
    by_pages[std::to_string(k)] = v;
  }
  doc["tables_by_pages_spanned"] = std::move(by_pages);
  doc["multi_page_tables"] = multi_page_tables;
  doc["multi_part_tables"] = multi_part_tables;
  doc["n_documents"] = n_documents;
  doc["n_document_tables"] = n_document_tables;
  doc["n_grids"] = n_grids;
  doc["long_tables"] = long_tables;
  doc["wide_tables"] = wide_tables;
  doc["long_and_wide"] = long_and_wide;
  return doc.dump();
}

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoFailure, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    fail(ErrorCode::IoFailure, "cannot read " + path.string());
  }
  return buffer.str();
}

namespace {

void count_grid(const TableGrid& grid, StatsReport& stats) {
  ++stats.n_grids;
  const bool is_long = grid.is_long();
  const bool is_wide = grid.is_wide();
  if (is_long) ++stats.long_tables;
  if (is_wide) ++stats.wide_tables;
  if (is_long && is_wide) ++stats.long_and_wide;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void note_or_throw(ClassNameMode mode, std::vector<Warning>* warnings,
                   const Error& e, const std::string& where) {
  if (mode == ClassNameMode::Strict) throw e;
  if (warnings != nullptr) {
    warnings->push_back({WarnCode::SchemaEntrySkipped, e.what(), where});
  }
}

}  // namespace

StatsReport corpus_stats(const fs::path& root, ClassNameMode mode,
                         std::vector<Warning>* warnings) {
  if (!fs::exists(root)) {
    fail(ErrorCode::IoFailure, "corpus root " + root.string() + " not found");
  }
  StatsReport stats;
  for (const char* split : kSplits) {
    const fs::path dir = root / split;
    if (!fs::is_directory(dir)) continue;
    for (const fs::path& file : sorted_files(dir)) {
      const std::string name = file.filename().string();
      try {
        if (file.extension() == ".xml") {
          const PageAnnotation page =
              read_voc_annotation(read_file_bytes(file), mode, warnings);
          ++stats.samples_per_split[split];
          for (const PageObject& obj : page.objects) {
            ++stats.objects_per_class[std::string(
                object_class_name(obj.class_label))];
          }
        } else if (name.size() > 10 &&
                   name.substr(name.size() - 10) == "_grid.json") {
          count_grid(load_grid_json(read_file_bytes(file)), stats);
        }
      } catch (const Error& e) {
        note_or_throw(mode, warnings, e, file.string());
      }
    }
  }

  const fs::path documents = root / "documents.json";
  if (fs::exists(documents)) {
    try {
      for (const DocumentRecord& doc :
           read_documents_json(read_file_bytes(documents))) {
        ++stats.n_documents;
        for (const MultiPartTable& table : doc.tables) {
          ++stats.n_document_tables;
          const std::size_t spanned = table.pages_spanned();
          ++stats.tables_by_pages_spanned[spanned];
          if (spanned >= 2) ++stats.multi_page_tables;
          if (table.parts.size() > 1) ++stats.multi_part_tables;
          count_grid(table.grid, stats);
        }
      }
    } catch (const Error& e) {
      note_or_throw(mode, warnings, e, documents.string());
    }
  }
  return stats;
}

std::vector<DocumentRecord> load_document_corpus(
    const fs::path& root, ClassNameMode mode, std::vector<Warning>* warnings) {
  const fs::path documents = root / "documents.json";
  if (!fs::exists(documents)) {
    fail(ErrorCode::IoFailure,
         "no documents.json under " + root.string());
  }
  std::vector<DocumentRecord> docs =
      read_documents_json(read_file_bytes(documents));

  // Index page annotations by sample id across the split directories.
  std::map<std::string, fs::path> xml_by_id;
  for (const char* split : kSplits) {
    const fs::path dir = root / split;
    if (!fs::is_directory(dir)) continue;
    for (const fs::path& file : sorted_files(dir)) {
      if (file.extension() == ".xml") {
        xml_by_id[file.stem().string()] = file;
      }
    }
  }

  for (DocumentRecord& doc : docs) {
    doc.pages.reserve(doc.page_ids.size());
    for (const std::string& id : doc.page_ids) {
      PageAnnotation page;
      page.image_id = id;
      const auto it = xml_by_id.find(id);
      if (it == xml_by_id.end()) {
        if (warnings != nullptr) {
          warnings->push_back({WarnCode::MissingFile,
                               "no annotation for page \"" + id + "\"",
                               doc.doc_id});
        }
      } else {
        page = read_voc_annotation(read_file_bytes(it->second), mode, warnings);
        page.image_id = id;
      }
      doc.pages.push_back(std::move(page));
    }
  }
  return docs;
}

}  // namespace tge
