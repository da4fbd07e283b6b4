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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tge/graph_metrics.hpp"
#include "tge/table_grid.hpp"

namespace tge {

struct Word {
  std::string text;
  BBox bbox;
};

/// One annotated page image: typed, boxed objects plus the words extracted
/// from the source document and parent->child relations between objects.
struct PageAnnotation {
  std::string image_id;
  double page_width = 0.0;
  double page_height = 0.0;
  std::vector<PageObject> objects;
  std::vector<Word> words;
  std::vector<std::pair<std::size_t, std::size_t>> relations;
};

struct TablePart {
  std::size_t page_index = 0;
  BBox bbox;
};

/// A logical table split into one or more parts across columns or pages.
struct MultiPartTable {
  std::string table_id;
  std::vector<TablePart> parts;  // reading order
  TableGrid grid;
  std::string html;

  /// Number of distinct pages the table appears on.
  std::size_t pages_spanned() const;
};

struct DocumentRecord {
  std::string doc_id;
  std::vector<std::string> page_ids;   // ordered, contiguous pages
  std::vector<PageAnnotation> pages;   // populated by load_document_corpus
  std::vector<MultiPartTable> tables;
};

enum class ClassNameMode { Strict, Lenient };

/// Reads a PASCAL VOC annotation: one PageObject per <object>, names mapped
/// through the canonical class-name table, boxes from <bndbox>. Unknown
/// class names throw UnknownClassName in strict mode and are skipped with a
/// warning in lenient mode. Throws XmlMalformed for unparsable XML.
PageAnnotation read_voc_annotation(std::string_view xml_bytes,
                                   ClassNameMode mode = ClassNameMode::Strict,
                                   std::vector<Warning>* warnings = nullptr);

std::vector<Word> read_words_json(std::string_view bytes);
std::string write_words_json(std::span<const Word> words);

using RelationMap =
    std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>;

std::vector<DocumentRecord> read_documents_json(std::string_view bytes);
std::string write_documents_json(std::span<const DocumentRecord> docs);

RelationMap read_relations_json(std::string_view bytes);
std::string write_relations_json(const RelationMap& relations);

/// Dispatcher over the sidecar sections: a sidecar document may carry any of
/// "words", "relations", and "documents"; absent sections stay empty.
struct SidecarData {
  std::vector<Word> words;
  RelationMap relations;
  std::vector<DocumentRecord> documents;
};
SidecarData read_sidecar_json(std::string_view bytes);

/// Attaches relation edges to a page annotation, validating indices and the
/// hierarchy rule (table parents only, no self-loops, one parent per child).
/// Throws SchemaViolation on any violation.
void attach_relations(
    PageAnnotation& page,
    std::span<const std::pair<std::size_t, std::size_t>> relations);

/// Corpus statistics; all fields merge additively.
struct StatsReport {
  std::map<std::string, std::uint64_t> objects_per_class;
  std::map<std::string, std::uint64_t> samples_per_split;
  /// Tables by number of distinct pages spanned (1 = single-page).
  std::map<std::size_t, std::uint64_t> tables_by_pages_spanned;
  std::uint64_t multi_page_tables = 0;  // spanning >= 2 pages
  std::uint64_t multi_part_tables = 0;  // more than one part
  std::uint64_t n_documents = 0;
  std::uint64_t n_document_tables = 0;
  std::uint64_t n_grids = 0;
  std::uint64_t long_tables = 0;      // >= 30 rows
  std::uint64_t wide_tables = 0;      // >= 12 columns
  std::uint64_t long_and_wide = 0;

  void merge(const StatsReport& other);
  std::string to_json() const;
};

/// Walks a collection root laid out as `<split>/<sample>.xml` plus
/// `<sample>_words.json` / `<sample>_grid.json` sidecars and optional
/// collection-level `documents.json` / `relations.json`; splits are
/// train/val/test. Lenient mode downgrades unknown classes and malformed
/// files to warnings.
StatsReport corpus_stats(const std::filesystem::path& root,
                         ClassNameMode mode = ClassNameMode::Lenient,
                         std::vector<Warning>* warnings = nullptr);

/// Loads documents.json and resolves each page id to its VOC annotation
/// found under the split directories. Pages without an annotation file load
/// empty, with a warning.
std::vector<DocumentRecord> load_document_corpus(
    const std::filesystem::path& root,
    ClassNameMode mode = ClassNameMode::Lenient,
    std::vector<Warning>* warnings = nullptr);

std::string read_file_bytes(const std::filesystem::path& path);

}  // namespace tge
