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

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "testutil.hpp"
#include "tge/dataset_io.hpp"
#include "tge/grid_json.hpp"

using namespace tge;
namespace fs = std::filesystem;

namespace {

const char* kMinimalVoc = R"(<?xml version="1.0"?>
<annotation>
  <filename>sample01.jpg</filename>
  <size><width>1700</width><height>2200</height></size>
  <object>
    <name>table</name>
    <bndbox><xmin>10</xmin><ymin>20</ymin><xmax>400</xmax><ymax>300</ymax></bndbox>
  </object>
</annotation>)";

std::string grid_json_1x1(const std::string& text) {
  return save_grid_json(
      TableGrid::build(1, 1, {{CellSpan{0, 0, 0, 0}, text, false, false}}));
}

std::string grid_json_dims(std::size_t rows, std::size_t cols) {
  std::vector<LogicalCell> cells;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      cells.push_back({CellSpan{r, r, c, c}, "x", false, false});
    }
  }
  return save_grid_json(TableGrid::build(rows, cols, std::move(cells)));
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("tge_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string documents_json_two_tables() {
  // Two documents, each with one 2-page table.
  std::string grid = grid_json_1x1("t");
  std::string out = R"({"documents":[)";
  for (int d = 0; d < 2; ++d) {
    if (d > 0) out += ",";
    const std::string id = "doc" + std::to_string(d);
    out += R"({"doc_id":")" + id + R"(","pages":[")" + id + R"(_p0",")" + id +
           R"(_p1"],"tables":[{"table_id":")" + id +
           R"(_t0","parts":[{"page_index":0,"bbox":[0,0,10,10]},
             {"page_index":1,"bbox":[0,0,10,5]}],"grid":)" +
           grid + R"(,"html":"<table></table>"}]})";
  }
  out += "]}";
  return out;
}

}  // namespace

TEST_CASE("voc annotation reading") {
  const PageAnnotation page = read_voc_annotation(kMinimalVoc);
  CHECK(page.image_id == "sample01");
  CHECK(page.page_width == doctest::Approx(1700));
  REQUIRE(page.objects.size() == 1);
  CHECK(page.objects[0].class_label == ObjectClass::Table);
  CHECK(page.objects[0].bbox.x_max == doctest::Approx(400));
}

TEST_CASE("voc rotated classes and unknown names") {
  const std::string rotated = R"(<annotation><object>
      <name>table column rotated</name>
      <bndbox><xmin>0</xmin><ymin>0</ymin><xmax>1</xmax><ymax>1</ymax></bndbox>
    </object></annotation>)";
  const PageAnnotation page = read_voc_annotation(rotated);
  REQUIRE(page.objects.size() == 1);
  CHECK(is_rotated(page.objects[0].class_label));

  const std::string widget = R"(<annotation><object><name>widget</name>
      <bndbox><xmin>0</xmin><ymin>0</ymin><xmax>1</xmax><ymax>1</ymax></bndbox>
    </object></annotation>)";
  CHECK_THROWS_AS(read_voc_annotation(widget, ClassNameMode::Strict), Error);
  std::vector<Warning> warnings;
  const PageAnnotation lenient =
      read_voc_annotation(widget, ClassNameMode::Lenient, &warnings);
  CHECK(lenient.objects.empty());
  CHECK(warnings.size() == 1);

  CHECK_THROWS_AS(read_voc_annotation("<annotation><object>"), Error);
  try {
    read_voc_annotation("not xml at all <<<");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::XmlMalformed);
  }
}

TEST_CASE("words sidecar round trip") {
  const std::vector<Word> words = {{"hello", {0, 0, 10, 5}},
                                   {"world", {12, 0, 25, 5}}};
  const std::string saved = write_words_json(words);
  const std::vector<Word> loaded = read_words_json(saved);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].text == "hello");
  CHECK(loaded[1].bbox.x_min == doctest::Approx(12));
  CHECK(write_words_json(loaded) == saved);

  const SidecarData sidecar = read_sidecar_json(saved);
  CHECK(sidecar.words.size() == 2);
  CHECK(sidecar.relations.empty());
  CHECK(sidecar.documents.empty());
}

TEST_CASE("relations validate against the page annotation") {
  PageAnnotation page = read_voc_annotation(kMinimalVoc);
  page.objects.push_back(
      {ObjectClass::TableCaption, {0, 310, 100, 330}, std::nullopt});
  const std::vector<std::pair<std::size_t, std::size_t>> good = {{0, 1}};
  attach_relations(page, good);
  CHECK(page.relations.size() == 1);

  const std::vector<std::pair<std::size_t, std::size_t>> missing = {{0, 9}};
  CHECK_THROWS_AS(attach_relations(page, missing), Error);
  // Caption as parent breaks the hierarchy rule.
  const std::vector<std::pair<std::size_t, std::size_t>> bad_parent = {{1, 0}};
  CHECK_THROWS_AS(attach_relations(page, bad_parent), Error);
}

TEST_CASE("relations json round trip") {
  RelationMap map;
  map["s1"] = {{0, 1}, {0, 2}};
  map["s2"] = {};
  const std::string saved = write_relations_json(map);
  CHECK(read_relations_json(saved) == map);
}

TEST_CASE("documents json with a three page table") {
  const std::string doc = R"({"documents":[{"doc_id":"d1",
    "pages":["p0","p1","p2"],
    "tables":[{"table_id":"t1","parts":[
        {"page_index":0,"bbox":[0,500,100,800]},
        {"page_index":1,"bbox":[0,0,100,800]},
        {"page_index":2,"bbox":[0,0,100,200]}],
      "grid":)" + grid_json_1x1("t") + R"(,"html":"<table></table>"}]}]})";
  const std::vector<DocumentRecord> docs = read_documents_json(doc);
  REQUIRE(docs.size() == 1);
  REQUIRE(docs[0].tables.size() == 1);
  CHECK(docs[0].tables[0].parts.size() == 3);
  CHECK(docs[0].tables[0].pages_spanned() == 3);
  CHECK(write_documents_json(docs) == write_documents_json(
      read_documents_json(write_documents_json(docs))));

  const std::string bad_part = R"({"documents":[{"doc_id":"d1",
    "pages":["p0"],"tables":[{"table_id":"t1",
      "parts":[{"page_index":4,"bbox":[0,0,1,1]}],
      "grid":)" + grid_json_1x1("t") + R"(,"html":""}]}]})";
  CHECK_THROWS_AS(read_documents_json(bad_part), Error);
}

TEST_CASE("corpus stats over a synthetic fixture") {
  TempDir dir("stats");
  write_file(dir.path / "train" / "s1.xml", kMinimalVoc);
  write_file(dir.path / "train" / "s2.xml", kMinimalVoc);
  write_file(dir.path / "val" / "s3.xml", kMinimalVoc);
  // One long (31 rows) and one wide (12 cols) cropped table.
  write_file(dir.path / "train" / "s1_grid.json", grid_json_dims(31, 2));
  write_file(dir.path / "train" / "s2_grid.json", grid_json_dims(2, 12));
  write_file(dir.path / "documents.json", documents_json_two_tables());

  const StatsReport stats = corpus_stats(dir.path);
  CHECK(stats.samples_per_split.at("train") == 2);
  CHECK(stats.samples_per_split.at("val") == 1);
  CHECK(stats.objects_per_class.at("table") == 3);
  CHECK(stats.long_tables == 1);
  CHECK(stats.wide_tables == 1);
  CHECK(stats.long_and_wide == 0);
  CHECK(stats.n_documents == 2);
  CHECK(stats.tables_by_pages_spanned.at(2) == 2);
  CHECK(stats.multi_page_tables == 2);
}

TEST_CASE("stats are additive across corpora") {
  TempDir a("stats_a"), b("stats_b");
  write_file(a.path / "train" / "s1.xml", kMinimalVoc);
  write_file(a.path / "train" / "s1_grid.json", grid_json_dims(31, 12));
  write_file(b.path / "test" / "s2.xml", kMinimalVoc);
  write_file(b.path / "documents.json", documents_json_two_tables());

  StatsReport merged = corpus_stats(a.path);
  merged.merge(corpus_stats(b.path));

  // The union corpus gives the same counts.
  TempDir u("stats_u");
  write_file(u.path / "train" / "s1.xml", kMinimalVoc);
  write_file(u.path / "train" / "s1_grid.json", grid_json_dims(31, 12));
  write_file(u.path / "test" / "s2.xml", kMinimalVoc);
  write_file(u.path / "documents.json", documents_json_two_tables());
  const StatsReport whole = corpus_stats(u.path);
  CHECK(merged.to_json() == whole.to_json());
  CHECK(merged.long_and_wide == 1);
}

TEST_CASE("document corpus loader joins page annotations") {
  TempDir dir("docs");
  write_file(dir.path / "train" / "doc0_p0.xml", kMinimalVoc);
  write_file(dir.path / "train" / "doc0_p1.xml", kMinimalVoc);
  write_file(dir.path / "documents.json", documents_json_two_tables());
  std::vector<Warning> warnings;
  const std::vector<DocumentRecord> docs =
      load_document_corpus(dir.path, ClassNameMode::Lenient, &warnings);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].pages.size() == 2);
  CHECK(docs[0].pages[0].objects.size() == 1);
  // doc1 pages lack annotation files and load empty, with warnings.
  CHECK(docs[1].pages[0].objects.empty());
  CHECK(warnings.size() == 2);
}
