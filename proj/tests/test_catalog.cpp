#include "catalog.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"

using namespace forge;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("forge_test_" + name)).string();
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::trunc);
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST_CASE("load_catalog parses a typed record") {
  std::string path = temp_path("cat1.jsonl");
  write_lines(path, {R"({"id":"g1","title":"Splitgate","description":"Arena shooter.",)"
                     R"("fields":{"genre":{"type":"categories","value":["shooter"]},)"
                     R"("tags":{"type":"categories","value":["3d","not made for kids"]},)"
                     R"("price":{"type":"number","value":9.99,"unit":"USD"},)"
                     R"("release date":{"type":"date","value":"2021-05-27"}}})"});
  Catalog cat = load_catalog(path);
  REQUIRE(cat.items.size() == 1);
  const Item& item = cat.items[0];
  CHECK(item.title == "Splitgate");
  const auto* genre = item.categories("genre");
  REQUIRE(genre != nullptr);
  CHECK(genre->values == std::vector<std::string>{"shooter"});
  const auto* tags = item.categories("tags");
  REQUIRE(tags != nullptr);
  CHECK(tags->values == std::vector<std::string>{"3d", "not made for kids"});
  const auto* price = std::get_if<NumberValue>(item.find_field("price"));
  REQUIRE(price != nullptr);
  CHECK(price->value == doctest::Approx(9.99));
  const auto* rel = std::get_if<DateValue>(item.find_field("release date"));
  REQUIRE(rel != nullptr);
  CHECK(format_iso_date(rel->days) == "2021-05-27");
}

TEST_CASE("load_catalog rejects an empty file") {
  std::string path = temp_path("cat_empty.jsonl");
  write_lines(path, {});
  CHECK_THROWS_WITH_AS(load_catalog(path), "empty catalog", Error);
}

TEST_CASE("load_catalog rejects duplicate ids, naming the id") {
  std::string path = temp_path("cat_dup.jsonl");
  write_lines(path, {R"({"id":"g1","title":"A","description":"","fields":{}})",
                     R"({"id":"g1","title":"B","description":"","fields":{}})"});
  try {
    load_catalog(path);
    FAIL("expected duplicate-id error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
    CHECK(std::string(e.what()).find("g1") != std::string::npos);
  }
}

TEST_CASE("load_catalog reports the failing line number") {
  std::string path = temp_path("cat_bad.jsonl");
  write_lines(path, {R"({"id":"g1","title":"A","description":"","fields":{}})", "{not json"});
  try {
    load_catalog(path);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("load_catalog rejects unknown field type tags") {
  std::string path = temp_path("cat_tag.jsonl");
  write_lines(path, {R"({"id":"g1","title":"A","description":"",)"
                     R"("fields":{"x":{"type":"blob","value":1}}})"});
  CHECK_THROWS_AS(load_catalog(path), Error);
}

TEST_CASE("field names and categories are lowercased at ingest") {
  std::string path = temp_path("cat_case.jsonl");
  write_lines(path, {R"({"id":"g1","title":"A","description":"",)"
                     R"("fields":{"Genre":{"type":"categories","value":["Shooter","SHOOTER"]}}})"});
  Catalog cat = load_catalog(path);
  const auto* genre = cat.items[0].categories("genre");
  REQUIRE(genre != nullptr);
  CHECK(genre->values == std::vector<std::string>{"shooter"});  // deduplicated too
}

TEST_CASE("interactions load and validate") {
  std::string cat_path = temp_path("cat_ix.jsonl");
  write_lines(cat_path, {R"({"id":"g1","title":"A","description":"","fields":{}})",
                         R"({"id":"g2","title":"B","description":"","fields":{}})"});
  Catalog cat = load_catalog(cat_path);
  std::string ix_path = temp_path("ix.jsonl");

  SUBCASE("valid log") {
    write_lines(ix_path, {R"({"user_id":"u1","events":[["g1",10],["g2",20]]})"});
    InteractionLog log = load_interactions(ix_path, cat);
    REQUIRE(log.users.size() == 1);
    CHECK(log.users[0].events.size() == 2);
    CHECK_FALSE(log.users[0].short_history);
  }
  SUBCASE("unknown item id") {
    write_lines(ix_path, {R"({"user_id":"u1","events":[["g9",5]]})"});
    CHECK_THROWS_AS(load_interactions(ix_path, cat), Error);
  }
  SUBCASE("decreasing timestamps") {
    write_lines(ix_path, {R"({"user_id":"u1","events":[["g1",20],["g2",10]]})"});
    try {
      load_interactions(ix_path, cat);
      FAIL("expected ordering error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("u1") != std::string::npos);
    }
  }
  SUBCASE("short histories are retained but flagged") {
    write_lines(ix_path, {R"({"user_id":"u1","events":[["g1",10]]})"});
    InteractionLog log = load_interactions(ix_path, cat);
    REQUIRE(log.users.size() == 1);
    CHECK(log.users[0].short_history);
  }
}

TEST_CASE("synth_catalog is deterministic and well-formed") {
  SynthResult a = synth_catalog(42, 500, 300);
  SynthResult b = synth_catalog(42, 500, 300);
  CHECK(a.catalog.items.size() == 500);
  CHECK(a.interactions.users.size() == 300);
  CHECK(a.catalog == b.catalog);
  CHECK(a.interactions == b.interactions);
  CHECK(catalog_hash(a.catalog) == catalog_hash(b.catalog));

  for (const auto& item : a.catalog.items) {
    CHECK_FALSE(item.title.empty());
    CHECK_FALSE(item.description.empty());
    CHECK(item.fields.size() >= 4);
    CHECK(item.find_field("price") != nullptr);
    CHECK(item.find_field("release date") != nullptr);
    CHECK(item.categories("genre") != nullptr);
    CHECK(item.categories("tags") != nullptr);
  }
}

TEST_CASE("synth_catalog minimum scale") {
  SynthResult r = synth_catalog(42, 10, 1);
  CHECK(r.catalog.items.size() == 10);
  REQUIRE(r.interactions.users.size() == 1);
  CHECK(r.interactions.users[0].events.size() >= 2);
}

TEST_CASE("catalog file round-trip is identity") {
  SynthResult r = synth_catalog(11, 40, 10);
  std::string cat_path = temp_path("cat_rt.jsonl");
  std::string ix_path = temp_path("ix_rt.jsonl");
  save_catalog(r.catalog, cat_path, 11);
  save_interactions(r.interactions, ix_path, 11);

  Catalog loaded = load_catalog(cat_path);
  CHECK(loaded == r.catalog);
  InteractionLog log = load_interactions(ix_path, loaded);
  CHECK(log == r.interactions);

  // And the bytes themselves are stable across a second save.
  std::string again = temp_path("cat_rt2.jsonl");
  save_catalog(loaded, again, 11);
  CHECK(read_file(again) == read_file(cat_path));
}
