#include "mcfin/pipeline.hpp"

#include <doctest.h>

#include <filesystem>

using namespace mcfin;

TEST_CASE("G23 3-tuples split into three types") {
  auto G = Group::load("G23", false);
  auto sr = search_nice(*G, 3);
  CHECK(sr.complete);
  REQUIRE(!sr.tuples.empty());
  auto types = partition_types(*G, sr.tuples, 3);
  CHECK(types.size() == 3);
  size_t total = 0;
  for (size_t i = 0; i < types.size(); ++i) {
    auto& t = types[i];
    total += t.members;
    // real group: every type is its own inverse
    CHECK(t.inverse == (int)i);
    std::string why;
    CHECK_MESSAGE(is_nice(*G, t.exemplar, &why), why);
    CHECK(inverse_spectrum(t.exemplar, G->entry.extension()) == t.key);
    for (auto& m : t.sample) CHECK(inverse_spectrum(m, G->entry.extension()) == t.key);
  }
  CHECK(total == sr.tuples.size());
}

TEST_CASE("G25 3-tuples give 8 types in 4 inverse pairs") {
  auto G = Group::load("G25", false);
  auto types = partition_types(*G, search_nice(*G, 3).tuples);
  CHECK(types.size() == 8);
  int pairs = 0;
  for (size_t i = 0; i < types.size(); ++i) {
    REQUIRE(types[i].inverse >= 0);
    CHECK(types[types[i].inverse].inverse == (int)i);
    CHECK(types[types[i].inverse].key == inverted(types[i].key));
    pairs += types[i].inverse > (int)i;
  }
  CHECK(pairs == 4);
}

TEST_CASE("no nice 4-tuples in G24") {
  auto G = Group::load("G24", false);
  CHECK(search_nice(*G, 4).tuples.empty());
}

TEST_CASE("self-inverse 4-tuple type in G23") {
  auto G = Group::load("G23", false);
  auto types = partition_types(*G, search_nice(*G, 4).tuples);
  REQUIRE(types.size() == 1);
  CHECK(types[0].inverse == 0);
  CHECK(key_str(types[0].key) == key_str(inverted(types[0].key)));
}

TEST_CASE("is_nice rejects broken tuples") {
  auto G = Group::load("G23", false);
  auto A = read_mats(data_dir() + "/exemplars/G23_T3_A.txt");
  CHECK(is_nice(*G, A));
  std::string why;
  MatTuple B{A[0], A[0], A[1]};
  CHECK_FALSE(is_nice(*G, B, &why));
  CHECK(!why.empty());
}

TEST_CASE("shipped exemplars and labels") {
  auto ex = load_exemplars("G25", 3, 36);
  REQUIRE(ex.size() == 4);
  CHECK(ex[0].label == "A");
  CHECK(ex[3].label == "D");
  auto G = Group::load("G25", false);
  auto types = partition_types(*G, search_nice(*G, 3).tuples);
  adopt_labels(types, ex);
  int plain = 0, primed = 0;
  for (auto& t : types) (t.label.back() == '\'' ? primed : plain)++;
  CHECK(plain == 4);
  CHECK(primed == 4);
}

TEST_CASE("appendix fixture") {
  auto apx = load_appendix();
  CHECK(apx.size() > 40);
  auto* r = find_appendix(apx, "G28", 4, "A", "1/6");
  REQUIRE(r);
  CHECK(r->osize == "45");
  CHECK(r->character.size() == 5);
  CHECK(find_appendix(apx, "G28", 4, "Z", "1/6") == nullptr);
}

TEST_CASE("G28 run: one distinct orbit, identity collapse, store round trip") {
  RunOptions opt;
  opt.check_inverse = true;
  auto res = run_group("G28", 4, opt);
  REQUIRE(res.rows.size() == 2);
  for (auto& r : res.rows) {
    CHECK(r.dim == 2);
    CHECK(r.orbit == 45);
    CHECK(r.orbit_complete);
    CHECK(r.ssize == 72);
    CHECK(r.sl2 == "24,3");
    CHECK(r.identity_entry);
    CHECK(r.reduced_orbit == 9);
  }
  CHECK(res.distinct_orbits == 1);
  REQUIRE(res.checks.size() == 1);
  CHECK(res.checks[0].inverse_landed == res.checks[0].inverse_checked);

  auto dir = std::filesystem::temp_directory_path() / "mcfin_store_test";
  std::filesystem::remove_all(dir);
  store_rows(dir.string(), res.rows);
  // storing twice does not duplicate
  store_rows(dir.string(), res.rows);
  auto back = read_store(dir.string());
  REQUIRE(back.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(back[i].id() == res.rows[i].id());
    CHECK(back[i].orbit == res.rows[i].orbit);
    CHECK(back[i].sl2 == res.rows[i].sl2);
    CHECK(back[i].mc == res.rows[i].mc);
  }
  auto md = report(back, "md");
  CHECK(md.find("| Type | ξ | λ | M1 | M2 | M3 | M4 | Character | O. Size | S. Size | SL2 |") != std::string::npos);
  auto tsv = report(back, "tsv");
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 3);
  CHECK_THROWS(report(back, "xml"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("rows of other dimensions carry no orbit") {
  auto A = read_mats(data_dir() + "/exemplars/G25_T3_D.txt");
  auto rows = mc_rows("G25", 3, "D", A, RunOptions{});
  int two = 0;
  for (auto& r : rows) {
    if (r.dim == 2) {
      ++two;
      continue;
    }
    CHECK(r.orbit == 0);
    CHECK(r.note.find("MC dimension") != std::string::npos);
  }
  CHECK(two == 1);
}
