#include "leray/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>

using namespace leray;

namespace {

const std::string kData = LERAY_TEST_DATA;

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/leray_test_" + name;
  std::ofstream(path) << body;
  return path;
}

bool all_of_type(const json& a, bool (json::*pred)() const) {
  if (!a.is_array()) return false;
  for (const auto& x : a)
    if (!(x.*pred)()) return false;
  return true;
}

}  // namespace

TEST_CASE("matroid files") {
  auto m5 = matroid_from_json(read_json_file(kData + "/m5.json"));
  CHECK(m5.size() == 5);
  CHECK(m5.circuits == named_fixture("M5").matroid.circuits);
  auto k4 = matroid_from_json(read_json_file(kData + "/k4.json"));
  CHECK(lattice_of_flats(k4).rank_profile() == std::vector<int>{1, 6, 7, 1});
  // 1-based vertices are accepted
  auto k4b = matroid_from_json(json::parse(R"({"graph": {"vertices": 4, "edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}})"));
  CHECK(k4b.circuits == k4.circuits);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(matroid_from_json(json::parse(R"({"ground": ["1"]})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(json::parse(R"({"ground": ["1","2"], "circuits": [["1","2"]]})")), InputError);
  CHECK_THROWS_AS(matroid_from_json(json::parse(R"({"graph": {"vertices": 2, "edges": [[0,5]]}})")), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
  CHECK_THROWS_AS(read_json_file(write_temp("bad.json", "{not json")), InputError);
  CHECK_THROWS_AS(poset_from_json(json::parse(R"({"elements": ["a","b"], "covers": [[0,1],[1,0]]})")), InputError);
}

TEST_CASE("round trips") {
  auto m = named_fixture("M5").matroid;
  auto back = matroid_from_json(matroid_to_json(m));
  CHECK(back.ground == m.ground);
  CHECK(back.circuits == m.circuits);
  CHECK(matroid_to_json(back).dump() == matroid_to_json(m).dump());

  auto pi4 = named_fixture("Pi4");
  const auto& P = pi4.L->order;
  auto Q = poset_from_json(poset_to_json(P));
  REQUIRE(Q.size() == P.size());
  for (int a = 0; a < P.size(); ++a)
    for (int b = 0; b < P.size(); ++b) CHECK(P.leq(a, b) == Q.leq(a, b));
  CHECK(poset_to_json(Q).dump() == poset_to_json(P).dump());
}

TEST_CASE("building set specs") {
  auto f = named_fixture("M5");
  const auto& L = *f.L;
  CHECK(parse_building_set(L, "minimal").members == minimal_building_set(L).members);
  CHECK(parse_building_set(L, "maximal").members == maximal_building_set(L).members);
  CHECK(parse_building_set(L, "file:" + kData + "/m5_gmin.json").members == minimal_building_set(L).members);
  CHECK_THROWS_AS(parse_building_set(L, "smallest"), InputError);
  // atoms and 1hat alone miss the irreducible 124
  CHECK_THROWS_AS(parse_building_set(L, "file:" + write_temp("g.json", R"(["1hat"])")), InputError);
  CHECK_THROWS_AS(parse_building_set(L, "file:" + write_temp("g2.json", R"({"a": 1})")), InputError);
}

TEST_CASE("core specs") {
  auto f = named_fixture("M5");
  const auto& L = *f.L;
  CHECK(parse_core(L, f.G, "").empty());
  CHECK(parse_core(L, f.G, "1hat,124").size() == 2);
  CHECK_THROWS_WITH_AS(parse_core(L, f.G, "124"), doctest::Contains("order filter"), InputError);
  CHECK_THROWS_WITH_AS(parse_core(L, f.G, "1hat,23"), doctest::Contains("not in the building set"), InputError);
  CHECK_THROWS_AS(parse_core(L, f.G, "1hat,999"), InputError);

  auto p = named_fixture("Pi4");
  auto core = parse_core(*p.L, p.G, "1hat,12+13+23");
  REQUIRE(core.size() == 2);
  CHECK(std::count(core.begin(), core.end(), parse_flat(*p.L, "12,13,23")) == 1);
}

TEST_CASE("report shapes") {
  auto f = named_fixture("M5");
  auto lat = lattice_report(*f.L);
  CHECK(lat["rank_profile"] == json({1, 5, 6, 1}));
  CHECK(lat["geometric"].get<bool>());
  CHECK(all_of_type(lat["irreducibles"], &json::is_string));
  CHECK(lat["flats"].size() == 12);  // the bottom is left out

  std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat", "124", "135"})));
  auto br = blowup_report(*B);
  CHECK(br["size"].get<int>() == B->lat.size());
  CHECK(all_of_type(br["blowup_order"], &json::is_string));
  CHECK(br["blowup_order"][0] == "1hat");
  CHECK(all_of_type(br["nested_facets"], &json::is_array));

  auto osr = os_report(OSAlgebra(*f.L));
  CHECK(osr["dims"] == json({1, 5, 8, 4}));
  CHECK(osr["nbc_basis"].size() == 4);

  DPAlgebra D(B);
  auto dr = dp_report(D);
  CHECK(dr["dims"] == json({1, 3, 1}));
  CHECK(dr["pairing_identity"].get<bool>());
  CHECK(dr["palindromic"].get<bool>());

  LerayModel m(B, false);
  auto coh = m.cohomology();
  Suite s;
  s.add("d squared is zero", m.d_squared_zero());
  auto mr = model_report(m, coh, s);
  // entries are [i, j, dim] with i the polynomial degree
  int total = 0;
  for (const auto& e : mr["bigraded_dims"]) {
    REQUIRE(e.size() == 3);
    CHECK(e[2].get<int>() == m.dim(e[0].get<int>(), e[1].get<int>()));
    total += e[2].get<int>();
  }
  int expect = 0;
  for (const auto& [ij, d] : m.table()) expect += d;
  CHECK(total == expect);
  CHECK(mr["checks"]["d squared is zero"].get<bool>());
  for (const auto& e : mr["cohomology"]) CHECK(e.size() == 3);

  Suite bad;
  bad.add("a", true);
  bad.add("b", false);
  auto sr = suite_report(bad);
  CHECK_FALSE(sr["ok"].get<bool>());
  REQUIRE(sr["failures"].size() == 1);
  CHECK(sr["failures"][0]["check"] == "b");
}

TEST_CASE("reports are deterministic") {
  auto run = [] {
    auto f = make_fixture("m5", matroid_from_json(read_json_file(kData + "/m5.json")));
    std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat", "135"})));
    LerayModel m(B, false);
    return lattice_report(*f.L).dump() + blowup_report(*B).dump() + dp_report(DPAlgebra(B)).dump() +
           model_report(m, m.cohomology(2), Suite{}).dump();
  };
  CHECK(run() == run());
}
