#include "leray/fixtures.hpp"
#include "leray/leray_model.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace leray;

namespace {

std::shared_ptr<const PartialBlowup> make(const Fixture& f, const std::vector<int>& core) {
  return build_semilattice(partial(f, core));
}
std::shared_ptr<const PartialBlowup> make(const Fixture& f, const std::vector<std::string>& core) {
  return build_semilattice(partial(f, core));
}

std::vector<int> trim(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

std::vector<int> row(const LerayModel& m, int a) {
  std::vector<int> r;
  for (int j = 0; j <= m.max_j(); ++j) r.push_back(m.dim(a, j));
  return trim(r);
}

std::vector<int> h0(const std::vector<std::vector<int>>& coh) {
  std::vector<int> out;
  for (const auto& line : coh) out.push_back(line.empty() ? 0 : line[0]);
  return trim(out);
}

bool higher_vanish(const std::vector<std::vector<int>>& coh) {
  for (const auto& line : coh)
    for (size_t p = 1; p < line.size(); ++p)
      if (line[p]) return false;
  return true;
}

}  // namespace

TEST_CASE("H = atoms gives OS with zero differential") {
  for (const char* n : {"M5", "U23", "Pi4"}) {
    auto f = named_fixture(n);
    LerayModel m(make(f, std::vector<int>{}), true);
    for (int a = 1; a <= m.max_a(); ++a) CHECK(row(m, a).empty());
    CHECK(row(m, 0) == trim(OSAlgebra(*f.L).dims()));
    for (int j = 0; j <= m.max_j(); ++j) CHECK(m.d_matrix(0, j).is_zero());
  }
}

TEST_CASE("B(M5) with H° = {1hat}") {
  auto f = named_fixture("M5");
  std::vector<oracle::Set> circuits(f.matroid.circuits.begin(), f.matroid.circuits.end());
  auto os = oracle::nbc_counts(5, circuits);  // (1,5,8,4)
  LerayModel m(make(f, std::vector<std::string>{"1hat"}), false);
  // row a is OS of M5 truncated below degree r + 1 - a
  CHECK(row(m, 0) == std::vector<int>(os.begin(), os.begin() + 3));
  CHECK(row(m, 1) == std::vector<int>(os.begin(), os.begin() + 2));
  CHECK(row(m, 2) == std::vector<int>(os.begin(), os.begin() + 1));
  CHECK(row(m, 0) == std::vector<int>{1, 5, 8});
  CHECK(row(m, 1) == std::vector<int>{1, 5});
  CHECK(row(m, 2) == std::vector<int>{1});
  for (int a = 3; a <= m.max_a(); ++a) CHECK(row(m, a).empty());
  CHECK(m.d_squared_zero());
  CHECK(m.d_integral());
}

TEST_CASE("d on generators") {
  auto f = named_fixture("M5");
  auto B = make(f, std::vector<std::string>{"1hat"});
  LerayModel hat(B, true), b(B, false);
  int top = B->H->one_hat();
  Element e_top(Mono::ext(bit(top)));
  CHECK(b.normal_form(e_top).is_zero());
  CHECK_FALSE(hat.normal_form(e_top).is_zero());
  CHECK(hat.normal_form(differential(e_top)) == hat.normal_form(Element(Mono::var(top))));
  // d of a degree one class lands in the polynomial part and is nonzero
  int two = B->H->index_of[parse_flat(*f.L, "2")];
  auto dx = b.normal_form(differential(Element(Mono::ext(bit(two)))));
  CHECK_FALSE(dx.is_zero());
  CHECK(dx.lead().edeg() == 0);
  CHECK(dx.lead().xdeg() == 1);
}

TEST_CASE("cohomology of B and B-hat") {
  for (const char* n : {"M5", "U23", "B3", "Pi4"}) {
    auto f = named_fixture(n);
    OSAlgebra os(*f.L);
    for (const auto& core : all_cores(*f.L, f.G)) {
      auto B = make(f, core);
      LerayModel hat(B, true);
      auto ch = hat.cohomology();
      CHECK(h0(ch) == trim(os.dims()));
      CHECK(higher_vanish(ch));
      if (B->H->one_hat() < 0) continue;
      LerayModel b(B, false);
      auto cb = b.cohomology(2);
      CHECK(h0(cb) == trim(os.projective_dims()));
      CHECK(higher_vanish(cb));
      auto emb = os_to_model(b);
      CHECK(emb.cocycles);
      CHECK(emb.image_ranks == emb.source_dims);
    }
  }
}

TEST_CASE("rank one matroid") {
  auto f = make_fixture("R1", matroid_from_circuits({"1"}, {}));
  auto B = make(f, std::vector<int>{});
  REQUIRE(B->H->one_hat() >= 0);  // the top is the only atom
  LerayModel b(B, false);
  CHECK(h0(b.cohomology()) == std::vector<int>{1});
  LerayModel hat(B, true);
  CHECK(h0(hat.cohomology()) == std::vector<int>{1, 1});
}

TEST_CASE("decomposition and the dual complex") {
  for (const char* n : {"M5", "U23", "Pi4"}) {
    auto f = named_fixture(n);
    for (const auto& core : all_cores(*f.L, f.G)) {
      auto B = make(f, core);
      for (bool hat : {true, false}) {
        if (!hat && B->H->one_hat() < 0) continue;
        LerayModel m(B, hat);
        for (const auto& blk : m.decomposition()) CHECK(blk.count == blk.predicted);
        if (hat) {
          CHECK_THROWS_AS(dual_complex_check(m), std::invalid_argument);
          continue;
        }
        auto d = dual_complex_check(m);
        CHECK(d.decomposition_iso);
        CHECK(d.mismatches == 0);
        CHECK(d.entries > 0);
        CHECK(d.dual_d_squared_zero);
      }
    }
  }
}

TEST_CASE("blowup maps on the model") {
  for (const char* n : {"M5", "U23", "Pi4"}) {
    auto f = named_fixture(n);
    for (const auto& core : all_cores(*f.L, f.G)) {
      auto H = partial(f, core);
      std::vector<int> prefix;
      auto prev = make(f, prefix);
      for (int h : H->blowup_order) {
        prefix.push_back(H->H[h]);
        auto next = make(f, prefix);
        for (bool hat : {true, false}) {
          if (!hat && prev->H->one_hat() < 0) continue;
          auto r = leray_blowup_map(LerayModel(prev, hat), LerayModel(next, hat));
          CHECK(r.relations_ok);
          CHECK(r.commutes_with_d);
          CHECK(r.rank == r.source_dim);
          CHECK(r.leads_match);
        }
        CHECK_THROWS_AS(leray_blowup_map(LerayModel(prev, true), LerayModel(next, false)), std::invalid_argument);
        prev = next;
      }
    }
  }
}

TEST_CASE("B needs 1hat in H") {
  auto f = named_fixture("M5");
  auto B = make(f, std::vector<int>{});
  CHECK_THROWS_AS(LerayModel(B, false), std::invalid_argument);
  CHECK_NOTHROW(LerayModel(B, true));
}
