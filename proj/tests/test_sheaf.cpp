#include "leray/fixtures.hpp"
#include "leray/poset_sheaf.hpp"

#include <doctest.h>

using namespace leray;

namespace {

std::shared_ptr<const Poset> chain(int n) {
  std::vector<std::pair<int, int>> cov;
  for (int i = 0; i + 1 < n; ++i) cov.emplace_back(i, i + 1);
  return std::make_shared<const Poset>(Poset::from_covers(n, cov));
}

// a, b < c, d: the order complex is a circle
std::shared_ptr<const Poset> crown() {
  return std::make_shared<const Poset>(Poset::from_covers(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
}

std::vector<int> trim(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

TEST_CASE("interval poset of a two element chain") {
  auto I = interval_poset(*chain(2));
  CHECK(I.poset->size() == 3);
  int mid = I.index.at({0, 1});
  CHECK(I.poset->comparable(mid, I.index.at({0, 0})));
  CHECK(I.poset->comparable(mid, I.index.at({1, 1})));
  CHECK_FALSE(I.poset->comparable(I.index.at({0, 0}), I.index.at({1, 1})));
  CHECK(I.iota.size() == 2);
  CHECK(I.pairs[I.iota[1]] == std::pair<int, int>{0, 1});
  // n(n+1)/2 intervals in a chain
  CHECK(interval_poset(*chain(5)).poset->size() == 15);
}

TEST_CASE("constant sheaf cohomology is order complex cohomology") {
  for (auto P : {chain(1), chain(4), crown()}) {
    auto h = sheaf_cohomology(constant_sheaf(P));
    CHECK(h.exact);
    CHECK(trim(h.dims) == trim(order_complex_cohomology(*P)));
  }
  CHECK(trim(order_complex_cohomology(*crown())) == std::vector<int>{1, 1});
  CHECK(trim(order_complex_cohomology(*chain(4))) == std::vector<int>{1});
  auto two = std::make_shared<const Poset>(Poset::from_covers(2, {}));
  CHECK(trim(sheaf_cohomology(constant_sheaf(two, 2)).dims) == std::vector<int>{4});
}

TEST_CASE("skyscrapers and extension by zero") {
  auto P = crown();
  for (int y = 0; y < 4; ++y) {
    auto S = skyscraper_up(P, y, 2);
    CHECK(S.functorial());
    CHECK(trim(sheaf_cohomology(S).dims) == std::vector<int>{2});
  }
  auto C = chain(3);
  auto ideal = chain(2);
  auto E = extend_by_zero(C, {0, 1}, constant_sheaf(ideal));
  CHECK(E.dims() == std::vector<int>{1, 1, 0});
  CHECK(E.functorial());
  CHECK(global_sections(E).dim() == 0);  // the section at 2 is 0 and must restrict to it
}

TEST_CASE("pushforward to a point counts components") {
  auto pt = chain(1);
  auto two = std::make_shared<const Poset>(Poset::from_covers(2, {}));
  CHECK(pushforward(pt, {0, 0}, constant_sheaf(two)).dim(0) == 2);
  CHECK(pushforward(pt, {0, 0, 0, 0}, constant_sheaf(crown())).dim(0) == 1);
  auto back = pullback(crown(), {0, 0, 0, 0}, constant_sheaf(pt, 3));
  CHECK(back.dims() == std::vector<int>{3, 3, 3, 3});
  CHECK(back.functorial());
}

TEST_CASE("maps that are not order preserving are rejected") {
  auto C = chain(2);
  CHECK_NOTHROW(check_order_preserving(*C, *C, {0, 1}));
  CHECK_THROWS_AS(check_order_preserving(*C, *C, {1, 0}), PosetMapError);
  CHECK_THROWS_AS(check_order_preserving(*C, *C, {0}), PosetMapError);
}

TEST_CASE("tensor products and functoriality") {
  auto P = crown();
  auto T = tensor(constant_sheaf(P, 2), skyscraper_up(P, 2, 3));
  CHECK(T.dims() == std::vector<int>{0, 0, 6, 0});
  CHECK(T.functorial());
  CHECK(T.total_dim() == 6);
}

TEST_CASE("flag sheaf on M5") {
  auto f = named_fixture("M5");
  FlagComplex Fl(*f.L);
  auto S = flag_sheaf(*f.L, Fl);
  for (size_t j = 0; j < S.F.size(); ++j) {
    CHECK(S.F[j].functorial());
    CHECK(flasque(S.F[j]));
    CHECK(global_sections(S.F[j]).dim() == Fl.dim(static_cast<int>(j)));
    if (j + 1 < S.F.size()) CHECK(S.delta[j].natural(S.F[j], S.F[j + 1]));
  }
}

TEST_CASE("sections of C and the resolution of iota_! D") {
  for (const char* n : {"M5", "U23"}) {
    auto f = named_fixture(n);
    std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat"})));
    LerayModel m(B, false);
    auto r = build_C_and_verify(m);
    CHECK(r.gamma_dims_match);
    CHECK(r.diagonal_iso);
    CHECK(r.intertwines);
    CHECK(r.dual.mismatches == 0);
    CHECK(r.acyclic);
    CHECK(r.resolution_ok);
    CHECK(r.flag_flasque);
    CHECK(r.all_exact);
    CHECK(r.ok());
    for (const auto& [ij, d] : r.model_dims) CHECK(r.gamma_dims.at(ij) == d);
  }
}

TEST_CASE("the interval poset size is capped") {
  auto f = named_fixture("M5");
  std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat"})));
  LerayModel m(B, false);
  SheafCheckOptions o;
  o.max_poset_size = 10;
  CHECK_THROWS_AS(build_C_and_verify(m, o), CapExceeded);
  CHECK_THROWS_AS(build_C_and_verify(LerayModel(B, true)), std::invalid_argument);
}
