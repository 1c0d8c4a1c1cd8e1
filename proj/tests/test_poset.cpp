#include "leray/fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace leray;

namespace {

Poset chain_poset(int n) {
  std::vector<std::pair<int, int>> cov;
  for (int i = 0; i + 1 < n; ++i) cov.emplace_back(i, i + 1);
  return Poset::from_covers(n, cov);
}

Poset boolean_lattice(int n) {
  return Poset::from_leq(1 << n, [](int a, int b) { return (a & b) == a; });
}

int id(const Semilattice& L, const std::string& s) { return parse_flat(L, s); }

}  // namespace

TEST_CASE("join of atoms in M5") {
  auto f = named_fixture("M5");
  const auto& L = *f.L;
  CHECK(L.join_of({id(L, "2"), id(L, "4")}) == id(L, "124"));
  CHECK(L.join_of({}) == L.bottom);
  CHECK(L.join_of({id(L, "2"), id(L, "3")}) == id(L, "23"));
}

TEST_CASE("blowing up 1hat of U23 removes the join of two atoms") {
  auto f = named_fixture("U23");
  const auto& L = *f.L;
  auto b = blowup(L, *L.top(), 3);
  int a1 = b.kept[id(L, "1")], a2 = b.kept[id(L, "2")];
  CHECK_FALSE(b.lat.join(a1, a2).has_value());
  CHECK(b.lat.size() == 8);
}

TEST_CASE("intervals") {
  auto pi4 = named_fixture("Pi4");
  const auto& P = *pi4.L;
  int x = id(P, "12");
  auto [I, to] = P.order.interval(x, *P.top());
  CHECK(I.height() == 2);
  CHECK(I.size() == 5);  // Pi_3 shape: bottom, 3 atoms, top
  CHECK(is_geometric_lattice(I));

  auto m5 = named_fixture("M5");
  const auto& L = *m5.L;
  auto [J, to2] = L.order.interval(L.bottom, id(L, "124"));
  CHECK(J.height() == 2);
  CHECK(J.size() == 5);
  auto [K, to3] = L.order.interval(id(L, "3"), id(L, "3"));
  CHECK(K.size() == 1);

  auto [full, to4] = L.order.interval(L.bottom, *L.top());
  CHECK(full.size() == L.size());
  CHECK(full.covers().size() == L.order.covers().size());
}

TEST_CASE("geometric lattice recognition") {
  CHECK(is_geometric_lattice(named_fixture("M5").L->order));
  CHECK_FALSE(is_geometric_lattice(chain_poset(4)));
  CHECK(is_geometric_lattice(boolean_lattice(3)));
  // pentagon: a lattice that is not semimodular
  auto N5 = Poset::from_covers(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  CHECK_FALSE(is_geometric_lattice(N5));
}

TEST_CASE("chains") {
  auto anti = Poset::from_covers(2, {});
  CHECK(anti.chains(1).empty());
  CHECK(chain_poset(3).chains(2).size() == 1);

  // chains x0 < x1 < x2 in the lattice of flats of M5, counted on the raw
  // flats ordered by inclusion
  std::vector<oracle::Set> circuits = {0b01011, 0b10101, 0b11110};
  auto fl = oracle::flats(5, circuits);
  long count = 0;
  for (auto a : fl)
    for (auto b : fl)
      for (auto c : fl)
        if (a != b && b != c && oracle::contains(b, a) && oracle::contains(c, b)) ++count;
  CHECK(static_cast<long>(named_fixture("M5").L->order.chains(2).size()) == count);
}

TEST_CASE("ranks are well defined on every fixture lattice and blowup") {
  for (const char* n : {"M5", "U23", "B3max", "Pi4"}) {
    auto f = named_fixture(n);
    CHECK(f.L->order.is_ranked());
    for (const auto& core : all_cores(*f.L, f.G)) {
      auto B = build_semilattice(partial(f, core));
      CHECK(B->lat.order.is_ranked());
      // every maximal chain below x has length rank(x)
      for (int x = 0; x < B->lat.size(); ++x) CHECK(B->lat.order.interval_length(B->lat.bottom, x) == B->lat.rank(x));
    }
  }
}

TEST_CASE("join is associative on subsets") {
  auto f = named_fixture("Pi4");
  const auto& L = *f.L;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, L.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> S, T;
    for (int i = 0; i < 2; ++i) S.push_back(pick(rng));
    for (int i = 0; i < 2; ++i) T.push_back(pick(rng));
    auto st = S;
    st.insert(st.end(), T.begin(), T.end());
    auto js = L.join_of(S), jt = L.join_of(T), all = L.join_of(st);
    REQUIRE(js.has_value());
    REQUIRE(jt.has_value());
    CHECK(L.join_of({*js, *jt}) == all);
  }
}

TEST_CASE("opposite poset and covers") {
  auto B3 = boolean_lattice(3);
  auto op = B3.opposite();
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) CHECK(B3.leq(a, b) == op.leq(b, a));
  CHECK(B3.covers().size() == 12);
  CHECK_THROWS_AS(Poset::from_leq(2, [](int, int) { return true; }), PosetError);
}
