#include "leray/fixtures.hpp"
#include "leray/os_algebra.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace leray;

namespace {

std::vector<int> trim(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

// Coefficients of p / (1 + t), assuming exact division.
std::vector<int> divide_by_one_plus_t(const std::vector<int>& p) {
  std::vector<int> q(p.size() - 1);
  int carry = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    q[i] = p[i] - carry;
    carry = q[i];
  }
  REQUIRE(p.back() == carry);
  return q;
}

}  // namespace

TEST_CASE("nbc dims against the circuit oracle") {
  for (const char* n : {"M5", "U23", "B3", "Pi4", "Pi5"}) {
    auto f = named_fixture(n);
    std::vector<oracle::Set> circuits(f.matroid.circuits.begin(), f.matroid.circuits.end());
    OSAlgebra os(*f.L);
    auto expect = trim(oracle::nbc_counts(f.matroid.size(), circuits));
    CHECK(os.dims() == expect);
    for (int i = 0; i < static_cast<int>(expect.size()); ++i) CHECK(os.quotient_dim(i) == expect[i]);
    CHECK(trim(os.projective_dims()) == divide_by_one_plus_t(expect));
    CHECK(trim(os.projective_dims()) == trim(os.boundary_kernel_dims()));
  }
  CHECK(OSAlgebra(*named_fixture("M5").L).dims() == std::vector<int>{1, 5, 8, 4});
  CHECK(trim(OSAlgebra(*named_fixture("M5").L).projective_dims()) == std::vector<int>{1, 4, 4});
  CHECK(trim(OSAlgebra(*named_fixture("U23").L).projective_dims()) == std::vector<int>{1, 2});
}

TEST_CASE("OS of a blowup: faces are nested sets") {
  auto f = named_fixture("M5");
  for (const auto& core : all_cores(*f.L, f.G)) {
    auto B = build_semilattice(partial(f, core));
    OSAlgebra os(B->lat);
    for (Mask s = 0; s < bit(B->H->size()); ++s) CHECK(os.face(s) == B->nested->nested(s));
    auto dims = os.dims();
    for (int i = 0; i < static_cast<int>(dims.size()); ++i) CHECK(os.quotient_dim(i) == dims[i]);
    CHECK(boundary_exact(os));
  }
}

TEST_CASE("Brieskorn decomposition of OS(M5)") {
  auto f = named_fixture("M5");
  const auto& L = *f.L;
  OSAlgebra os(L);
  auto b2 = os.brieskorn(2);
  std::map<std::string, int> blocks;
  int total = 0;
  for (const auto& [x, v] : b2) {
    blocks[L.order.label(x)] = static_cast<int>(v.size());
    total += static_cast<int>(v.size());
  }
  // 124 and 135 are copies of U23, the other rank 2 flats are Boolean
  CHECK(blocks == std::map<std::string, int>{{"124", 2}, {"135", 2}, {"23", 1}, {"25", 1}, {"34", 1}, {"45", 1}});
  CHECK(total == 8);
  for (int i = 0; i <= os.top_degree(); ++i) {
    int sum = 0;
    for (const auto& [x, v] : os.brieskorn(i)) {
      CHECK(L.rank(x) == i);
      sum += static_cast<int>(v.size());
    }
    CHECK(sum == os.dims()[i]);
  }
}

TEST_CASE("fl on M5") {
  auto f = named_fixture("M5");
  const auto& L = *f.L;
  FlagComplex F(L);
  OSAlgebra os(L);
  int one = parse_flat(L, "1"), two = parse_flat(L, "2"), four = parse_flat(L, "4"), x = parse_flat(L, "124");
  Mask e12 = bit(0) | bit(1);
  CHECK(F.fl_value(e12, {L.bottom, one, x}) == 1);
  CHECK(F.fl_value(e12, {L.bottom, two, x}) == -1);
  CHECK(F.fl_value(e12, {L.bottom, four, x}) == 0);
  CHECK(F.fl_value(e12, {L.bottom, one}) == 0);
  for (int i = 0; i <= os.top_degree(); ++i) {
    CHECK(F.dim(i) == os.dims()[i]);
    auto m = F.fl_matrix(os, i);
    CHECK(rank(m) == os.dims()[i]);
    CHECK(F.fl_well_defined(os, i));
    CHECK(F.delta_well_defined(i));
  }
}

TEST_CASE("fl intertwines the boundary with the dual of delta") {
  for (const char* n : {"M5", "U23", "B3", "Pi4"}) {
    auto f = named_fixture(n);
    FlagComplex F(*f.L);
    OSAlgebra os(*f.L);
    for (int i = 1; i <= os.top_degree(); ++i) {
      // boundary_matrix(i): OS^i -> OS^{i-1}; delta(i-1): Fl^{i-1} -> Fl^i
      auto lhs = os.boundary_matrix(i).transpose() * F.fl_matrix(os, i - 1);
      auto rhs = F.fl_matrix(os, i) * F.delta(i - 1);
      CHECK(lhs.rows() == rhs.rows());
      CHECK(lhs.cols() == rhs.cols());
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("OS blowup maps are injective") {
  for (const char* n : {"M5", "U23", "Pi4"}) {
    auto f = named_fixture(n);
    for (const auto& core : all_cores(*f.L, f.G)) {
      auto chain = std::vector<std::shared_ptr<const PartialBlowup>>{};
      auto H = partial(f, core);
      std::vector<int> prefix;
      chain.push_back(build_semilattice(partial(f, prefix)));
      for (int h : H->blowup_order) {
        prefix.push_back(H->H[h]);
        chain.push_back(build_semilattice(partial(f, prefix)));
      }
      for (size_t k = 0; k + 1 < chain.size(); ++k) {
        auto r = os_blowup_map(*chain[k], *chain[k + 1]);
        CHECK(r.relations_ok);
        CHECK(r.rank == r.source_dim);
        CHECK(r.leads_match);
      }
    }
  }
}
