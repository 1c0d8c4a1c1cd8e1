#include "leray/fixtures.hpp"
#include "leray/os_algebra.hpp"
#include "leray/relations.hpp"

#include <doctest.h>

#include <random>

using namespace leray;

namespace {

Element e(std::initializer_list<int> s) {
  Mask m = 0;
  for (int i : s) m |= bit(i);
  return Element(Mono::ext(m));
}
Element x(int i, int b = 1) { return Element(Mono::var(i, b)); }

// Random element over n variables: a few terms with small exponents.
Element random_element(std::mt19937& rng, int n, int terms = 3) {
  std::uniform_int_distribution<int> coin(0, 3), coef(-3, 3), var(0, n - 1);
  Element a;
  for (int t = 0; t < terms; ++t) {
    Mono m;
    for (int i = 0; i < n; ++i)
      if (coin(rng) == 0) m.e |= bit(i);
    int sign = 1;
    if (coin(rng) == 0) m = mono_mul(m, Mono::var(var(rng)), &sign);
    int c = coef(rng);
    if (c) a.add(m, c);
  }
  return a;
}

int parity(const Element& a) { return a.is_zero() ? 0 : a.lead().edeg() % 2; }

}  // namespace

TEST_CASE("Koszul signs") {
  CHECK(mul(e({1}), e({0})) == mul(e({0}), e({1})) * -1);
  CHECK(mul(e({0}), e({0})).is_zero());
  CHECK(mul(e({2}), mul(e({0}), e({1}))) == mul(mul(e({0}), e({1})), e({2})));  // even degree is central
  CHECK(mul(x(3), e({1})) == mul(e({1}), x(3)));
  CHECK(mul(x(0), x(0)) == x(0, 2));
  int sign = 7;
  mono_mul(Mono::ext(bit(0)), Mono::ext(bit(0)), &sign);
  CHECK(sign == 0);
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    auto a = random_element(rng, 5), b = random_element(rng, 5), c = random_element(rng, 5);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
    CHECK(mul(a, b) + mul(b, a) * -1 == mul(a, b) - mul(b, a));
  }
}

TEST_CASE("d and the boundary are square zero derivations") {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    // homogeneous in the exterior degree so the sign is well defined
    auto a = e({0, 2}) * 2 + mul(x(1), e({3, 4}));
    auto b = random_element(rng, 5, 1);
    if (t % 2) a = random_element(rng, 5, 1);
    int sa = parity(a) ? -1 : 1;
    CHECK(differential(differential(b)).is_zero());
    CHECK(boundary(boundary(b)).is_zero());
    CHECK(differential(mul(a, b)) == mul(differential(a), b) + mul(a, differential(b)) * sa);
    CHECK(boundary(mul(a, b)) == mul(boundary(a), b) + mul(a, boundary(b)) * sa);
  }
  CHECK(differential(e({2})) == x(2));
  CHECK(boundary(e({2})) == Element::scalar(1));
  CHECK(differential(x(2)).is_zero());
}

TEST_CASE("exact linear algebra") {
  QMatrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = 3 * i + j + 1;
  CHECK(rank(m) == 2);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  for (int i = 0; i < 3; ++i) {
    Q s = 0;
    for (int j = 0; j < 3; ++j) s += m(i, j) * k[0][j];
    CHECK(s == 0);
  }
  QMatrix h(3, 3);  // Hilbert matrix, invertible over Q
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = Q(1, i + j + 1);
  CHECK(rank(h) == 3);
  std::vector<Q> sol;
  REQUIRE(solve(h, {1, 0, 0}, &sol));
  CHECK(sol == std::vector<Q>{9, -36, 30});
  CHECK(rank(QMatrix(2, 4)) == 0);
  CHECK((h * QMatrix::identity(3)) == h);
  CHECK(rank_mod_p({{{0, 1}, {1, 2}}, {{0, 2}, {1, 4}}}) == 1);
}

TEST_CASE("boundary on OS^2 of U23") {
  OSAlgebra os(*named_fixture("U23").L);
  CHECK(os.dims() == std::vector<int>{1, 3, 2});
  CHECK(rank(os.boundary_matrix(2)) == 2);
}

TEST_CASE("normal form of e2 e4 in B(M5)") {
  auto f = named_fixture("M5");
  // non-nested once 124 is in H
  std::shared_ptr<const PartialBlowup> full(build_semilattice(partial(f, std::vector<std::string>{"1hat", "124", "135"})));
  GroebnerSystem gs_full(full, true);
  const auto& Hf = *full->H;
  int i2 = Hf.index_of[parse_flat(*f.L, "2")], i4 = Hf.index_of[parse_flat(*f.L, "4")];
  CHECK(gs_full.normal_form(e({i2, i4})).is_zero());

  // with H° = {1hat} the circuit 124 rewrites it in terms of e1
  std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat"})));
  GroebnerSystem gs(B, true);
  const auto& H = *B->H;
  int a = H.index_of[parse_flat(*f.L, "1")], b = H.index_of[parse_flat(*f.L, "2")],
      c = H.index_of[parse_flat(*f.L, "4")];
  auto nf = gs.normal_form(e({b, c}));
  CHECK(nf.size() == 2);
  CHECK(nf.coeff(Mono::ext(bit(a) | bit(b))) * nf.coeff(Mono::ext(bit(a) | bit(c))) == -1);
  for (const auto& [m, q] : nf.terms()) CHECK(gs.nbc(m.e));
  CHECK(boundary(nf) == boundary(e({b, c})));
  CHECK(OSAlgebra(B->lat).normal_form(e({b, c})) == nf);
}

TEST_CASE("normal form is linear, idempotent and agrees with explicit reduction") {
  auto f = named_fixture("M5");
  for (bool kill : {true, false}) {
    std::shared_ptr<const PartialBlowup> B(build_semilattice(partial(f, std::vector<std::string>{"1hat"})));
    GroebnerSystem gs(B, kill);
    auto generators = gs.groebner_generators();
    std::vector<Element> gens;
    for (const auto& g : generators) gens.push_back(g.f);
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
      auto p = random_element(rng, gs.n()), q = random_element(rng, gs.n());
      auto np = gs.normal_form(p);
      CHECK(gs.normal_form(np) == np);
      CHECK(gs.normal_form(p + q * 3) == np + gs.normal_form(q) * 3);
      CHECK(normal_form_by(p, gens) == np);
      for (const auto& [m, c] : np.terms()) CHECK(gs.standard(m));
    }
    auto rep = check_groebner(generators, [&](const Element& a) { return gs.normal_form(a); }, gs.names());
    CHECK(rep.failures == 0);
    CHECK(rep.pairs > 0);
  }
}
