#pragma once

#include "leray/linalg.hpp"
#include "leray/semilattice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace leray {

// e_S x^b over at most 64 variables, indexed in prec order. Exponent of
// variable i lives at x[63 - i] so that memcmp compares from the last
// variable down.
struct Mono {
  Mask e = 0;
  Mask xs = 0;
  std::uint16_t xd = 0;  // sum of exponents
  std::array<std::uint8_t, 64> x{};

  int exp(int i) const { return x[63 - i]; }
  void set_exp(int i, int b);
  int edeg() const { return popcount(e); }
  int xdeg() const { return xd; }
  int total() const { return 2 * xd + popcount(e); }
  Mask support() const { return e | xs; }
  bool operator==(const Mono& o) const { return e == o.e && xs == o.xs && x == o.x; }

  static Mono one() { return Mono{}; }
  static Mono ext(Mask s);
  static Mono var(int i, int b = 1);
};

// Graded lexicographic order: total degree, then the exterior part, then the
// polynomial part; within a part the later variable in prec order is larger,
// and every e is larger than every x.
int compare(const Mono& a, const Mono& b);
struct TermGreater {
  bool operator()(const Mono& a, const Mono& b) const { return compare(a, b) > 0; }
};
struct MonoHash {
  size_t operator()(const Mono& m) const;
};

bool divides(const Mono& a, const Mono& b);
// b / a, assuming divides(a, b); exterior parts are removed as sets.
Mono quotient(const Mono& b, const Mono& a);
// Product of monomials; sign is 0, 1 or -1.
Mono mono_mul(const Mono& a, const Mono& b, int* sign);

// Sparse element of R = Q[x] tensor Lambda[e], largest term first.
class Element {
 public:
  using Map = std::map<Mono, Q, TermGreater>;
  Element() = default;
  Element(const Mono& m, const Q& c = 1);
  static Element scalar(const Q& c);

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Map& terms() const { return t_; }
  Map& terms() { return t_; }
  const Mono& lead() const { return t_.begin()->first; }
  const Q& lead_coeff() const { return t_.begin()->second; }
  Q coeff(const Mono& m) const;

  void add(const Mono& m, const Q& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Q& c) const;
  bool operator==(const Element& o) const { return t_ == o.t_; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool homogeneous() const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  Map t_;
};

Element mul(const Element& a, const Element& b);
Element mul(const Mono& m, const Element& b);
// d(e_g) = x_g, d(x_g) = 0, graded Leibniz rule.
Element differential(const Element& a);
// Boundary on the exterior part: d(e_g) = 1.
Element boundary(const Element& a);
// Algebra map given on generators.
Element substitute(const Element& a, const std::vector<Element>& e_img, const std::vector<Element>& x_img);

std::string mono_str(const Mono& m, const std::vector<std::string>& names);

}  // namespace leray
