#pragma once

#include "leray/algebra.hpp"
#include "leray/blowup.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace leray {

// A generator of the ideal I(M,H) with its type, for the S-polynomial
// harness and for listing.
struct Generator {
  enum Kind { NonNested, Circuit, Linear, OneHat } kind;
  Element f;
  std::string describe;
};

// R(H) modulo the ideal generated by the non-nested monomials, the circuit
// boundaries and the powers of c_g. Reduction uses the lead terms directly;
// the generators are only materialised for certification.
class GroebnerSystem {
 public:
  // kill_one_hat: also quotient by e_1hat (the algebra B rather than B-hat).
  GroebnerSystem(std::shared_ptr<const PartialBlowup> B, bool kill_one_hat);

  const PartialBlowup& blowup() const { return *B_; }
  const PartialBuildingSet& H() const { return *B_->H; }
  int n() const { return H().size(); }
  bool kills_one_hat() const { return kill_one_hat_; }
  std::vector<std::string> names() const;

  bool nested(Mask s) const { return B_->nested->nested(s); }
  // Lattice id of the join of the members of s strictly below g (bottom if none).
  int join_below(Mask s, int g) const;
  int bound(Mask s, int g) const;  // d(join_below(s, g), g)

  const std::vector<Mask>& nested_circuits() const;
  bool nbc(Mask e) const;
  bool standard(const Mono& m) const;

  const Element& c(int g) const { return c_[g]; }
  Element c_power(int g, int d) const;

  Element normal_form(const Element& a) const;
  Element normal_form(const Mono& m) const { return normal_form(Element(m)); }

  // All monomials of the given x-degree and exterior degree whose support
  // is nested (the remaining ones lie in the ideal).
  std::vector<Mono> nested_monomials(int xdeg, int edeg) const;
  // Standard monomials, i.e. the additive basis of the quotient.
  std::vector<Mono> basis(int xdeg, int edeg) const;
  int max_xdeg() const;  // no standard monomials above this x-degree

  // Gröbner generators of types (i), (ii), (iii') (and e_1hat).
  std::vector<Generator> groebner_generators() const;
  // Generators of the defining presentation: (i), (ii), c_a for atoms a.
  std::vector<Generator> presentation_generators() const;

  // Quotient dimension in a bidegree computed by spanning the ideal with
  // the presentation generators and eliminating. Independent of the
  // reduction above.
  int quotient_dim(int xdeg, int edeg) const;
  // Whether every Gröbner generator of the given bidegree lies in the span
  // of the presentation ideal in that bidegree.
  bool generators_in_presentation_span(int xdeg, int edeg, std::string* why = nullptr) const;

 private:
  std::vector<Mono> monomials(int xdeg, int edeg, bool only_standard) const;
  void ideal_span(int xdeg, int edeg, const std::vector<Mono>& cols,
                  const std::unordered_map<Mono, int, MonoHash>& col, Echelon* ech) const;
  void ensure_circuits() const;

  std::shared_ptr<const PartialBlowup> B_;
  bool kill_one_hat_;
  int one_hat_ = -1;
  mutable std::vector<Mask> circuits_;
  mutable std::vector<Mask> broken_;  // circuit minus its first element, same order
  mutable std::once_flag circuits_once_;
  mutable std::unordered_map<Mask, int> join_memo_;
  std::vector<Mask> below_;   // H index -> H indices strictly below (in L_M)
  std::vector<Element> c_;
  mutable std::unordered_map<long, Element> cpow_;
  mutable std::mutex mu_;
};

// S-polynomial of f and g with respect to the term order; exterior parts of
// the lcm are unions.
Element s_polynomial(const Element& f, const Element& g);

struct GroebnerReport {
  long pairs = 0, self_products = 0, failures = 0;
  std::string first_failure;
};
// Checks that every S-polynomial and every product e_h * f with h in the
// exterior part of lead(f) reduces to 0.
GroebnerReport check_groebner(const std::vector<Generator>& gens,
                              const std::function<Element(const Element&)>& nf,
                              const std::vector<std::string>& names);

// Reduction against an explicit generator list: the largest reducible term
// is reduced first, always by the earliest generator whose lead divides it.
Element normal_form_by(const Element& a, const std::vector<Element>& gens);

}  // namespace leray
