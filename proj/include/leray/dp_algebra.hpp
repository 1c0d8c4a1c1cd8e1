#pragma once

#include "leray/relations.hpp"

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace leray {

// D(M,H): the exterior-degree-0 part of the Gröbner system. Degrees are
// polynomial degrees (half the cohomological degree).
class DPAlgebra {
 public:
  explicit DPAlgebra(std::shared_ptr<const PartialBlowup> B);

  const GroebnerSystem& system() const { return gs_; }
  const PartialBlowup& blowup() const { return gs_.blowup(); }
  int r() const;  // rank of L_M minus one
  int one_hat() const { return gs_.H().one_hat(); }

  std::vector<Mono> basis(int k) const { return gs_.basis(k, 0); }
  std::vector<int> dims() const;  // up to the last nonzero degree
  int quotient_dim(int k) const { return gs_.quotient_dim(k, 0); }
  Element normal_form(const Element& a) const { return gs_.normal_form(a); }
  std::vector<Q> coordinates(const Element& a, int k) const;

  // Sign and monomial of the dual basis element; requires 1hat in H.
  std::pair<int, Mono> epsilon(const Mono& m) const;
  Element mu() const;  // (-1)^r x_1hat^r
  // Coefficient of mu in uv; 0 if the degrees do not add up to r.
  Q pairing(const Element& u, const Element& v) const;
  // Entry (i, j) = <basis_k[i], epsilon(basis_k[j])>.
  QMatrix pairing_matrix(int k) const;
  // x_T^b epsilon(x_T^b) == (-1)^r x_1hat^r in D, as stated.
  bool epsilon_product_ok(const Mono& m) const;

 private:
  GroebnerSystem gs_;
};

// D_y = Q[x_h : h in H] / J_y, computed degree by degree by elimination over
// the monomials whose support is compatible with supp(y). The basis in
// each degree is the set of non-pivot columns with columns ordered largest
// first, i.e. the standard monomials of the induced order.
class LocalDP {
 public:
  LocalDP(std::shared_ptr<const PartialBlowup> B, int y);

  const PartialBlowup& blowup() const { return *B_; }
  std::shared_ptr<const PartialBlowup> blowup_ptr() const { return B_; }
  int y() const { return y_; }
  Mask support() const { return S_; }
  bool admissible(const Mono& m) const;  // S_ union supp(m) nested

  int top_degree() const { return static_cast<int>(deg_.size()) - 1; }
  std::vector<int> dims() const;
  int dim() const;
  const std::vector<Mono>& basis(int k) const;
  // Coordinates of a homogeneous polynomial of degree k.
  std::vector<Q> coordinates(const Element& a, int k) const;
  // Matrix of the restriction D_y -> D_z in degree k (columns = basis of y).
  QMatrix restriction(const LocalDP& z, int k) const;

  // Local duality: mu_y and the coefficient of mu_y in uv.
  Element mu() const;
  int mu_degree() const;
  Q pairing(const Element& u, const Element& v) const;

 private:
  struct Degree {
    std::vector<Mono> cols;
    std::unordered_map<Mono, int, MonoHash> col;
    Echelon ech;
    std::vector<Mono> basis;
    std::vector<int> basis_pos;  // column -> basis index or -1
  };
  std::vector<Mono> admissible_monomials(int k) const;
  SparseVec to_columns(const Degree& d, const Element& a) const;

  std::shared_ptr<const PartialBlowup> B_;
  int y_;
  Mask S_;
  std::vector<Element> c_atoms_;
  std::vector<Degree> deg_;
};

// Hilbert series helpers.
std::vector<int> hilbert_product(const std::vector<int>& a, const std::vector<int>& b);
bool palindromic(const std::vector<int>& h);

struct TensorFactor {
  int g = 0, z = 0;  // lattice ids
  LocalBuildingSet local;
  std::shared_ptr<const PartialBlowup> blowup;
  std::vector<int> dims;
  std::vector<int> to_global;  // local H index -> global H index (core only), -1 otherwise
};

struct TensorReport {
  std::vector<TensorFactor> factors;
  std::vector<int> local_dims, product_dims;
  bool dims_match = false;
  bool psi_defined = false;         // every local core element has a preimage
  int psi_rank = 0;                 // rank of the images of the product basis
  bool psi_multiplicative = false;  // psi(x_p u) = x_p psi(u)
  std::string failure;
};
// Requires pi(y) != 1hat. check_psi builds the multiplication maps.
TensorReport tensor_decompose(std::shared_ptr<const PartialBlowup> B, int y, bool check_psi = true);

struct DPPhiReport {
  bool c_maps_to_c = false;
  bool relations_ok = false;
  int source_dim = 0, rank = 0;
  int stalks = 0, stalk_failures = 0;
  std::string first_failure;
};
// Global map and, if stalks is set, the stalkwise maps D_{pi(y)} -> D'_y
// with the cokernel Hilbert series compared to the predicted one.
DPPhiReport dp_blowup_map(std::shared_ptr<const PartialBlowup> small, std::shared_ptr<const PartialBlowup> big,
                          bool stalks = true);

// Images of the variables of H under the blowup map into H' = H + {p}.
std::vector<Element> dp_phi_images(const PartialBuildingSet& small, const PartialBuildingSet& big);
int added_element(const PartialBuildingSet& small, const PartialBuildingSet& big);
// Blowdown of an element of L(M,H') to L(M,H).
int blowdown_element(const PartialBlowup& small, const PartialBlowup& big, int y);

}  // namespace leray
