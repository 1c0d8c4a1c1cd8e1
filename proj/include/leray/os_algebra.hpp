#pragma once

#include "leray/relations.hpp"

#include <map>
#include <memory>
#include <vector>

namespace leray {

// Orlik-Solomon algebra of a locally geometric semilattice. Atom labels give
// the variable order.
class OSAlgebra {
 public:
  explicit OSAlgebra(Semilattice L);

  const Semilattice& lattice() const { return L_; }
  std::vector<std::string> names() const;
  int top_degree() const { return top_; }

  bool face(Mask s) const { return join(s) >= 0; }
  int join(Mask s) const;  // element id, -1 if no upper bound
  bool independent(Mask s) const;
  const std::vector<Mask>& circuits() const { return circuits_; }
  const std::vector<Mask>& broken_circuits() const { return broken_; }
  bool nbc(Mask s) const;

  std::vector<Mask> nbc_basis(int i) const;  // sorted by the term order, largest first
  std::vector<int> dims() const;
  Element normal_form(const Element& a) const;
  // Coordinates of a reduced element in nbc_basis(i).
  std::vector<Q> coordinates(const Element& a, int i) const;

  // Dimension of E/(I1+I2) in degree i by elimination over all faces.
  int quotient_dim(int i) const;
  std::vector<Generator> generators() const;

  // Degree-i basis split by the join of each nbc set.
  std::map<int, std::vector<Mask>> brieskorn(int i) const;
  // Matrix of the boundary OS^i -> OS^{i-1} (columns indexed by nbc_basis(i)).
  QMatrix boundary_matrix(int i) const;
  // dim POS^i via the recurrence, and via the kernel of the boundary.
  std::vector<int> projective_dims() const;
  std::vector<int> boundary_kernel_dims() const;

 private:
  Semilattice L_;
  int top_ = 0;
  std::vector<int> label_elem_;
  std::vector<Mask> circuits_, broken_;
  std::vector<Mask> faces_;
  mutable std::unordered_map<Mask, int> join_memo_;
};

// Whether (OS(L), boundary) is exact in every degree.
bool boundary_exact(const OSAlgebra& os);

// Quotient of the span of rank-graded chains by the local sums, with delta.
class FlagComplex {
 public:
  explicit FlagComplex(const Semilattice& L);

  int top_degree() const { return static_cast<int>(chains_.size()) - 1; }
  const std::vector<std::vector<int>>& chains(int i) const { return chains_[i]; }
  int chain_index(int i, const std::vector<int>& chain) const;  // -1 if absent
  int dim(int i) const { return static_cast<int>(basis_[i].size()); }
  // Chain indices whose classes form the basis.
  const std::vector<int>& basis(int i) const { return basis_[i]; }
  // Top element of a basis vector.
  int basis_top(int i, int b) const { return chains_[i][basis_[i][b]].back(); }
  // Class of a combination of chains, in basis coordinates.
  std::vector<Q> project(int i, const SparseVec& chains) const;
  // Relations (as chain combinations) of degree i.
  const std::vector<SparseVec>& relations(int i) const { return relations_[i]; }

  // Matrix of delta: Fl^i -> Fl^{i+1}, columns indexed by basis(i).
  QMatrix delta(int i) const;
  // delta sends every relation to 0 in the quotient.
  bool delta_well_defined(int i) const;

  // fl(e_S) evaluated on a chain: signed count of orderings of S whose
  // partial joins give the chain.
  Q fl_value(Mask s, const std::vector<int>& chain) const;
  // Rows indexed by nbc_basis(i), columns by basis(i).
  QMatrix fl_matrix(const OSAlgebra& os, int i) const;
  // fl(e_S) vanishes on all relations, for every nbc S of degree i.
  bool fl_well_defined(const OSAlgebra& os, int i) const;

 private:
  const Semilattice* L_;
  std::vector<std::vector<std::vector<int>>> chains_;
  std::vector<std::map<std::vector<int>, int>> index_;
  std::vector<std::vector<SparseVec>> relations_;
  std::vector<Echelon> ech_;
  std::vector<std::vector<int>> basis_;
  std::vector<std::map<int, int>> basis_pos_;
};

struct OSPhiReport {
  bool relations_ok = false;
  int source_dim = 0, rank = 0;
  bool leads_match = false, leads_distinct = false;
};
// phi: OS(L(M,H)) -> OS(L(M,H u {p})), e_g -> e_g (+ e_p if g <= p).
OSPhiReport os_blowup_map(const PartialBlowup& small, const PartialBlowup& big);

}  // namespace leray
