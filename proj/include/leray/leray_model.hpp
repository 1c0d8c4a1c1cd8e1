#pragma once

#include "leray/dp_algebra.hpp"
#include "leray/os_algebra.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace leray {

// Bidegrees are written (a, j): a is the polynomial degree (cohomological
// degree 2a) and j the exterior degree. d maps (a, j) to (a + 1, j - 1).
class LerayModel {
 public:
  // hat = true gives B-hat; otherwise B, which needs 1hat in H.
  LerayModel(std::shared_ptr<const PartialBlowup> B, bool hat);

  const GroebnerSystem& system() const { return gs_; }
  const PartialBlowup& blowup() const { return gs_.blowup(); }
  std::shared_ptr<const PartialBlowup> blowup_ptr() const { return B_; }
  bool hat() const { return hat_; }
  int r() const { return gs_.H().L().r(); }
  int max_a() const { return gs_.max_xdeg(); }
  int max_j() const;

  const std::vector<Mono>& basis(int a, int j) const;
  int dim(int a, int j) const { return static_cast<int>(basis(a, j).size()); }
  std::map<std::pair<int, int>, int> table() const;  // nonzero entries only
  Element normal_form(const Element& x) const { return gs_.normal_form(x); }
  std::vector<Q> coordinates(const Element& x, int a, int j) const;

  QMatrix d_matrix(int a, int j) const;  // columns = basis(a, j)
  bool d_squared_zero() const;
  bool d_integral() const;  // every matrix entry is an integer

  // cohomology()[k][p] is the cohomology of line k at position p, i.e. at
  // bidegree (p, k - p).
  std::vector<std::vector<int>> cohomology(int threads = 1) const;

  struct Block {
    int y = 0, a = 0, j = 0;
    int count = 0;      // basis monomials with join of the e-part equal to y
    int predicted = 0;  // nbc sets with join y times dim D^a_y
  };
  // Fine decomposition by the join of the exterior support.
  std::vector<Block> decomposition() const;

 private:
  std::shared_ptr<const PartialBlowup> B_;
  bool hat_;
  GroebnerSystem gs_;
  mutable std::map<std::pair<int, int>, std::vector<Mono>> basis_;
  mutable std::mutex mu_;
};

struct LerayPhiReport {
  bool relations_ok = false;
  bool commutes_with_d = false;
  int source_dim = 0, rank = 0;
  bool leads_match = false, leads_distinct = false;
  std::string first_failure;
};
LerayPhiReport leray_blowup_map(const LerayModel& small, const LerayModel& big);

// The map of OS(M) into row a = 0 sending e_g to the sum of e_h over h >= g
// in H. For B-hat the whole of OS(M) is used, for B the kernel of the
// boundary (POS). Reports whether the image consists of cocycles and has
// full rank, per degree.
struct CohomologyMapReport {
  std::vector<int> source_dims, image_ranks, h0;
  bool cocycles = false;
};
CohomologyMapReport os_to_model(const LerayModel& m);

// Dual complex in the decomposition basis: checks that the decomposition
// map is an isomorphism in every bidegree and that the transpose of d,
// written through the flag pairing and the local duality pairings, is
// delta tensored with the restriction maps of D.
struct DualCheckReport {
  bool decomposition_iso = false;
  long entries = 0, mismatches = 0;
  bool dual_d_squared_zero = false;
  std::string first_failure;
};
DualCheckReport dual_complex_check(const LerayModel& m);

}  // namespace leray
