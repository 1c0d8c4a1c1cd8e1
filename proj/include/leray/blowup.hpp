#pragma once

#include "leray/matroid.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace leray {

struct BlowupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of one combinatorial blowup. Elements {x : x !>= p} keep their
// relative order and come first (in old id order), followed by the pairs
// (p, x) for x in L_(p).
struct BlownUp {
  Semilattice lat;
  std::vector<int> blowdown;  // new id -> old id, x -> x, (p,x) -> p v x
  std::vector<int> kept;      // old id -> new id, -1 if x >= p
  std::vector<int> paired;    // old id x -> new id of (p,x), -1 if absent
};
BlownUp blowup(const Semilattice& L, int p, int new_label);

// Atoms of L_M lie in H; core = H minus atoms is an order filter of G.
// Index of an element of H is its position in prec order, which is also
// its atom label in L(M,H) and its variable index in the algebras.
struct PartialBuildingSet {
  std::shared_ptr<const GeometricLattice> lattice;
  BuildingSet G;
  std::vector<int> H;             // lattice ids, prec order
  std::vector<int> index_of;      // lattice id -> H index or -1
  std::vector<int> blowup_order;  // H indices of the core, in blowup order

  int size() const { return static_cast<int>(H.size()); }
  Mask core() const;
  Mask atoms() const;
  bool in_H(int lattice_id) const { return index_of[lattice_id] >= 0; }
  int one_hat() const;  // H index of the top, -1 if absent
  const GeometricLattice& L() const { return *lattice; }
  std::string name(int h) const { return lattice->order.label(H[h]); }
  std::string set_name(Mask s) const;
};

// core: lattice ids of the core. order (optional): full prec order of H as
// lattice ids; it must be a reverse linear extension.
PartialBuildingSet make_partial(std::shared_ptr<const GeometricLattice> L, BuildingSet G,
                                std::vector<int> core, std::vector<int> order = {});
// Same G, larger core.
PartialBuildingSet extend_partial(const PartialBuildingSet& H, int lattice_id);

// Nestedness in N(M,H) over H-index masks, memoized.
class NestedOracle {
 public:
  explicit NestedOracle(const PartialBuildingSet& H);
  bool nested(Mask s) const;
  bool antichain(Mask s) const;
  Mask below(int h) const { return below_[h]; }  // strictly below in L_M
  bool lt(int a, int b) const { return (below_[b] >> a) & 1; }
  int join_lattice(Mask s) const;  // join in L_M as a lattice id
  std::vector<Mask> faces() const;
  std::vector<Mask> facets() const;

 private:
  const PartialBuildingSet* H_;
  std::vector<Mask> below_;
  mutable std::unordered_map<Mask, bool> memo_;
  mutable std::mutex mu_;
};

// Generic nestedness for a set of lattice ids against a member predicate.
bool is_nested_ids(const Semilattice& L, const std::vector<char>& member, std::vector<int> s);

struct PartialBlowup {
  std::shared_ptr<const PartialBuildingSet> H;
  Semilattice lat;           // atom label = H index
  std::vector<int> pi;       // element -> lattice id (composite blowdown)
  std::vector<int> orig;     // element -> lattice id if never paired, else -1
  std::vector<std::string> provenance;
  std::unique_ptr<NestedOracle> nested;

  int element_of(int h_or_lattice_unpaired) const;
  // Element representing g in G: the atom if g is in H, else the unpaired copy.
  int element_of_G(int lattice_id) const;
  Mask supp(int y) const { return lat.supp[y]; }
};
std::unique_ptr<PartialBlowup> build_semilattice(std::shared_ptr<const PartialBuildingSet> H);

// Faces of Ka(L): subsets of atom labels with an upper bound.
std::set<Mask> atomic_complex(const Semilattice& L);
std::set<Mask> nested_complex(const PartialBuildingSet& H, const NestedOracle& N);

// Pi and eta act on sets of lattice ids (which are H-labels).
std::vector<int> pi_map(const PartialBlowup& small, const PartialBuildingSet& big, std::vector<int> s);
std::vector<int> pi_onestep(const PartialBlowup& small, int p, std::vector<int> s);
// eta from H to H' (which must contain H); p's are added in prec order of H'.
std::vector<int> eta_map(const PartialBuildingSet& small, const PartialBuildingSet& big, std::vector<int> s);
// eta from H all the way to G.
std::vector<int> eta_to_G(const PartialBuildingSet& H, std::vector<int> s);

struct LocalFactors {
  std::vector<int> Fplus;           // lattice ids
  std::map<int, int> z;             // g -> z_y(g) (lattice ids)
};
LocalFactors factors_plus(const PartialBlowup& B, int y);
// Via eta of the support, as a cross-check.
std::vector<int> factors_plus_via_eta(const PartialBlowup& B, int y);

struct LocalBuildingSet {
  int g = 0, z = 0;                           // lattice ids
  std::shared_ptr<const GeometricLattice> interval;
  std::vector<int> to_parent;                 // interval id -> lattice id
  std::shared_ptr<const PartialBuildingSet> H;  // H_{y,g} on the interval
  std::vector<int> Hlocal_parent;             // H_{y,g} as lattice ids
  std::vector<int> Glocal_parent;             // G_{y,g} as lattice ids
  std::map<int, int> zeta;                    // clst vertex (H index) -> lattice id
};
LocalBuildingSet local_building_set(const PartialBlowup& B, int y, int g);

// Interval of a geometric lattice, as a geometric lattice.
std::shared_ptr<GeometricLattice> interval_geometric(const Semilattice& L, int x, int y,
                                                     std::vector<int>* to_parent);

}  // namespace leray
