#pragma once

#include "leray/leray_model.hpp"
#include "leray/poset.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace leray {

// Order ideals are open, so a sheaf is a functor with maps F(y) -> F(x)
// for x <= y. Only cover maps are stored; composites are memoized.
class PosetSheaf {
 public:
  using CoverMap = std::function<QMatrix(int x, int y)>;  // x covered by y

  PosetSheaf(std::shared_ptr<const Poset> base, std::vector<int> dims, const CoverMap& cover);

  const Poset& base() const { return *base_; }
  std::shared_ptr<const Poset> base_ptr() const { return base_; }
  int dim(int x) const { return dims_[x]; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;

  // F(x <= y): dim(y) columns, dim(x) rows.
  const QMatrix& restrict(int x, int y) const;
  // Every pair of paths between two elements induces the same map.
  bool functorial(std::string* why = nullptr) const;

 private:
  std::shared_ptr<const Poset> base_;
  std::vector<int> dims_;
  std::map<std::pair<int, int>, QMatrix> cover_;
  mutable std::map<std::pair<int, int>, QMatrix> memo_;
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

PosetSheaf constant_sheaf(std::shared_ptr<const Poset> P, int dim = 1);
// Q^dim on P_{>=y}, zero elsewhere, identity maps.
PosetSheaf skyscraper_up(std::shared_ptr<const Poset> P, int y, int dim = 1);
PosetSheaf tensor(const PosetSheaf& F, const PosetSheaf& G);

struct PosetMapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// Throws PosetMapError unless f is order preserving P -> Q.
void check_order_preserving(const Poset& P, const Poset& Q, const std::vector<int>& f);

// Sections over a subset U, as the kernel of the compatibility system.
struct Sections {
  std::vector<int> U;
  std::map<int, int> offset;  // element -> first coordinate
  int coords = 0;             // sum of stalk dimensions over U
  std::vector<int> free;      // coordinates that determine a section
  QMatrix basis;              // columns are sections
  int dim() const { return basis.cols(); }
  // Coordinates of a compatible family in this basis.
  std::vector<Q> coordinates(const std::vector<Q>& family) const;
};
Sections sections(const PosetSheaf& F, const std::vector<int>& U);
Sections global_sections(const PosetSheaf& F);

PosetSheaf pullback(std::shared_ptr<const Poset> P, const std::vector<int>& f, const PosetSheaf& G);
// (f_* F)(q) = sections of F over the preimage of the ideal below q.
PosetSheaf pushforward(std::shared_ptr<const Poset> Q, const std::vector<int>& f, const PosetSheaf& F);
// incl embeds the base of F onto an order ideal of P.
PosetSheaf extend_by_zero(std::shared_ptr<const Poset> P, const std::vector<int>& incl, const PosetSheaf& F);

// Sections over any open set extend to any larger open set; equivalently
// F(x) surjects onto the sections over the ideal strictly below x.
bool flasque(const PosetSheaf& F, int* witness = nullptr);

struct SheafCohomology {
  std::vector<int> dims;
  // False when some dimension is only an upper bound (a rank mod p).
  bool exact = true;
};
struct CohomologyOptions {
  int threads = 1;
  long max_chain_dim = 5'000'000;  // total size of one cochain group
};
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Cochains are sums over chains x_0 < ... < x_p of F(x_0). Ranks are taken
// mod a 31-bit prime, which can only overestimate cohomology; H^0 and the
// Euler characteristic are exact, which settles the rational answer when
// at most one degree is nonzero mod p.
SheafCohomology sheaf_cohomology(const PosetSheaf& F, const CohomologyOptions& opt = {});

// Simplicial cohomology of the order complex with rational coefficients,
// computed directly from the simplices.
std::vector<int> order_complex_cohomology(const Poset& P);

struct IntervalPoset {
  std::shared_ptr<const Poset> poset;
  std::vector<std::pair<int, int>> pairs;  // id -> (x, y)
  std::map<std::pair<int, int>, int> index;
  std::vector<int> pr1, pr2;  // pr2 lands in the opposite poset
  std::vector<int> iota;      // y -> (bottom, y); empty without a bottom
};
IntervalPoset interval_poset(const Poset& P);

// A map of sheaves on the same base: one matrix per element.
struct SheafMorphism {
  std::vector<QMatrix> at;
  bool natural(const PosetSheaf& F, const PosetSheaf& G) const;
  // Induced map on global sections, in the bases of global_sections.
  QMatrix on_sections(const Sections& src, const Sections& dst) const;
};

// Flag sheaf on L: x -> Fl^j(L_{<=x}), maps are projections onto flags
// below the smaller element. Stalk bases are the flag basis elements.
struct FlagSheaf {
  std::shared_ptr<const Poset> base;
  std::vector<PosetSheaf> F;                    // by degree j
  std::vector<std::vector<std::vector<int>>> stalk;  // [j][x] -> flag basis positions
  std::vector<SheafMorphism> delta;              // F^j -> F^{j+1}
};
FlagSheaf flag_sheaf(const Semilattice& L, const FlagComplex& Fl);

struct LocalDPFamily {
  std::vector<std::unique_ptr<LocalDP>> at;  // null where the sheaf is zero
};
// D on L^op: y -> D^i_y, maps are the restrictions D_y -> D_z for y <= z.
// With only_below_one_hat the stalks at y >= (1hat, 0hat) are zero.
std::vector<PosetSheaf> dp_sheaf(std::shared_ptr<const PartialBlowup> B, std::shared_ptr<const Poset> Lop,
                                 bool only_below_one_hat, LocalDPFamily* family = nullptr);

struct SheafCheckOptions {
  long max_poset_size = 50'000;  // bound on |Int(L)|
  CohomologyOptions cohomology;
};

struct SheafCheckReport {
  int lattice_size = 0, interval_size = 0;
  // (a) sections of C against the dual of B
  std::map<std::pair<int, int>, int> gamma_dims, model_dims;  // (i, j)
  bool gamma_dims_match = false;
  bool diagonal_iso = false;     // sections -> sum over z of C(z, z) components
  bool intertwines = false;      // Gamma(delta) is delta tensor restriction
  DualCheckReport dual;          // which is in turn d dual
  // (b) higher cohomology of each C^{ij}
  std::map<std::pair<int, int>, SheafCohomology> c_cohomology;
  bool acyclic = false;
  // (c) cohomology of the sections complex against iota_! D
  std::map<int, std::vector<int>> sections_cohomology, iota_cohomology;  // by i
  bool resolution_ok = false;
  bool flag_flasque = false;
  bool all_exact = true;
  bool ok() const { return gamma_dims_match && diagonal_iso && intertwines && dual.mismatches == 0 &&
                           dual.decomposition_iso && acyclic && resolution_ok && flag_flasque; }
};
// Needs the B variant (1hat in H). Throws CapExceeded when |Int(L)| is
// above the bound.
SheafCheckReport build_C_and_verify(const LerayModel& model, const SheafCheckOptions& opt = {});

}  // namespace leray
