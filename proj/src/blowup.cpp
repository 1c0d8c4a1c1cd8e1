#include "leray/blowup.hpp"

#include <algorithm>

namespace leray {

BlownUp blowup(const Semilattice& L, int p, int new_label) {
  if (p < 0 || p >= L.size()) throw BlowupError("blowup center is not an element");
  if (p == L.bottom) throw BlowupError("cannot blow up the bottom element");
  if (new_label < 0 || new_label >= 64) throw BlowupError("atom label out of range");
  std::vector<int> A, B;
  for (int x = 0; x < L.size(); ++x)
    if (!L.leq(p, x)) A.push_back(x);
  for (int x : A)
    if (L.join(p, x)) B.push_back(x);
  int na = static_cast<int>(A.size());
  int n = na + static_cast<int>(B.size());
  // element i < na is A[i]; element na + k is (p, B[k])
  auto base = [&](int i) { return i < na ? A[i] : B[i - na]; };
  auto leq = [&](int i, int j) {
    bool pi = i >= na, pj = j >= na;
    if (pi && !pj) return false;
    return L.leq(base(i), base(j));
  };
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i < na)
      labels.push_back(L.order.label(A[i]));
    else
      labels.push_back("(" + L.order.label(p) + "," + L.order.label(B[i - na]) + ")");
  }
  BlownUp out;
  out.lat.order = Poset::from_leq(n, leq, labels);
  std::vector<int> atom_label(n, -1);
  int bot_new = -1;
  for (int i = 0; i < na; ++i)
    if (A[i] == L.bottom) bot_new = i;
  for (int i = 0; i < n; ++i) {
    if (i < na) {
      if (A[i] != L.bottom && L.order.lower_covers(A[i]).size() == 1 &&
          L.order.lower_covers(A[i])[0] == L.bottom) {
        int l = __builtin_ctzll(L.supp[A[i]]);
        if (l == new_label) throw BlowupError("new atom label already in use");
        atom_label[i] = l;
      }
    } else if (B[i - na] == L.bottom) {
      atom_label[i] = new_label;
    }
  }
  (void)bot_new;
  out.lat.index_atoms(atom_label);
  out.lat.label_names = L.label_names;
  if (static_cast<int>(out.lat.label_names.size()) <= new_label) out.lat.label_names.resize(new_label + 1);
  out.lat.label_names[new_label] = L.order.label(p);
  out.blowdown.resize(n);
  out.kept.assign(L.size(), -1);
  out.paired.assign(L.size(), -1);
  for (int i = 0; i < n; ++i) {
    if (i < na) {
      out.blowdown[i] = A[i];
      out.kept[A[i]] = i;
    } else {
      out.blowdown[i] = *L.join(p, B[i - na]);
      out.paired[B[i - na]] = i;
    }
  }
  return out;
}

Mask PartialBuildingSet::core() const {
  Mask m = 0;
  for (int i = 0; i < size(); ++i)
    if (lattice->rank(H[i]) > 1) m |= bit(i);
  return m;
}

Mask PartialBuildingSet::atoms() const {
  Mask m = 0;
  for (int i = 0; i < size(); ++i)
    if (lattice->rank(H[i]) == 1) m |= bit(i);
  return m;
}

int PartialBuildingSet::one_hat() const { return index_of[lattice->top_id]; }

std::string PartialBuildingSet::set_name(Mask s) const {
  std::string out = "{";
  bool first = true;
  for (int h : mask_members(s)) {
    if (!first) out += ",";
    out += name(h);
    first = false;
  }
  return out + "}";
}

PartialBuildingSet make_partial(std::shared_ptr<const GeometricLattice> L, BuildingSet G,
                                std::vector<int> core, std::vector<int> order) {
  const auto& lat = *L;
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  for (int c : core) {
    if (c < 0 || c >= lat.size()) throw BlowupError("core element is not in the lattice");
    if (!G.contains(c)) throw BlowupError("core element " + lat.order.label(c) + " is not in G");
    if (lat.rank(c) <= 1) throw BlowupError("core element " + lat.order.label(c) + " is an atom or the bottom");
  }
  for (int c : core)
    for (int g : G.members)
      if (lat.leq(c, g) && lat.rank(g) > 1 && !std::binary_search(core.begin(), core.end(), g))
        throw BlowupError("core is not an order filter of G: " + lat.order.label(g) + " lies above " +
                          lat.order.label(c));
  PartialBuildingSet P;
  P.lattice = L;
  P.G = std::move(G);
  std::vector<int> members;
  for (int g : P.G.members)
    if (lat.rank(g) == 1 || std::binary_search(core.begin(), core.end(), g)) members.push_back(g);
  for (int a : lat.atoms())
    if (std::find(members.begin(), members.end(), a) == members.end())
      throw BlowupError("atom " + lat.order.label(a) + " is missing from G");
  if (!order.empty()) {
    auto a = order, b = members;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw BlowupError("order is not a permutation of H");
    for (size_t i = 0; i < order.size(); ++i)
      for (size_t j = i + 1; j < order.size(); ++j)
        if (lat.lt(order[i], order[j]))
          throw BlowupError("order is not a reverse linear extension");
    members = order;
  }
  if (members.size() > 64) throw BlowupError("partial building sets with more than 64 elements are not supported");
  P.H = members;
  P.index_of.assign(lat.size(), -1);
  for (size_t i = 0; i < members.size(); ++i) P.index_of[members[i]] = static_cast<int>(i);
  for (size_t i = 0; i < members.size(); ++i)
    if (lat.rank(members[i]) > 1) P.blowup_order.push_back(static_cast<int>(i));
  return P;
}

PartialBuildingSet extend_partial(const PartialBuildingSet& H, int lattice_id) {
  std::vector<int> core;
  for (int h : H.H)
    if (H.lattice->rank(h) > 1) core.push_back(h);
  core.push_back(lattice_id);
  return make_partial(H.lattice, H.G, core);
}

NestedOracle::NestedOracle(const PartialBuildingSet& H) : H_(&H) {
  int n = H.size();
  below_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && H.lattice->leq(H.H[a], H.H[b])) below_[b] |= bit(a);
}

bool NestedOracle::antichain(Mask s) const {
  for (int a : mask_members(s))
    if (below_[a] & s) return false;
  return true;
}

int NestedOracle::join_lattice(Mask s) const {
  std::vector<int> ids;
  for (int a : mask_members(s)) ids.push_back(H_->H[a]);
  return *H_->lattice->join_of(ids);
}

bool NestedOracle::nested(Mask s) const {
  if (popcount(s) <= 1) return true;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
  }
  bool ok = true;
  for (int a : mask_members(s))
    if (!nested(s & ~bit(a))) {
      ok = false;
      break;
    }
  if (ok && antichain(s) && H_->in_H(join_lattice(s))) ok = false;
  std::lock_guard<std::mutex> lk(mu_);
  memo_.emplace(s, ok);
  return ok;
}

std::vector<Mask> NestedOracle::faces() const {
  std::vector<Mask> out;
  int n = H_->size();
  auto rec = [&](auto& self, Mask f, int next) -> void {
    out.push_back(f);
    for (int h = next; h < n; ++h)
      if (nested(f | bit(h))) self(self, f | bit(h), h + 1);
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mask> NestedOracle::facets() const {
  std::vector<Mask> out;
  int n = H_->size();
  for (Mask f : faces()) {
    bool maximal = true;
    for (int h = 0; h < n && maximal; ++h)
      if (!(f & bit(h)) && nested(f | bit(h))) maximal = false;
    if (maximal) out.push_back(f);
  }
  return out;
}

bool is_nested_ids(const Semilattice& L, const std::vector<char>& member, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  int k = static_cast<int>(s.size());
  if (k > 24) throw BlowupError("set too large for antichain enumeration");
  for (Mask m = 1; m < (Mask{1} << k); ++m) {
    if (popcount(m) < 2) continue;
    std::vector<int> sub;
    for (int i : mask_members(m)) sub.push_back(s[i]);
    bool anti = true;
    for (size_t i = 0; i < sub.size() && anti; ++i)
      for (size_t j = i + 1; j < sub.size() && anti; ++j)
        if (L.order.comparable(sub[i], sub[j])) anti = false;
    if (!anti) continue;
    auto j = L.join_of(sub);
    if (j && member[*j]) return false;
  }
  return true;
}

std::unique_ptr<PartialBlowup> build_semilattice(std::shared_ptr<const PartialBuildingSet> Hp) {
  const auto& H = *Hp;
  const auto& LM = H.L();
  auto out = std::make_unique<PartialBlowup>();
  out->H = Hp;
  Semilattice cur;
  cur.order = LM.order;
  std::vector<int> lab(LM.size(), -1);
  for (int a : LM.atoms()) lab[a] = H.index_of[a];
  cur.index_atoms(lab);
  cur.label_names.resize(H.size());
  for (int i = 0; i < H.size(); ++i) cur.label_names[i] = H.name(i);
  std::vector<int> pi(LM.size()), orig(LM.size());
  for (int x = 0; x < LM.size(); ++x) pi[x] = orig[x] = x;
  for (int hp : H.blowup_order) {
    int target = H.H[hp];
    int p = -1;
    for (int x = 0; x < cur.size(); ++x)
      if (orig[x] == target) p = x;
    if (p < 0) throw BlowupError("blowup center " + H.name(hp) + " not present; core is not a filter");
    BlownUp b = blowup(cur, p, hp);
    std::vector<int> npi(b.lat.size()), norig(b.lat.size());
    for (int x = 0; x < b.lat.size(); ++x) {
      npi[x] = pi[b.blowdown[x]];
      norig[x] = -1;
    }
    for (int x = 0; x < cur.size(); ++x)
      if (b.kept[x] >= 0) norig[b.kept[x]] = orig[x];
    cur = std::move(b.lat);
    pi = std::move(npi);
    orig = std::move(norig);
  }
  out->lat = std::move(cur);
  out->pi = std::move(pi);
  out->orig = std::move(orig);
  out->provenance = out->lat.order.labels();
  out->nested = std::make_unique<NestedOracle>(*Hp);
  return out;
}

int PartialBlowup::element_of(int h) const { return lat.atom_of_label[h]; }

int PartialBlowup::element_of_G(int lattice_id) const {
  int h = H->index_of[lattice_id];
  if (h >= 0) return lat.atom_of_label[h];
  for (int x = 0; x < lat.size(); ++x)
    if (orig[x] == lattice_id) return x;
  return -1;
}

std::set<Mask> atomic_complex(const Semilattice& L) {
  std::set<Mask> out;
  for (int y = 0; y < L.size(); ++y) {
    Mask s = L.supp[y];
    if (popcount(s) > 24) throw BlowupError("support too large to enumerate faces");
    for (Mask t = s;; t = (t - 1) & s) {
      out.insert(t);
      if (t == 0) break;
    }
  }
  return out;
}

std::set<Mask> nested_complex(const PartialBuildingSet&, const NestedOracle& N) {
  auto f = N.faces();
  return std::set<Mask>(f.begin(), f.end());
}

static std::vector<char> member_flags(const PartialBuildingSet& H) {
  std::vector<char> m(H.L().size(), 0);
  for (int h : H.H) m[h] = 1;
  return m;
}

static void require_nested(const PartialBuildingSet& H, const std::vector<int>& s) {
  for (int x : s)
    if (!H.in_H(x)) throw BlowupError("element " + H.L().order.label(x) + " is not in H");
  if (!is_nested_ids(H.L(), member_flags(H), s)) throw BlowupError("set is not nested");
}

static std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> pi_map(const PartialBlowup& small, const PartialBuildingSet& big, std::vector<int> s) {
  require_nested(big, s);
  const auto& H = *small.H;
  std::vector<int> out;
  for (int g : s) {
    int e = small.element_of_G(g);
    if (e < 0) throw BlowupError("H' does not contain H");
    for (int h : mask_members(small.lat.supp[e])) out.push_back(H.H[h]);
  }
  return sorted_unique(out);
}

std::vector<int> pi_onestep(const PartialBlowup& small, int p, std::vector<int> s) {
  auto it = std::find(s.begin(), s.end(), p);
  if (it == s.end()) return sorted_unique(s);
  s.erase(it);
  int e = small.element_of_G(p);
  for (int h : mask_members(small.lat.supp[e])) s.push_back(small.H->H[h]);
  return sorted_unique(s);
}

static std::vector<int> eta_steps(const Semilattice& L, const std::vector<int>& ps, std::vector<int> s) {
  for (int p : ps) {
    std::vector<int> below, rest;
    for (int x : s) (L.lt(x, p) ? below : rest).push_back(x);
    auto j = L.join_of(below);
    if (j && *j == p) {
      rest.push_back(p);
      s = rest;
    }
  }
  return sorted_unique(s);
}

std::vector<int> eta_map(const PartialBuildingSet& small, const PartialBuildingSet& big, std::vector<int> s) {
  require_nested(small, s);
  std::vector<int> ps;
  for (int h : big.H)
    if (!small.in_H(h)) ps.push_back(h);
  for (int h : small.H)
    if (!big.in_H(h)) throw BlowupError("H' does not contain H");
  return eta_steps(small.L(), ps, s);  // big.H is in prec order
}

std::vector<int> eta_to_G(const PartialBuildingSet& H, std::vector<int> s) {
  require_nested(H, s);
  std::vector<int> ps;
  for (int g : H.G.members)
    if (!H.in_H(g)) ps.push_back(g);
  return eta_steps(H.L(), ps, s);
}

static std::map<int, int> z_map(const Semilattice& L, const std::vector<int>& F) {
  std::map<int, int> z;
  for (int g : F) {
    std::vector<int> below;
    for (int f : F)
      if (L.lt(f, g)) below.push_back(f);
    z[g] = *L.join_of(below);
  }
  return z;
}

LocalFactors factors_plus(const PartialBlowup& B, int y) {
  const auto& H = *B.H;
  const auto& LM = H.L();
  std::vector<int> below;  // (lattice id, element id)
  std::vector<int> elems;
  for (int g : H.G.members) {
    int e = B.element_of_G(g);
    if (e >= 0 && B.lat.leq(e, y)) {
      below.push_back(g);
      elems.push_back(e);
    }
  }
  LocalFactors out;
  for (size_t i = 0; i < below.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < below.size() && maximal; ++j)
      if (i != j && B.lat.lt(elems[i], elems[j])) maximal = false;
    if (maximal) out.Fplus.push_back(below[i]);
  }
  out.Fplus.push_back(LM.top_id);
  out.Fplus = sorted_unique(out.Fplus);
  out.z = z_map(LM, out.Fplus);
  return out;
}

std::vector<int> factors_plus_via_eta(const PartialBlowup& B, int y) {
  const auto& H = *B.H;
  std::vector<int> s;
  for (int h : mask_members(B.lat.supp[y])) s.push_back(H.H[h]);
  auto out = eta_to_G(H, s);
  out.push_back(H.L().top_id);
  return sorted_unique(out);
}

std::shared_ptr<GeometricLattice> interval_geometric(const Semilattice& L, int x, int y,
                                                     std::vector<int>* to_parent) {
  SubLattice sub = interval_lattice(L, x, y);
  auto g = std::make_shared<GeometricLattice>();
  static_cast<Semilattice&>(*g) = std::move(sub.lat);
  g->top_id = *g->order.top();
  if (to_parent) *to_parent = sub.to_parent;
  return g;
}

LocalBuildingSet local_building_set(const PartialBlowup& B, int y, int g) {
  const auto& H = *B.H;
  const auto& LM = H.L();
  LocalFactors lf = factors_plus(B, y);
  if (!std::binary_search(lf.Fplus.begin(), lf.Fplus.end(), g))
    throw BlowupError("g is not in F+(y)");
  LocalBuildingSet out;
  out.g = g;
  out.z = lf.z.at(g);
  auto hat = [&](int p) {
    std::vector<int> up;
    for (int f : lf.Fplus)
      if (LM.leq(p, f)) up.push_back(f);
    for (int f : up) {
      bool least = true;
      for (int f2 : up) least = least && LM.leq(f, f2);
      if (least) return f;
    }
    throw BlowupError("no unique minimum above a clst vertex");
  };
  Mask S = B.lat.supp[y];
  std::vector<int> Hloc, Gloc;
  for (int h = 0; h < H.size(); ++h) {
    if (!B.nested->nested(S | bit(h))) continue;
    int ph = hat(H.H[h]);
    int zeta = *LM.join(H.H[h], lf.z.at(ph));
    out.zeta[h] = zeta;
    if (ph == g) Hloc.push_back(zeta);
  }
  // G_{y,g}: the same construction for G around the factors of y
  std::vector<char> gflag(LM.size(), 0);
  for (int m : H.G.members) gflag[m] = 1;
  std::vector<int> F = lf.Fplus;
  {
    // F(y) itself: drop the top unless it is a genuine factor
    int e = B.element_of_G(LM.top_id);
    if (e < 0 || !B.lat.leq(e, y)) F.erase(std::find(F.begin(), F.end(), LM.top_id));
  }
  for (int p : H.G.members) {
    auto T = F;
    T.push_back(p);
    if (!is_nested_ids(LM, gflag, T)) continue;
    int pp = hat(p);
    if (pp == g) Gloc.push_back(*LM.join(p, lf.z.at(pp)));
  }
  std::vector<int> to_parent;
  auto I = interval_geometric(LM, out.z, g, &to_parent);
  for (int a : I->atoms()) {
    Hloc.push_back(to_parent[a]);
    Gloc.push_back(to_parent[a]);
  }
  Hloc = sorted_unique(Hloc);
  Gloc = sorted_unique(Gloc);
  std::map<int, int> from_parent;
  for (size_t i = 0; i < to_parent.size(); ++i) from_parent[to_parent[i]] = static_cast<int>(i);
  std::vector<int> gl, core;
  for (int x : Gloc) gl.push_back(from_parent.at(x));
  for (int x : Hloc)
    if (I->rank(from_parent.at(x)) > 1) core.push_back(from_parent.at(x));
  out.interval = I;
  out.to_parent = to_parent;
  out.Hlocal_parent = Hloc;
  out.Glocal_parent = Gloc;
  out.H = std::make_shared<PartialBuildingSet>(make_partial(I, building_set_from(*I, gl), core));
  return out;
}

}  // namespace leray
