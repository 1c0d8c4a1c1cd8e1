#include "leray/dp_algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace leray {

namespace {

Element x_power_product(const std::vector<std::pair<int, int>>& exps, const Q& c) {
  Mono m;
  for (auto [v, b] : exps)
    if (b > 0) m.set_exp(v, m.exp(v) + b);
  return Element(m, c);
}

std::vector<Q> padded(std::vector<Q> v, size_t n) {
  v.resize(n);
  return v;
}

bool all_zero(const std::vector<Q>& v) {
  for (const Q& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

}  // namespace

DPAlgebra::DPAlgebra(std::shared_ptr<const PartialBlowup> B) : gs_(std::move(B), false) {}

int DPAlgebra::r() const { return gs_.H().L().r(); }

std::vector<int> DPAlgebra::dims() const {
  std::vector<int> d;
  for (int k = 0; k <= gs_.max_xdeg(); ++k) d.push_back(static_cast<int>(basis(k).size()));
  while (d.size() > 1 && d.back() == 0) d.pop_back();
  return d;
}

std::vector<Q> DPAlgebra::coordinates(const Element& a, int k) const {
  auto b = basis(k);
  std::vector<Q> v(b.size());
  Element nf = normal_form(a);
  for (const auto& [m, c] : nf.terms()) {
    auto it = std::find(b.begin(), b.end(), m);
    if (it == b.end()) throw std::logic_error("normal form outside the degree " + std::to_string(k) + " basis");
    v[it - b.begin()] = c;
  }
  return v;
}

std::pair<int, Mono> DPAlgebra::epsilon(const Mono& m) const {
  int o = one_hat();
  if (o < 0) throw std::invalid_argument("duality needs 1hat in H");
  Mask T = m.xs;
  Mask Tplus = T | bit(o);
  Mono out;
  for (int g : mask_members(Tplus)) {
    int d = gs_.bound(T, g);
    if (g == o) d -= 1;
    int e = d - m.exp(g);
    if (e < 0) throw std::invalid_argument("not a basis monomial");
    if (e > 0) out.set_exp(g, e);
  }
  int k = popcount(T & ~bit(o)) - r();
  return {(k % 2 == 0) ? 1 : -1, out};
}

Element DPAlgebra::mu() const {
  int o = one_hat();
  if (o < 0) throw std::invalid_argument("duality needs 1hat in H");
  return x_power_product({{o, r()}}, (r() % 2) ? Q(-1) : Q(1));
}

Q DPAlgebra::pairing(const Element& u, const Element& v) const {
  int o = one_hat();
  if (o < 0) throw std::invalid_argument("duality needs 1hat in H");
  Element p = normal_form(mul(u, v));
  if (p.is_zero()) return 0;
  Q c = p.coeff(Mono::var(o, r()));
  return (r() % 2) ? Q(-c) : c;
}

QMatrix DPAlgebra::pairing_matrix(int k) const {
  auto b = basis(k);
  QMatrix M(static_cast<int>(b.size()), static_cast<int>(b.size()));
  for (size_t j = 0; j < b.size(); ++j) {
    auto [s, e] = epsilon(b[j]);
    Element ej(e, s);
    for (size_t i = 0; i < b.size(); ++i) M(static_cast<int>(i), static_cast<int>(j)) = pairing(Element(b[i]), ej);
  }
  return M;
}

bool DPAlgebra::epsilon_product_ok(const Mono& m) const {
  auto [s, e] = epsilon(m);
  Element lhs = normal_form(mul(Element(m), Element(e, s)));
  Element rhs = x_power_product({{one_hat(), r()}}, (r() % 2) ? Q(-1) : Q(1));
  return lhs == rhs;
}

LocalDP::LocalDP(std::shared_ptr<const PartialBlowup> B, int y) : B_(std::move(B)), y_(y) {
  if (y < 0 || y >= B_->lat.size()) throw std::invalid_argument("y is not an element of L(M,H)");
  S_ = B_->lat.supp[y];
  const auto& H = *B_->H;
  const auto& L = H.L();
  for (int a : mask_members(H.atoms())) {
    Element c;
    for (int h = 0; h < H.size(); ++h)
      if (L.leq(H.H[a], H.H[h])) c.add(Mono::var(h), 1);
    c_atoms_.push_back(std::move(c));
  }
  Degree d0;
  d0.cols = {Mono::one()};
  d0.col.emplace(Mono::one(), 0);
  d0.basis = {Mono::one()};
  d0.basis_pos = {0};
  deg_.push_back(std::move(d0));
  int cap = L.r() + 1;
  for (int k = 1; k <= cap; ++k) {
    Degree d;
    d.cols = admissible_monomials(k);
    for (size_t i = 0; i < d.cols.size(); ++i) d.col.emplace(d.cols[i], static_cast<int>(i));
    for (const Mono& m : deg_[k - 1].cols)
      for (const Element& c : c_atoms_) {
        SparseVec v = to_columns(d, mul(m, c));
        if (!v.empty()) d.ech.add(std::move(v));
      }
    d.basis_pos.assign(d.cols.size(), -1);
    for (size_t i = 0; i < d.cols.size(); ++i)
      if (!d.ech.is_pivot(static_cast<int>(i))) {
        d.basis_pos[i] = static_cast<int>(d.basis.size());
        d.basis.push_back(d.cols[i]);
      }
    if (d.basis.empty()) break;
    deg_.push_back(std::move(d));
  }
}

bool LocalDP::admissible(const Mono& m) const { return B_->nested->nested(S_ | m.xs); }

std::vector<Mono> LocalDP::admissible_monomials(int k) const {
  int n = B_->H->size();
  std::vector<Mono> out;
  Mono cur;
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (v == n) return;
    rec(v + 1, left);
    if (!B_->nested->nested(S_ | cur.xs | bit(v))) return;
    for (int b = 1; b <= left; ++b) {
      cur.set_exp(v, b);
      rec(v + 1, left - b);
    }
    cur.set_exp(v, 0);
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), TermGreater());
  return out;
}

SparseVec LocalDP::to_columns(const Degree& d, const Element& a) const {
  SparseVec v;
  for (const auto& [m, c] : a.terms()) {
    auto it = d.col.find(m);
    if (it != d.col.end()) v[it->second] += c;
  }
  for (auto it = v.begin(); it != v.end();) it = sgn(it->second) == 0 ? v.erase(it) : std::next(it);
  return v;
}

std::vector<int> LocalDP::dims() const {
  std::vector<int> d;
  for (const auto& g : deg_) d.push_back(static_cast<int>(g.basis.size()));
  return d;
}

int LocalDP::dim() const {
  int s = 0;
  for (int x : dims()) s += x;
  return s;
}

const std::vector<Mono>& LocalDP::basis(int k) const {
  static const std::vector<Mono> empty;
  if (k < 0 || k > top_degree()) return empty;
  return deg_[k].basis;
}

std::vector<Q> LocalDP::coordinates(const Element& a, int k) const {
  if (k < 0 || k > top_degree()) return {};
  const Degree& d = deg_[k];
  for (const auto& [m, c] : a.terms())
    if (m.xdeg() != k || m.e) throw std::invalid_argument("element is not a polynomial of degree " + std::to_string(k));
  std::vector<Q> out(d.basis.size());
  for (const auto& [col, c] : d.ech.reduce(to_columns(d, a))) out[d.basis_pos[col]] = c;
  return out;
}

QMatrix LocalDP::restriction(const LocalDP& z, int k) const {
  const auto& src = basis(k);
  const auto& dst = z.basis(k);
  QMatrix M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  if (dst.empty()) return M;
  for (size_t j = 0; j < src.size(); ++j) {
    auto v = z.coordinates(Element(src[j]), k);
    for (size_t i = 0; i < dst.size(); ++i) M(static_cast<int>(i), static_cast<int>(j)) = v[i];
  }
  return M;
}

Element LocalDP::mu() const {
  const auto& H = *B_->H;
  const auto& L = H.L();
  LocalFactors lf = factors_plus(*B_, y_);
  std::vector<std::pair<int, int>> exps;
  int total = 0;
  for (int g : lf.Fplus) {
    int h = H.index_of[g];
    if (h < 0) continue;
    int e = L.d(lf.z.at(g), g) - 1;
    exps.push_back({h, e});
    total += e;
  }
  return x_power_product(exps, (total % 2) ? Q(-1) : Q(1));
}

int LocalDP::mu_degree() const {
  Element m = mu();
  return m.lead().xdeg();
}

Q LocalDP::pairing(const Element& u, const Element& v) const {
  int k = mu_degree();
  Element p = mul(u, v);
  if (p.is_zero()) return 0;
  if (!p.homogeneous() || p.lead().xdeg() != k) return 0;
  auto m = coordinates(mu(), k);
  auto c = coordinates(p, k);
  if (m.size() != 1 || sgn(m[0]) == 0) throw std::logic_error("top degree of D_y is not spanned by mu_y");
  return c[0] / m[0];
}

std::vector<int> hilbert_product(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

bool palindromic(const std::vector<int>& h) {
  for (size_t i = 0; i < h.size(); ++i)
    if (h[i] != h[h.size() - 1 - i]) return false;
  return true;
}

TensorReport tensor_decompose(std::shared_ptr<const PartialBlowup> B, int y, bool check_psi) {
  const auto& H = *B->H;
  const auto& L = H.L();
  if (B->pi[y] == L.top_id) throw std::invalid_argument("tensor decomposition needs pi(y) != 1hat");
  TensorReport rep;
  LocalDP Dy(B, y);
  rep.local_dims = Dy.dims();
  LocalFactors lf = factors_plus(*B, y);
  rep.product_dims = {1};
  rep.psi_defined = true;
  Mask core = H.core();
  for (int g : lf.Fplus) {
    TensorFactor f;
    f.g = g;
    f.z = lf.z.at(g);
    f.local = local_building_set(*B, y, g);
    f.blowup = std::shared_ptr<const PartialBlowup>(build_semilattice(f.local.H));
    DPAlgebra dp(f.blowup);
    f.dims = dp.dims();
    const auto& Hl = *f.local.H;
    f.to_global.assign(Hl.size(), -1);
    Mask lcore = Hl.core();
    for (int i : mask_members(lcore)) {
      int parent = f.local.to_parent[Hl.H[i]];
      int found = -1, count = 0;
      for (const auto& [h, zeta] : f.local.zeta)
        if (zeta == parent && ((core >> h) & 1)) {
          found = h;
          ++count;
        }
      if (count != 1) {
        rep.psi_defined = false;
        if (rep.failure.empty()) rep.failure = "no unique preimage for " + Hl.name(i);
      }
      f.to_global[i] = found;
    }
    rep.product_dims = hilbert_product(rep.product_dims, f.dims);
    rep.factors.push_back(std::move(f));
  }
  rep.dims_match = rep.product_dims == rep.local_dims;
  if (!check_psi || !rep.psi_defined) return rep;

  auto psi_mono = [&](const TensorFactor& f, const Mono& m) {
    Mono out;
    for (int i : mask_members(m.xs)) {
      if (f.to_global[i] < 0) throw std::logic_error("basis monomial uses an atom variable");
      out.set_exp(f.to_global[i], m.exp(i));
    }
    return out;
  };
  // Rank of the images of the product basis.
  std::vector<std::vector<Mono>> fbasis;
  for (const auto& f : rep.factors) {
    DPAlgebra dp(f.blowup);
    std::vector<Mono> all;
    for (int k = 0; k < static_cast<int>(f.dims.size()); ++k)
      for (const Mono& m : dp.basis(k)) all.push_back(psi_mono(f, m));
    fbasis.push_back(std::move(all));
  }
  std::vector<Echelon> ech(Dy.top_degree() + 1);
  std::vector<Mono> prods = {Mono::one()};
  for (const auto& fb : fbasis) {
    std::vector<Mono> next;
    for (const Mono& a : prods)
      for (const Mono& b : fb) {
        int s;
        next.push_back(mono_mul(a, b, &s));
      }
    prods = std::move(next);
  }
  for (const Mono& m : prods) {
    int k = m.xdeg();
    if (k > Dy.top_degree()) continue;
    auto c = Dy.coordinates(Element(m), k);
    SparseVec v;
    for (size_t i = 0; i < c.size(); ++i)
      if (sgn(c[i]) != 0) v[static_cast<int>(i)] = c[i];
    if (!v.empty()) ech[k].add(std::move(v));
  }
  rep.psi_rank = 0;
  for (const auto& e : ech) rep.psi_rank += e.rank();

  // psi_g(x_p u) = x_p psi_g(u) for basis monomials u.
  rep.psi_multiplicative = true;
  for (const auto& f : rep.factors) {
    DPAlgebra dp(f.blowup);
    for (int k = 0; k < static_cast<int>(f.dims.size()); ++k)
      for (const Mono& u : dp.basis(k))
        for (int i : mask_members(f.local.H->core())) {
          Element prod = dp.normal_form(mul(Mono::var(i), Element(u)));
          Element lhs;
          for (const auto& [m, c] : prod.terms()) lhs.add(psi_mono(f, m), c);
          int s;
          Element rhs(mono_mul(Mono::var(f.to_global[i]), psi_mono(f, u), &s));
          auto a = padded(Dy.coordinates(lhs, k + 1), Dy.basis(k + 1).size());
          auto b = padded(Dy.coordinates(rhs, k + 1), Dy.basis(k + 1).size());
          if (a != b) {
            rep.psi_multiplicative = false;
            if (rep.failure.empty()) rep.failure = "psi not multiplicative at " + mono_str(u, dp.system().names());
          }
        }
  }
  return rep;
}

int added_element(const PartialBuildingSet& small, const PartialBuildingSet& big) {
  int p = -1;
  for (int id : big.H)
    if (!small.in_H(id)) {
      if (p >= 0) throw std::invalid_argument("H' must add exactly one element");
      p = id;
    }
  if (p < 0 || big.size() != small.size() + 1) throw std::invalid_argument("H' must add exactly one element");
  for (int id : small.H)
    if (!big.in_H(id)) throw std::invalid_argument("H' does not contain H");
  return p;
}

std::vector<Element> dp_phi_images(const PartialBuildingSet& small, const PartialBuildingSet& big) {
  int p = added_element(small, big);
  int pi = big.index_of[p];
  std::vector<Element> img(small.size());
  for (int g = 0; g < small.size(); ++g) {
    img[g] = Element(Mono::var(big.index_of[small.H[g]]));
    if (small.L().leq(small.H[g], p)) img[g].add(Mono::var(pi), 1);
  }
  return img;
}

int blowdown_element(const PartialBlowup& small, const PartialBlowup& big, int y) {
  int p = added_element(*small.H, *big.H);
  std::vector<int> ids;
  for (int h : mask_members(big.lat.supp[y])) ids.push_back(big.H->H[h]);
  Mask m = 0;
  for (int id : pi_onestep(small, p, ids)) m |= bit(small.H->index_of[id]);
  auto j = small.lat.join_labels(m);
  if (!j) throw std::logic_error("blowdown of a support has no join");
  return *j;
}

DPPhiReport dp_blowup_map(std::shared_ptr<const PartialBlowup> small, std::shared_ptr<const PartialBlowup> big,
                          bool stalks) {
  const auto& Hs = *small->H;
  const auto& Hb = *big->H;
  const auto& L = Hs.L();
  int p = added_element(Hs, Hb);
  auto img = dp_phi_images(Hs, Hb);
  auto phi = [&](const Element& a) { return substitute(a, {}, img); };
  DPAlgebra A(small), Bd(big);
  DPPhiReport rep;
  rep.c_maps_to_c = true;
  for (int a : mask_members(Hs.atoms()))
    if (phi(A.system().c(a)) != Bd.system().c(Hb.index_of[Hs.H[a]])) rep.c_maps_to_c = false;
  rep.relations_ok = true;
  for (const auto& g : A.system().presentation_generators()) {
    bool polynomial = true;
    for (const auto& [m, c] : g.f.terms())
      if (m.e) polynomial = false;
    if (polynomial && !Bd.normal_form(phi(g.f)).is_zero()) {
      rep.relations_ok = false;
      if (rep.first_failure.empty()) rep.first_failure = "relation " + g.describe + " not mapped to 0";
    }
  }
  auto ad = A.dims();
  for (int k = 0; k < static_cast<int>(ad.size()); ++k) {
    Echelon ech;
    std::unordered_map<Mono, int, MonoHash> col;
    for (const Mono& m : A.basis(k)) {
      SparseVec v;
      Element im = Bd.normal_form(phi(Element(m)));
      for (const auto& [t, c] : im.terms()) {
        auto it = col.emplace(t, static_cast<int>(col.size())).first;
        v[it->second] = c;
      }
      ech.add(std::move(v));
    }
    rep.source_dim += ad[k];
    rep.rank += ech.rank();
  }
  if (!stalks) return rep;

  auto fail = [&](const std::string& s) {
    ++rep.stalk_failures;
    if (rep.first_failure.empty()) rep.first_failure = s;
  };
  int pb = Hb.index_of[p];
  int pelem = small->element_of_G(p);
  for (int y = 0; y < big->lat.size(); ++y) {
    ++rep.stalks;
    int x = blowdown_element(*small, *big, y);
    LocalDP Dx(small, x), Dy(big, y);
    std::string where = "stalk " + big->lat.order.label(y);
    // Stanley-Reisner generators of J_x go to zero.
    {
      Mask S = small->lat.supp[x];
      std::set<Mask> faces, minimal;
      std::function<void(Mask, int)> rec = [&](Mask f, int next) {
        faces.insert(f);
        for (int h = next; h < Hs.size(); ++h)
          if (!((S >> h) & 1) && small->nested->nested(S | f | bit(h))) rec(f | bit(h), h + 1);
      };
      rec(0, 0);
      for (Mask f : faces)
        for (int h = 0; h < Hs.size(); ++h) {
          Mask g = f | bit(h);
          if (g == f || faces.count(g) || ((S >> h) & 1)) continue;
          bool min = true;
          for (int t : mask_members(g))
            if (!faces.count(g & ~bit(t))) min = false;
          if (min) minimal.insert(g);
        }
      for (Mask g : minimal) {
        Mono m;
        for (int h : mask_members(g)) m.set_exp(h, 1);
        int k = m.xdeg();
        if (k > Dy.top_degree()) continue;
        if (!all_zero(Dy.coordinates(phi(Element(m)), k))) fail(where + ": relation not killed");
      }
    }
    int rank = 0;
    for (int k = 0; k <= Dx.top_degree(); ++k) {
      if (k > Dy.top_degree()) {
        if (!Dx.basis(k).empty()) fail(where + ": image degree exceeds target");
        continue;
      }
      Echelon ech;
      for (const Mono& m : Dx.basis(k)) {
        auto c = Dy.coordinates(phi(Element(m)), k);
        SparseVec v;
        for (size_t i = 0; i < c.size(); ++i)
          if (sgn(c[i]) != 0) v[static_cast<int>(i)] = c[i];
        ech.add(std::move(v));
      }
      rank += ech.rank();
    }
    if (rank != Dx.dim()) fail(where + ": not injective");
    // The cokernel should be t + ... + t^(d-1) on the image of alpha and 0 elsewhere.
    auto hx = Dx.dims(), hy = Dy.dims();
    std::vector<int> diff(std::max(hx.size(), hy.size()), 0);
    for (size_t i = 0; i < hy.size(); ++i) diff[i] += hy[i];
    for (size_t i = 0; i < hx.size(); ++i) diff[i] -= hx[i];
    while (diff.size() > 1 && diff.back() == 0) diff.pop_back();
    bool in_image = ((big->lat.supp[y] >> pb) & 1) || small->lat.order.join(x, pelem).has_value();
    std::vector<int> pred = {0};
    if (in_image) {
      LocalFactors lf = factors_plus(*big, y);
      int phat = -1;
      for (int f : lf.Fplus)
        if (L.leq(p, f) && (phat < 0 || L.leq(f, phat))) phat = f;
      if (phat < 0) {
        fail(where + ": no factor above p");
        continue;
      }
      int z = lf.z.at(phat);
      int d = L.d(z, *L.join(z, p));
      pred.assign(std::max(d, 1), 1);
      pred[0] = 0;
      while (pred.size() > 1 && pred.back() == 0) pred.pop_back();
    }
    if (diff != pred) fail(where + ": cokernel dimensions");
  }
  return rep;
}

}  // namespace leray
