#include "leray/leray_model.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

namespace leray {

namespace {

std::vector<Element> variable_images(const PartialBuildingSet& small, const PartialBuildingSet& big, bool exterior) {
  int p = added_element(small, big);
  int pi = big.index_of[p];
  std::vector<Element> img(small.size());
  for (int g = 0; g < small.size(); ++g) {
    int h = big.index_of[small.H[g]];
    img[g] = Element(exterior ? Mono::ext(bit(h)) : Mono::var(h));
    if (small.L().leq(small.H[g], p)) img[g].add(exterior ? Mono::ext(bit(pi)) : Mono::var(pi), 1);
  }
  return img;
}

SparseVec sparse(const std::vector<Q>& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) s[static_cast<int>(i)] = v[i];
  return s;
}

// Inverse of a square matrix, false if singular.
bool invert(const QMatrix& m, QMatrix* inv) {
  int n = m.rows();
  if (m.cols() != n) return false;
  QMatrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) return false;
  *inv = QMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) (*inv)(i, j) = aug(i, n + j);
  return true;
}

}  // namespace

LerayModel::LerayModel(std::shared_ptr<const PartialBlowup> B, bool hat) : B_(B), hat_(hat), gs_(std::move(B), !hat) {}

int LerayModel::max_j() const { return r() + 1; }

const std::vector<Mono>& LerayModel::basis(int a, int j) const {
  static const std::vector<Mono> empty;
  if (a < 0 || j < 0 || a > max_a() || j > max_j()) return empty;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = basis_.find({a, j});
  if (it == basis_.end()) it = basis_.emplace(std::make_pair(a, j), gs_.basis(a, j)).first;
  return it->second;
}

std::map<std::pair<int, int>, int> LerayModel::table() const {
  std::map<std::pair<int, int>, int> t;
  for (int a = 0; a <= max_a(); ++a)
    for (int j = 0; j <= max_j(); ++j)
      if (int d = dim(a, j)) t[{a, j}] = d;
  return t;
}

std::vector<Q> LerayModel::coordinates(const Element& x, int a, int j) const {
  const auto& b = basis(a, j);
  std::vector<Q> v(b.size());
  Element nf = normal_form(x);
  for (const auto& [m, c] : nf.terms()) {
    auto it = std::find(b.begin(), b.end(), m);
    if (it == b.end()) throw std::logic_error("normal form leaves the bidegree basis");
    v[it - b.begin()] = c;
  }
  return v;
}

QMatrix LerayModel::d_matrix(int a, int j) const {
  const auto& src = basis(a, j);
  const auto& dst = basis(a + 1, j - 1);
  QMatrix M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  if (dst.empty()) return M;
  for (size_t c = 0; c < src.size(); ++c) {
    auto v = coordinates(differential(Element(src[c])), a + 1, j - 1);
    for (size_t r = 0; r < dst.size(); ++r) M(static_cast<int>(r), static_cast<int>(c)) = v[r];
  }
  return M;
}

bool LerayModel::d_squared_zero() const {
  for (int a = 0; a + 2 <= max_a(); ++a)
    for (int j = 2; j <= max_j(); ++j) {
      if (dim(a, j) == 0 || dim(a + 2, j - 2) == 0) continue;
      if (!(d_matrix(a + 1, j - 1) * d_matrix(a, j)).is_zero()) return false;
    }
  return true;
}

bool LerayModel::d_integral() const {
  for (int a = 0; a < max_a(); ++a)
    for (int j = 1; j <= max_j(); ++j) {
      QMatrix M = d_matrix(a, j);
      for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c)
          if (M(r, c).get_den() != 1) return false;
    }
  return true;
}

std::vector<std::vector<int>> LerayModel::cohomology(int threads) const {
  int K = max_a() + max_j();
  std::vector<std::vector<int>> out(K + 1);
  auto line = [&](int k) {
    std::vector<int> dims(k + 1), rk(k + 2, 0);
    for (int p = 0; p <= k; ++p) dims[p] = dim(p, k - p);
    for (int p = 0; p < k; ++p)
      if (dims[p] && dims[p + 1]) rk[p + 1] = rank(d_matrix(p, k - p));
    std::vector<int> h(k + 1);
    for (int p = 0; p <= k; ++p) h[p] = dims[p] - rk[p + 1] - rk[p];
    out[k] = h;
  };
  // Warm the basis cache serially; the reductions themselves are thread safe.
  for (int a = 0; a <= max_a(); ++a)
    for (int j = 0; j <= max_j(); ++j) basis(a, j);
  if (threads <= 1) {
    for (int k = 0; k <= K; ++k) line(k);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int k; (k = next++) <= K;) line(k);
      });
    for (auto& t : pool) t.join();
  }
  while (!out.empty()) {
    bool zero = true;
    for (int p = 0; p < static_cast<int>(out.back().size()); ++p)
      if (dim(p, static_cast<int>(out.size()) - 1 - p)) zero = false;
    if (!zero) break;
    out.pop_back();
  }
  return out;
}

std::vector<LerayModel::Block> LerayModel::decomposition() const {
  const auto& L = blowup().lat;
  OSAlgebra os(L);
  int one = gs_.H().one_hat();
  int one_atom = one >= 0 ? L.atom_of_label[one] : -1;
  std::map<std::tuple<int, int, int>, Block> blocks;
  for (int a = 0; a <= max_a(); ++a)
    for (int j = 0; j <= max_j(); ++j)
      for (const Mono& m : basis(a, j)) {
        int y = *L.join_labels(m.e);
        auto& b = blocks[{y, a, j}];
        b.y = y, b.a = a, b.j = j;
        ++b.count;
      }
  for (int j = 0; j <= os.top_degree(); ++j)
    for (const auto& [y, sets] : os.brieskorn(j)) {
      if (!hat_ && one_atom >= 0 && L.leq(one_atom, y)) continue;
      LocalDP D(B_, y);
      auto dims = D.dims();
      for (int a = 0; a < static_cast<int>(dims.size()); ++a) {
        auto& b = blocks[{y, a, j}];
        b.y = y, b.a = a, b.j = j;
        b.predicted = static_cast<int>(sets.size()) * dims[a];
      }
    }
  std::vector<Block> out;
  for (auto& [k, b] : blocks)
    if (b.count || b.predicted) out.push_back(b);
  return out;
}

LerayPhiReport leray_blowup_map(const LerayModel& small, const LerayModel& big) {
  if (small.hat() != big.hat()) throw std::invalid_argument("both models must be of the same kind");
  const auto& Hs = small.system().H();
  const auto& Hb = big.system().H();
  const auto& L = Hs.L();
  int p = added_element(Hs, Hb);
  int pb = Hb.index_of[p];
  auto eimg = variable_images(Hs, Hb, true);
  auto ximg = variable_images(Hs, Hb, false);
  auto phi = [&](const Element& a) { return substitute(a, eimg, ximg); };
  LerayPhiReport rep;
  auto fail = [&](const std::string& s) {
    if (rep.first_failure.empty()) rep.first_failure = s;
  };
  rep.relations_ok = true;
  for (const auto& g : small.system().presentation_generators())
    if (!big.normal_form(phi(g.f)).is_zero()) {
      rep.relations_ok = false;
      fail("relation " + g.describe + " not mapped to 0");
    }
  rep.commutes_with_d = rep.leads_match = rep.leads_distinct = true;
  const NestedOracle& N = *small.blowup().nested;
  auto names = small.system().names();
  for (int a = 0; a <= small.max_a(); ++a)
    for (int j = 0; j <= small.max_j(); ++j) {
      const auto& b = small.basis(a, j);
      if (b.empty()) continue;
      Echelon ech;
      std::unordered_map<Mono, int, MonoHash> col;
      std::set<Mono, TermGreater> leads;
      for (const Mono& m : b) {
        Element im = big.normal_form(phi(Element(m)));
        if (big.normal_form(phi(differential(Element(m)))) != big.normal_form(differential(im))) {
          rep.commutes_with_d = false;
          fail("d does not commute at " + mono_str(m, names));
        }
        SparseVec v;
        for (const auto& [t, c] : im.terms()) v[col.emplace(t, static_cast<int>(col.size())).first->second] = c;
        ech.add(std::move(v));
        // predicted initial monomial
        Mask below = 0;
        for (int g : mask_members(m.e))
          if (L.lt(Hs.H[g], p)) below |= bit(g);
        Mono pred;
        for (int g : mask_members(m.e)) pred.e |= bit(Hb.index_of[Hs.H[g]]);
        for (int g : mask_members(m.xs)) pred.set_exp(Hb.index_of[Hs.H[g]], m.exp(g));
        if (below && N.join_lattice(below) == p) {
          int gmin = __builtin_ctzll(below);
          pred.e &= ~bit(Hb.index_of[Hs.H[gmin]]);
          pred.e |= bit(pb);
        }
        if (im.is_zero() || !(im.lead() == pred)) {
          rep.leads_match = false;
          fail("initial monomial differs at " + mono_str(m, names));
        }
        if (!leads.insert(pred).second) rep.leads_distinct = false;
      }
      rep.source_dim += static_cast<int>(b.size());
      rep.rank += ech.rank();
    }
  return rep;
}

CohomologyMapReport os_to_model(const LerayModel& m) {
  const auto& H = m.system().H();
  const auto& LM = H.L();
  OSAlgebra os(LM);
  std::vector<Element> img(LM.atom_of_label.size());
  for (size_t g = 0; g < img.size(); ++g) {
    int atom = LM.atom_of_label[g];
    for (int h = 0; h < H.size(); ++h)
      if (LM.leq(atom, H.H[h])) img[g].add(Mono::ext(bit(h)), 1);
  }
  CohomologyMapReport rep;
  rep.cocycles = true;
  auto coh = m.cohomology();
  for (int j = 0; j <= os.top_degree(); ++j) {
    auto nb = os.nbc_basis(j);
    std::vector<std::vector<Q>> src;
    if (m.hat() || j == 0) {
      for (size_t i = 0; i < nb.size(); ++i) {
        std::vector<Q> v(nb.size());
        v[i] = 1;
        src.push_back(v);
      }
    } else {
      src = kernel_basis(os.boundary_matrix(j));
    }
    Echelon ech;
    for (const auto& v : src) {
      Element e;
      for (size_t i = 0; i < nb.size(); ++i)
        if (sgn(v[i]) != 0) e.add(Mono::ext(nb[i]), v[i]);
      Element im = m.normal_form(substitute(e, img, {}));
      if (!m.normal_form(differential(im)).is_zero()) rep.cocycles = false;
      ech.add(sparse(m.coordinates(im, 0, j)));
    }
    rep.source_dims.push_back(static_cast<int>(src.size()));
    rep.image_ranks.push_back(ech.rank());
    rep.h0.push_back(j < static_cast<int>(coh.size()) ? coh[j][0] : 0);
  }
  return rep;
}

DualCheckReport dual_complex_check(const LerayModel& m) {
  if (m.hat()) throw std::invalid_argument("the dual complex is defined for B only");
  const auto& L = m.blowup().lat;
  auto B = m.blowup_ptr();
  OSAlgebra os(L);
  FlagComplex F(L);
  int one = m.system().H().one_hat();
  int one_atom = one >= 0 ? L.atom_of_label[one] : -1;
  auto excluded = [&](int y) { return !m.hat() && one_atom >= 0 && L.leq(one_atom, y); };
  std::vector<std::unique_ptr<LocalDP>> D(L.size());
  auto local = [&](int y) -> const LocalDP& {
    if (!D[y]) D[y] = std::make_unique<LocalDP>(B, y);
    return *D[y];
  };
  struct DecompElem {
    Mask S;
    int y;
    Mono f;
  };
  // decomposition basis and inverse change of basis per bidegree
  std::map<std::pair<int, int>, std::vector<DecompElem>> dec;
  std::map<std::pair<int, int>, QMatrix> inv;
  DualCheckReport rep;
  rep.decomposition_iso = true;
  for (int j = 0; j <= m.max_j(); ++j) {
    auto blocks = j <= os.top_degree() ? os.brieskorn(j) : std::map<int, std::vector<Mask>>{};
    for (int a = 0; a <= m.max_a(); ++a) {
      std::vector<DecompElem> elems;
      for (const auto& [y, sets] : blocks) {
        if (excluded(y)) continue;
        for (Mask S : sets)
          for (const Mono& f : local(y).basis(a)) elems.push_back({S, y, f});
      }
      int n = m.dim(a, j);
      if (static_cast<int>(elems.size()) != n) {
        rep.decomposition_iso = false;
        if (rep.first_failure.empty())
          rep.first_failure = "decomposition size differs at (" + std::to_string(a) + "," + std::to_string(j) + ")";
        continue;
      }
      if (n == 0) continue;
      QMatrix M(n, n);
      for (int c = 0; c < n; ++c) {
        auto v = m.coordinates(mul(Mono::ext(elems[c].S), Element(elems[c].f)), a, j);
        for (int r = 0; r < n; ++r) M(r, c) = v[r];
      }
      QMatrix Mi;
      if (!invert(M, &Mi)) {
        rep.decomposition_iso = false;
        if (rep.first_failure.empty())
          rep.first_failure = "decomposition map singular at (" + std::to_string(a) + "," + std::to_string(j) + ")";
        continue;
      }
      dec[{a, j}] = std::move(elems);
      inv[{a, j}] = std::move(Mi);
    }
  }
  if (!rep.decomposition_iso) return rep;

  std::map<std::tuple<int, Mask, std::array<std::uint8_t, 64>, Mask, std::array<std::uint8_t, 64>>, Q> pair_memo;
  auto pairing = [&](int y, const Mono& f, const Mono& g) {
    auto key = std::make_tuple(y, f.e, f.x, g.e, g.x);
    auto it = pair_memo.find(key);
    if (it != pair_memo.end()) return it->second;
    Q v = local(y).pairing(Element(f), Element(g));
    pair_memo.emplace(key, v);
    return v;
  };
  for (const auto& [bd, elems] : dec) {
    auto [a, j] = bd;
    if (j == 0 || !dec.count({a + 1, j - 1})) continue;
    const auto& tgt = dec.at({a + 1, j - 1});
    const QMatrix& Mi = inv.at({a + 1, j - 1});
    Q sign = (j - 1) % 2 ? Q(-1) : Q(1);
    for (const auto& u : elems) {
      auto dv = m.coordinates(differential(mul(Mono::ext(u.S), Element(u.f))), a + 1, j - 1);
      std::vector<Q> c(tgt.size());
      for (size_t r = 0; r < tgt.size(); ++r)
        for (size_t k = 0; k < dv.size(); ++k)
          if (sgn(dv[k]) != 0) c[r] += Mi(static_cast<int>(r), static_cast<int>(k)) * dv[k];
      for (int yi : F.basis(j - 1)) {
        const auto& Y = F.chains(j - 1)[yi];
        int y = Y.back();
        if (excluded(y)) continue;
        const LocalDP& Dy = local(y);
        int deg = Dy.mu_degree() - (a + 1);
        for (const Mono& fp : Dy.basis(deg)) {
          Q lhs = 0;
          for (size_t r = 0; r < tgt.size(); ++r) {
            if (sgn(c[r]) == 0 || tgt[r].y != y) continue;
            lhs += c[r] * F.fl_value(tgt[r].S, Y) * pairing(y, tgt[r].f, fp);
          }
          Q rhs = 0;
          if (L.lt(y, u.y)) {
            auto Yz = Y;
            Yz.push_back(u.y);
            Q fl = F.fl_value(u.S, Yz);
            if (sgn(fl) != 0) rhs = sign * fl * pairing(u.y, u.f, fp);
          }
          ++rep.entries;
          if (lhs != rhs) {
            ++rep.mismatches;
            if (rep.first_failure.empty()) rep.first_failure = "entry mismatch in bidegree (" + std::to_string(a) + "," + std::to_string(j) + ")";
          }
        }
      }
    }
  }
  rep.dual_d_squared_zero = m.d_squared_zero();
  return rep;
}

}  // namespace leray
