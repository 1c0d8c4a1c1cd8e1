#include "leray/os_algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace leray {

OSAlgebra::OSAlgebra(Semilattice L) : L_(std::move(L)) {
  int n = static_cast<int>(L_.atom_of_label.size());
  if (n > 64) throw std::invalid_argument("at most 64 atoms supported");
  auto rec = [&](auto& self, Mask f, int next) -> void {
    faces_.push_back(f);
    for (int h = next; h < n; ++h)
      if (L_.atom_of_label[h] >= 0 && face(f | bit(h))) self(self, f | bit(h), h + 1);
  };
  rec(rec, 0, 0);
  std::set<Mask> circ;
  for (Mask f : faces_) {
    if (!independent(f)) continue;
    int top = f ? 63 - __builtin_clzll(f) : -1;
    for (int h = top + 1; h < n; ++h) {
      Mask g = f | bit(h);
      if (L_.atom_of_label[h] < 0 || !face(g) || independent(g)) continue;
      bool minimal = true;
      for (int a : mask_members(g))
        if (!independent(g & ~bit(a))) minimal = false;
      if (minimal) circ.insert(g);
    }
  }
  circuits_.assign(circ.begin(), circ.end());
  std::sort(circuits_.begin(), circuits_.end(), mask_lex_less);
  for (Mask c : circuits_) broken_.push_back(c & (c - 1));
  for (Mask f : faces_)
    if (nbc(f)) top_ = std::max(top_, popcount(f));
}

std::vector<std::string> OSAlgebra::names() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < L_.atom_of_label.size(); ++i)
    out.push_back(i < L_.label_names.size() ? L_.label_names[i] : std::to_string(i));
  return out;
}

int OSAlgebra::join(Mask s) const {
  auto it = join_memo_.find(s);
  if (it != join_memo_.end()) return it->second;
  auto j = L_.join_labels(s);
  int v = j ? *j : -1;
  join_memo_.emplace(s, v);
  return v;
}

bool OSAlgebra::independent(Mask s) const {
  int j = join(s);
  return j >= 0 && L_.rank(j) == popcount(s);
}

bool OSAlgebra::nbc(Mask s) const {
  if (!face(s)) return false;
  for (Mask b : broken_)
    if ((b & s) == b) return false;
  return true;
}

std::vector<Mask> OSAlgebra::nbc_basis(int i) const {
  std::vector<Mask> out;
  for (Mask f : faces_)
    if (popcount(f) == i && nbc(f)) out.push_back(f);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return compare(Mono::ext(a), Mono::ext(b)) > 0; });
  return out;
}

std::vector<int> OSAlgebra::dims() const {
  std::vector<int> d(top_ + 1, 0);
  for (Mask f : faces_)
    if (nbc(f)) ++d[popcount(f)];
  return d;
}

Element OSAlgebra::normal_form(const Element& a) const {
  Element::Map work = a.terms();
  Element result;
  while (!work.empty()) {
    auto it = work.begin();
    Mono m = it->first;
    Q c = it->second;
    work.erase(it);
    if (m.xs) throw std::invalid_argument("polynomial variables in an OS element");
    if (!face(m.e)) continue;
    int hit = -1;
    for (size_t i = 0; i < broken_.size(); ++i)
      if ((broken_[i] & m.e) == broken_[i]) {
        hit = static_cast<int>(i);
        break;
      }
    if (hit < 0) {
      result.add(m, c);
      continue;
    }
    Element gen = boundary(Element(Mono::ext(circuits_[hit])));
    Element prod = mul(Mono::ext(m.e & ~broken_[hit]), gen);
    Q f = c / prod.coeff(m);
    for (const auto& [t, v] : prod.terms()) {
      if (t == m) continue;
      auto [jt, ins] = work.emplace(t, -f * v);
      if (!ins) {
        jt->second -= f * v;
        if (sgn(jt->second) == 0) work.erase(jt);
      }
    }
  }
  return result;
}

std::vector<Q> OSAlgebra::coordinates(const Element& a, int i) const {
  auto basis = nbc_basis(i);
  std::vector<Q> v(basis.size());
  Element r = normal_form(a);
  for (const auto& [m, c] : r.terms()) {
    if (m.edeg() != i) throw std::invalid_argument("element not homogeneous of the requested degree");
    auto it = std::find(basis.begin(), basis.end(), m.e);
    if (it == basis.end()) throw std::logic_error("normal form outside the nbc basis");
    v[it - basis.begin()] = c;
  }
  return v;
}

int OSAlgebra::quotient_dim(int i) const {
  std::vector<Mask> cols;
  for (Mask f : faces_)
    if (popcount(f) == i) cols.push_back(f);
  std::sort(cols.begin(), cols.end(), [](Mask a, Mask b) { return compare(Mono::ext(a), Mono::ext(b)) > 0; });
  std::unordered_map<Mask, int> col;
  for (size_t k = 0; k < cols.size(); ++k) col.emplace(cols[k], static_cast<int>(k));
  Echelon ech;
  for (Mask C : circuits_) {
    int deg = popcount(C) - 1;
    if (deg > i) continue;
    Element g = boundary(Element(Mono::ext(C)));
    for (Mask m : faces_) {
      if (popcount(m) != i - deg) continue;
      Element p = mul(Mono::ext(m), g);
      SparseVec v;
      for (const auto& [t, c] : p.terms()) {
        auto it = col.find(t.e);
        if (it != col.end()) v[it->second] += c;
      }
      for (auto it = v.begin(); it != v.end();) it = sgn(it->second) == 0 ? v.erase(it) : std::next(it);
      if (!v.empty()) ech.add(std::move(v));
    }
  }
  return static_cast<int>(cols.size()) - ech.rank();
}

std::vector<Generator> OSAlgebra::generators() const {
  std::vector<Generator> out;
  std::set<Mask> faceset(faces_.begin(), faces_.end());
  std::set<Mask> minimal;
  int n = static_cast<int>(L_.atom_of_label.size());
  for (Mask f : faces_) {
    int top = f ? 63 - __builtin_clzll(f) : -1;
    for (int h = top + 1; h < n; ++h) {
      Mask g = f | bit(h);
      if (faceset.count(g)) continue;
      bool min = true;
      for (int a : mask_members(g))
        if (!faceset.count(g & ~bit(a))) min = false;
      if (min) minimal.insert(g);
    }
  }
  auto nm = names();
  for (Mask m : minimal) out.push_back({Generator::NonNested, Element(Mono::ext(m)), mono_str(Mono::ext(m), nm)});
  for (Mask C : circuits_)
    out.push_back({Generator::Circuit, boundary(Element(Mono::ext(C))), "boundary " + mono_str(Mono::ext(C), nm)});
  return out;
}

std::map<int, std::vector<Mask>> OSAlgebra::brieskorn(int i) const {
  std::map<int, std::vector<Mask>> out;
  for (Mask s : nbc_basis(i)) out[join(s)].push_back(s);
  return out;
}

QMatrix OSAlgebra::boundary_matrix(int i) const {
  auto src = nbc_basis(i);
  auto dst = nbc_basis(i - 1);
  QMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (size_t c = 0; c < src.size(); ++c) {
    auto v = coordinates(boundary(Element(Mono::ext(src[c]))), i - 1);
    for (size_t r = 0; r < dst.size(); ++r) m(static_cast<int>(r), static_cast<int>(c)) = v[r];
  }
  return m;
}

std::vector<int> OSAlgebra::projective_dims() const {
  auto d = dims();
  std::vector<int> p;
  int prev = 0;
  for (size_t i = 0; i + 1 < d.size() || (d.size() == 1 && i == 0); ++i) {
    int v = i == 0 ? 1 : d[i] - prev;
    p.push_back(v);
    prev = v;
    if (d.size() == 1) break;
  }
  return p;
}

std::vector<int> OSAlgebra::boundary_kernel_dims() const {
  auto d = dims();
  std::vector<int> k;
  for (int i = 0; i < static_cast<int>(d.size()); ++i) {
    if (i == 0) {
      k.push_back(d[0]);
      continue;
    }
    k.push_back(d[i] - rank(boundary_matrix(i)));
  }
  return k;
}

bool boundary_exact(const OSAlgebra& os) {
  auto d = os.dims();
  int top = static_cast<int>(d.size()) - 1;
  std::vector<int> rk(top + 2, 0);
  for (int i = 1; i <= top; ++i) rk[i] = rank(os.boundary_matrix(i));
  for (int i = 0; i <= top; ++i) {
    int ker = d[i] - rk[i];
    if (ker != rk[i + 1]) return false;
  }
  return true;
}

FlagComplex::FlagComplex(const Semilattice& L) : L_(&L) {
  chains_.push_back({{L.bottom}});
  for (int i = 0;; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& c : chains_[i])
      for (int y : L.order.upper_covers(c.back())) {
        auto d = c;
        d.push_back(y);
        next.push_back(std::move(d));
      }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    chains_.push_back(std::move(next));
  }
  int T = static_cast<int>(chains_.size());
  index_.resize(T);
  relations_.resize(T);
  ech_.resize(T);
  basis_.resize(T);
  basis_pos_.resize(T);
  for (int i = 0; i < T; ++i) {
    for (size_t k = 0; k < chains_[i].size(); ++k) index_[i].emplace(chains_[i][k], static_cast<int>(k));
    std::set<std::pair<int, std::vector<int>>> seen;
    for (const auto& c : chains_[i])
      for (int j = 1; j < i; ++j) {
        auto key = c;
        key.erase(key.begin() + j);
        if (!seen.insert({j, key}).second) continue;
        SparseVec rel;
        for (int y : L.order.upper_covers(c[j - 1]))
          if (L.order.lt(y, c[j + 1])) {
            auto d = c;
            d[j] = y;
            rel[index_[i].at(d)] += 1;
          }
        relations_[i].push_back(rel);
        ech_[i].add(rel);
      }
    for (int k = 0; k < static_cast<int>(chains_[i].size()); ++k)
      if (!ech_[i].is_pivot(k)) {
        basis_pos_[i].emplace(k, static_cast<int>(basis_[i].size()));
        basis_[i].push_back(k);
      }
  }
}

int FlagComplex::chain_index(int i, const std::vector<int>& chain) const {
  if (i < 0 || i >= static_cast<int>(index_.size())) return -1;
  auto it = index_[i].find(chain);
  return it == index_[i].end() ? -1 : it->second;
}

std::vector<Q> FlagComplex::project(int i, const SparseVec& chains) const {
  std::vector<Q> out(basis_[i].size());
  for (const auto& [k, c] : ech_[i].reduce(chains)) out[basis_pos_[i].at(k)] = c;
  return out;
}

QMatrix FlagComplex::delta(int i) const {
  int T = top_degree();
  int rows = i + 1 <= T ? dim(i + 1) : 0;
  QMatrix m(rows, dim(i));
  if (rows == 0) return m;
  Q sign = (i % 2) ? Q(-1) : Q(1);
  for (int b = 0; b < dim(i); ++b) {
    const auto& c = chains_[i][basis_[i][b]];
    SparseVec v;
    for (int y : L_->order.upper_covers(c.back())) {
      auto d = c;
      d.push_back(y);
      v[index_[i + 1].at(d)] += sign;
    }
    auto p = project(i + 1, v);
    for (int r = 0; r < rows; ++r) m(r, b) = p[r];
  }
  return m;
}

bool FlagComplex::delta_well_defined(int i) const {
  if (i + 1 > top_degree()) return true;
  for (const auto& rel : relations_[i]) {
    SparseVec v;
    for (const auto& [k, c] : rel) {
      const auto& ch = chains_[i][k];
      for (int y : L_->order.upper_covers(ch.back())) {
        auto d = ch;
        d.push_back(y);
        v[index_[i + 1].at(d)] += c;
      }
    }
    for (const Q& q : project(i + 1, v))
      if (sgn(q) != 0) return false;
  }
  return true;
}

Q FlagComplex::fl_value(Mask s, const std::vector<int>& chain) const {
  auto mem = mask_members(s);
  int k = static_cast<int>(mem.size());
  if (k + 1 != static_cast<int>(chain.size())) return 0;
  Q total = 0;
  auto rec = [&](auto& self, Mask used, int step, int inversions) -> void {
    if (step == k) {
      total += (inversions % 2) ? -1 : 1;
      return;
    }
    for (int t = 0; t < k; ++t) {
      if ((used >> t) & 1) continue;
      Mask prefix = 0;
      for (int u : mask_members(used)) prefix |= bit(mem[u]);
      auto j = L_->join_labels(prefix | bit(mem[t]));
      if (!j || *j != chain[step + 1]) continue;
      int inv = popcount(used >> t);  // earlier picks with larger index
      self(self, used | bit(t), step + 1, inversions + inv);
    }
  };
  rec(rec, 0, 0, 0);
  return total;
}

QMatrix FlagComplex::fl_matrix(const OSAlgebra& os, int i) const {
  auto nb = os.nbc_basis(i);
  QMatrix m(static_cast<int>(nb.size()), dim(i));
  for (size_t r = 0; r < nb.size(); ++r)
    for (int b = 0; b < dim(i); ++b)
      m(static_cast<int>(r), b) = fl_value(nb[r], chains_[i][basis_[i][b]]);
  return m;
}

bool FlagComplex::fl_well_defined(const OSAlgebra& os, int i) const {
  for (Mask s : os.nbc_basis(i))
    for (const auto& rel : relations_[i]) {
      Q t = 0;
      for (const auto& [k, c] : rel) t += c * fl_value(s, chains_[i][k]);
      if (sgn(t) != 0) return false;
    }
  return true;
}

namespace {

int extra_element(const PartialBuildingSet& small, const PartialBuildingSet& big) {
  int p = -1;
  for (int id : big.H)
    if (!small.in_H(id)) {
      if (p >= 0) throw std::invalid_argument("H' must add exactly one element");
      p = id;
    }
  if (p < 0 || big.size() != small.size() + 1) throw std::invalid_argument("H' must add exactly one element");
  return p;
}

}  // namespace

OSPhiReport os_blowup_map(const PartialBlowup& small, const PartialBlowup& big) {
  const PartialBuildingSet& Hs = *small.H;
  const PartialBuildingSet& Hb = *big.H;
  int p = extra_element(Hs, Hb);
  int pi = Hb.index_of[p];
  const auto& L = Hs.L();
  OSAlgebra A(small.lat), Bo(big.lat);
  std::vector<Element> img(Hs.size());
  for (int g = 0; g < Hs.size(); ++g) {
    img[g] = Element(Mono::ext(bit(Hb.index_of[Hs.H[g]])));
    if (L.leq(Hs.H[g], p)) img[g].add(Mono::ext(bit(pi)), 1);
  }
  auto phi = [&](const Element& a) { return substitute(a, img, {}); };
  OSPhiReport r;
  r.relations_ok = true;
  for (const auto& g : A.generators())
    if (!Bo.normal_form(phi(g.f)).is_zero()) r.relations_ok = false;
  r.leads_match = true;
  std::set<Mask> leads;
  r.leads_distinct = true;
  for (int i = 0; i <= A.top_degree(); ++i) {
    auto nb = A.nbc_basis(i);
    r.source_dim += static_cast<int>(nb.size());
    std::map<Mask, int> col;
    Echelon ech;
    std::vector<SparseVec> rows;
    for (Mask J : nb) {
      Element im = Bo.normal_form(phi(Element(Mono::ext(J))));
      SparseVec v;
      for (const auto& [m, c] : im.terms()) {
        auto it = col.emplace(m.e, static_cast<int>(col.size())).first;
        v[it->second] = c;
      }
      ech.add(v);
      // predicted lead
      Mask below = 0;
      for (int g : mask_members(J))
        if (L.lt(Hs.H[g], p)) below |= bit(g);
      std::vector<int> ids;
      for (int g : mask_members(below)) ids.push_back(Hs.H[g]);
      Mask pred = 0;
      for (int g : mask_members(J)) pred |= bit(Hb.index_of[Hs.H[g]]);
      if (below && *L.join_of(ids) == p) {
        int gmin = __builtin_ctzll(below);
        pred &= ~bit(Hb.index_of[Hs.H[gmin]]);
        pred |= bit(pi);
      }
      if (im.is_zero() || im.lead().e != pred) r.leads_match = false;
      if (!leads.insert(pred).second) r.leads_distinct = false;
    }
    r.rank += ech.rank();
  }
  return r;
}

}  // namespace leray
