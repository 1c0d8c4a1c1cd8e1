#include "leray/poset_sheaf.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

namespace leray {

namespace {

QMatrix zero(int r, int c) { return QMatrix(r, c); }

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

std::vector<Q> mat_vec(const QMatrix& m, const std::vector<Q>& v) {
  std::vector<Q> out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(v[j]) != 0) out[i] += m(i, j) * v[j];
  return out;
}

std::vector<int> below(const Poset& P, int x, bool strict) {
  auto ids = P.ids_of(P.down_bits(x));
  if (strict) ids.erase(std::remove(ids.begin(), ids.end(), x), ids.end());
  return ids;
}

using Chain = std::vector<int>;
using ChainIndex = std::unordered_map<Chain, int, boost::hash<Chain>>;

}  // namespace

// ---- PosetSheaf

PosetSheaf::PosetSheaf(std::shared_ptr<const Poset> base, std::vector<int> dims, const CoverMap& cover)
    : base_(std::move(base)), dims_(std::move(dims)) {
  if (static_cast<int>(dims_.size()) != base_->size()) throw std::invalid_argument("one stalk dimension per element");
  for (auto [x, y] : base_->covers()) {
    QMatrix m = cover(x, y);
    if (m.rows() != dims_[x] || m.cols() != dims_[y]) throw std::invalid_argument("restriction has the wrong shape");
    cover_.emplace(std::make_pair(x, y), std::move(m));
  }
}

int PosetSheaf::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

const QMatrix& PosetSheaf::restrict(int x, int y) const {
  {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = memo_.find({x, y});
    if (it != memo_.end()) return it->second;
  }
  if (!base_->leq(x, y)) throw std::invalid_argument("restriction needs x <= y");
  QMatrix m;
  if (x == y) {
    m = QMatrix::identity(dims_[x]);
  } else {
    int c = -1;
    for (int u : base_->upper_covers(x))
      if (base_->leq(u, y)) {
        c = u;
        break;
      }
    m = cover_.at({x, c}) * restrict(c, y);
  }
  std::lock_guard<std::mutex> lock(*mu_);
  return memo_.emplace(std::make_pair(x, y), std::move(m)).first->second;
}

bool PosetSheaf::functorial(std::string* why) const {
  const Poset& P = *base_;
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.ids_of(P.up_bits(x))) {
      if (y == x) continue;
      const QMatrix& r = restrict(x, y);
      for (int c : P.upper_covers(x)) {
        if (!P.leq(c, y)) continue;
        if (!(cover_.at({x, c}) * restrict(c, y) == r)) {
          if (why) *why = "paths from " + P.label(y) + " to " + P.label(x) + " disagree";
          return false;
        }
      }
    }
  return true;
}

PosetSheaf constant_sheaf(std::shared_ptr<const Poset> P, int dim) {
  std::vector<int> dims(P->size(), dim);
  return PosetSheaf(P, dims, [&](int, int) { return QMatrix::identity(dim); });
}

PosetSheaf skyscraper_up(std::shared_ptr<const Poset> P, int y, int dim) {
  std::vector<int> dims(P->size(), 0);
  for (int x = 0; x < P->size(); ++x)
    if (P->leq(y, x)) dims[x] = dim;
  return PosetSheaf(P, dims, [&](int a, int b) {
    return dims[a] ? QMatrix::identity(dim) : zero(0, dims[b]);
  });
}

PosetSheaf tensor(const PosetSheaf& F, const PosetSheaf& G) {
  if (F.base_ptr() != G.base_ptr()) throw std::invalid_argument("tensor needs a common base");
  std::vector<int> dims(F.base().size());
  for (size_t x = 0; x < dims.size(); ++x) dims[x] = F.dim(x) * G.dim(x);
  return PosetSheaf(F.base_ptr(), dims, [&](int x, int y) { return kron(F.restrict(x, y), G.restrict(x, y)); });
}

void check_order_preserving(const Poset& P, const Poset& Q, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != P.size()) throw PosetMapError("map has the wrong domain size");
  for (int v : f)
    if (v < 0 || v >= Q.size()) throw PosetMapError("map leaves the target poset");
  for (auto [x, y] : P.covers())
    if (!Q.leq(f[x], f[y])) throw PosetMapError("map is not order preserving at " + P.label(x) + " < " + P.label(y));
}

// ---- sections

std::vector<Q> Sections::coordinates(const std::vector<Q>& family) const {
  std::vector<Q> c(free.size());
  for (size_t k = 0; k < free.size(); ++k) c[k] = family[free[k]];
  return c;
}

Sections sections(const PosetSheaf& F, const std::vector<int>& U) {
  const Poset& P = F.base();
  Sections S;
  S.U = U;
  // lower elements first so that pivots fall on them
  std::sort(S.U.begin(), S.U.end(), [&](int a, int b) { return P.position(a) < P.position(b); });
  std::vector<char> in(P.size(), 0);
  for (int x : S.U) in[x] = 1;
  for (int x : S.U) {
    for (int w : P.lower_covers(x))
      if (!in[w]) throw std::invalid_argument("sections are taken over order ideals");
    S.offset[x] = S.coords;
    S.coords += F.dim(x);
  }
  Echelon ech;
  for (int x : S.U)
    for (int y : P.upper_covers(x)) {
      if (!in[y] || F.dim(x) == 0) continue;
      const QMatrix& R = F.restrict(x, y);
      int ox = S.offset[x], oy = S.offset[y];
      for (int r = 0; r < F.dim(x); ++r) {
        SparseVec v;
        v[ox + r] = 1;
        for (int c = 0; c < F.dim(y); ++c)
          if (sgn(R(r, c)) != 0) v[oy + c] = -R(r, c);
        ech.add(std::move(v));
      }
    }
  for (int c = 0; c < S.coords; ++c)
    if (!ech.is_pivot(c)) S.free.push_back(c);
  S.basis = QMatrix(S.coords, static_cast<int>(S.free.size()));
  const auto& rows = ech.rows();
  for (size_t k = 0; k < S.free.size(); ++k) {
    std::vector<Q> v(S.coords);
    v[S.free[k]] = 1;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      Q s = 0;
      for (const auto& [c, a] : it->second)
        if (c != it->first && sgn(v[c]) != 0) s += a * v[c];
      v[it->first] = -s;
    }
    for (int c = 0; c < S.coords; ++c) S.basis(c, static_cast<int>(k)) = v[c];
  }
  return S;
}

Sections global_sections(const PosetSheaf& F) {
  std::vector<int> all(F.base().size());
  for (int x = 0; x < F.base().size(); ++x) all[x] = x;
  return sections(F, all);
}

// ---- functorial operations

PosetSheaf pullback(std::shared_ptr<const Poset> P, const std::vector<int>& f, const PosetSheaf& G) {
  check_order_preserving(*P, G.base(), f);
  std::vector<int> dims(P->size());
  for (int x = 0; x < P->size(); ++x) dims[x] = G.dim(f[x]);
  return PosetSheaf(P, dims, [&](int x, int y) { return G.restrict(f[x], f[y]); });
}

PosetSheaf pushforward(std::shared_ptr<const Poset> Qp, const std::vector<int>& f, const PosetSheaf& F) {
  const Poset& P = F.base();
  check_order_preserving(P, *Qp, f);
  std::vector<Sections> S(Qp->size());
  std::vector<int> dims(Qp->size());
  for (int q = 0; q < Qp->size(); ++q) {
    std::vector<int> U;
    for (int x = 0; x < P.size(); ++x)
      if (Qp->leq(f[x], q)) U.push_back(x);
    S[q] = sections(F, U);
    dims[q] = S[q].dim();
  }
  return PosetSheaf(Qp, dims, [&](int q0, int q1) {
    const Sections &a = S[q0], &b = S[q1];
    QMatrix m(a.dim(), b.dim());
    for (int k = 0; k < b.dim(); ++k) {
      std::vector<Q> fam(a.coords);
      for (const auto& [x, off] : a.offset)
        for (int r = 0; r < F.dim(x); ++r) fam[off + r] = b.basis(b.offset.at(x) + r, k);
      auto c = a.coordinates(fam);
      for (int r = 0; r < a.dim(); ++r) m(r, k) = c[r];
    }
    return m;
  });
}

PosetSheaf extend_by_zero(std::shared_ptr<const Poset> P, const std::vector<int>& incl, const PosetSheaf& F) {
  const Poset& B = F.base();
  if (static_cast<int>(incl.size()) != B.size()) throw PosetMapError("inclusion has the wrong domain size");
  std::vector<int> inv(P->size(), -1);
  for (int b = 0; b < B.size(); ++b) {
    if (incl[b] < 0 || incl[b] >= P->size() || inv[incl[b]] != -1) throw PosetMapError("inclusion is not injective");
    inv[incl[b]] = b;
  }
  for (int a = 0; a < B.size(); ++a)
    for (int b = 0; b < B.size(); ++b)
      if (B.leq(a, b) != P->leq(incl[a], incl[b])) throw PosetMapError("inclusion is not an order embedding");
  for (int b = 0; b < B.size(); ++b)
    for (int w : P->lower_covers(incl[b]))
      if (inv[w] < 0) throw PosetMapError("image is not open");
  std::vector<int> dims(P->size(), 0);
  for (int x = 0; x < P->size(); ++x)
    if (inv[x] >= 0) dims[x] = F.dim(inv[x]);
  return PosetSheaf(P, dims, [&](int x, int y) {
    if (inv[x] >= 0 && inv[y] >= 0) return F.restrict(inv[x], inv[y]);
    return zero(dims[x], dims[y]);
  });
}

bool flasque(const PosetSheaf& F, int* witness) {
  const Poset& P = F.base();
  for (int x = 0; x < P.size(); ++x) {
    Sections S = sections(F, below(P, x, true));
    if (S.dim() == 0) continue;
    std::vector<SparseVec> rows;
    for (int k = 0; k < F.dim(x); ++k) {
      std::vector<Q> fam(S.coords);
      for (const auto& [u, off] : S.offset) {
        const QMatrix& R = F.restrict(u, x);
        for (int r = 0; r < F.dim(u); ++r) fam[off + r] = R(r, k);
      }
      auto c = S.coordinates(fam);
      SparseVec v;
      for (size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) != 0) v[static_cast<int>(i)] = c[i];
      rows.push_back(std::move(v));
    }
    if (rank_sparse(rows) != S.dim()) {
      if (witness) *witness = x;
      return false;
    }
  }
  return true;
}

// ---- cohomology

SheafCohomology sheaf_cohomology(const PosetSheaf& F, const CohomologyOptions& opt) {
  const Poset& P = F.base();
  // chains by length, only those starting at a nonzero stalk
  std::vector<std::vector<Chain>> chains;
  std::vector<ChainIndex> index;
  std::vector<std::vector<int>> offset;
  std::vector<long> cdim;
  for (int p = 0;; ++p) {
    std::vector<Chain> cs;
    for (int x = 0; x < P.size(); ++x)
      if (F.dim(x)) P.for_each_chain_from(x, p, [&](const Chain& c) { cs.push_back(c); });
    if (cs.empty()) break;
    ChainIndex idx;
    std::vector<int> off(cs.size());
    long total = 0;
    for (size_t k = 0; k < cs.size(); ++k) {
      idx.emplace(cs[k], static_cast<int>(k));
      off[k] = static_cast<int>(total);
      total += F.dim(cs[k][0]);
    }
    if (total > opt.max_chain_dim) throw CapExceeded("cochain group of degree " + std::to_string(p) + " has dimension " + std::to_string(total));
    chains.push_back(std::move(cs));
    index.push_back(std::move(idx));
    offset.push_back(std::move(off));
    cdim.push_back(total);
  }
  int top = static_cast<int>(chains.size());
  // restriction matrices mod p
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> modR;
  for (int z = 0; z < P.size(); ++z)
    for (int x : P.ids_of(P.up_bits(z))) {
      if (x == z || !F.dim(z) || !F.dim(x)) continue;
      const QMatrix& R = F.restrict(z, x);
      std::vector<std::uint32_t> m(static_cast<size_t>(R.rows()) * R.cols());
      for (int r = 0; r < R.rows(); ++r)
        for (int c = 0; c < R.cols(); ++c) m[static_cast<size_t>(r) * R.cols() + c] = to_mod_p(R(r, c));
      modR.emplace(std::make_pair(z, x), std::move(m));
    }
  // rank of d: C^p -> C^{p+1}
  std::vector<int> rk(top + 1, 0);
  auto rank_of = [&](int p) {
    if (p + 1 >= top) return;
    std::vector<ModRow> rows;
    Chain tau;
    for (size_t s = 0; s < chains[p].size(); ++s) {
      const Chain& sig = chains[p][s];
      int d0 = F.dim(sig[0]);
      for (int k = 0; k < d0; ++k) {
        ModRow row;
        // insertion in front, through the restriction
        for (int z : below(P, sig[0], true)) {
          int dz = F.dim(z);
          if (!dz) continue;
          tau.assign(1, z);
          tau.insert(tau.end(), sig.begin(), sig.end());
          int o = offset[p + 1][index[p + 1].at(tau)];
          const auto& m = modR.at({z, sig[0]});
          for (int r = 0; r < dz; ++r)
            if (auto v = m[static_cast<size_t>(r) * d0 + k]) row.emplace_back(o + r, v);
        }
        // insertion at position i >= 1
        for (size_t i = 1; i <= sig.size(); ++i) {
          Bits b = P.up_bits(sig[i - 1]);
          if (i < sig.size()) b &= P.down_bits(sig[i]);
          for (int z : P.ids_of(b)) {
            if (z == sig[i - 1] || (i < sig.size() && z == sig[i])) continue;
            tau = sig;
            tau.insert(tau.begin() + static_cast<long>(i), z);
            int o = offset[p + 1][index[p + 1].at(tau)];
            row.emplace_back(o + k, i % 2 ? kPrime - 1 : 1);
          }
        }
        std::sort(row.begin(), row.end());
        rows.push_back(std::move(row));
      }
    }
    rk[p + 1] = rank_mod_p(std::move(rows));
  };
  if (opt.threads <= 1) {
    for (int p = 0; p < top; ++p) rank_of(p);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < opt.threads; ++t)
      pool.emplace_back([&] {
        for (int p; (p = next++) < top;) rank_of(p);
      });
    for (auto& t : pool) t.join();
  }
  SheafCohomology out;
  out.dims.resize(top);
  for (int p = 0; p < top; ++p) out.dims[p] = static_cast<int>(cdim[p] - rk[p + 1] - rk[p]);
  if (top == 0) return out;
  // rational H^0 is the space of sections; the Euler characteristic does
  // not depend on the field
  int h0 = global_sections(F).dim();
  long chi = 0;
  for (int p = 0; p < top; ++p) chi += (p % 2 ? -1 : 1) * cdim[p];
  int unknown = -1, nonzero = 0;
  for (int p = 1; p < top; ++p)
    if (out.dims[p]) ++nonzero, unknown = p;
  out.dims[0] = h0;
  if (nonzero == 0) {
    out.exact = chi == h0;
  } else if (nonzero == 1) {
    long v = (unknown % 2 ? -1 : 1) * (chi - h0);
    out.exact = v >= 0 && v <= out.dims[unknown];
    if (out.exact) out.dims[unknown] = static_cast<int>(v);
  } else {
    out.exact = false;
  }
  return out;
}

std::vector<int> order_complex_cohomology(const Poset& P) {
  std::vector<std::vector<Chain>> simp;
  std::vector<std::map<Chain, int>> idx;
  for (int p = 0;; ++p) {
    auto cs = P.chains(p);
    if (cs.empty()) break;
    std::map<Chain, int> m;
    for (size_t k = 0; k < cs.size(); ++k) m[cs[k]] = static_cast<int>(k);
    simp.push_back(std::move(cs));
    idx.push_back(std::move(m));
  }
  int top = static_cast<int>(simp.size());
  // coboundary matrix transposed: rows are faces of each (p+1)-simplex
  std::vector<int> rk(top + 1, 0);
  for (int p = 0; p + 1 < top; ++p) {
    std::vector<SparseVec> rows;
    for (const Chain& t : simp[p + 1]) {
      SparseVec v;
      for (size_t i = 0; i < t.size(); ++i) {
        Chain f = t;
        f.erase(f.begin() + static_cast<long>(i));
        v[idx[p].at(f)] = i % 2 ? -1 : 1;
      }
      rows.push_back(std::move(v));
    }
    rk[p + 1] = rank_sparse(rows);
  }
  std::vector<int> h(top);
  for (int p = 0; p < top; ++p) h[p] = static_cast<int>(simp[p].size()) - rk[p + 1] - rk[p];
  return h;
}

// ---- intervals

IntervalPoset interval_poset(const Poset& P) {
  IntervalPoset I;
  std::vector<std::string> labels;
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.ids_of(P.up_bits(x))) {
      I.index[{x, y}] = static_cast<int>(I.pairs.size());
      I.pairs.emplace_back(x, y);
      labels.push_back("(" + P.label(x) + "," + P.label(y) + ")");
    }
  std::vector<std::pair<int, int>> cov;
  for (size_t k = 0; k < I.pairs.size(); ++k) {
    auto [x, y] = I.pairs[k];
    for (int u : P.upper_covers(x))
      if (P.leq(u, y)) cov.emplace_back(static_cast<int>(k), I.index.at({u, y}));
    for (int w : P.lower_covers(y))
      if (P.leq(x, w)) cov.emplace_back(static_cast<int>(k), I.index.at({x, w}));
  }
  I.poset = std::make_shared<Poset>(Poset::from_covers(static_cast<int>(I.pairs.size()), cov, labels));
  for (auto [x, y] : I.pairs) {
    I.pr1.push_back(x);
    I.pr2.push_back(y);
  }
  if (auto b = P.bottom()) {
    I.iota.resize(P.size());
    for (int y = 0; y < P.size(); ++y) I.iota[y] = I.index.at({*b, y});
  }
  return I;
}

// ---- morphisms

bool SheafMorphism::natural(const PosetSheaf& F, const PosetSheaf& G) const {
  for (auto [x, y] : F.base().covers())
    if (!(at[x] * F.restrict(x, y) == G.restrict(x, y) * at[y])) return false;
  return true;
}

QMatrix SheafMorphism::on_sections(const Sections& src, const Sections& dst) const {
  QMatrix m(dst.dim(), src.dim());
  for (int k = 0; k < src.dim(); ++k) {
    std::vector<Q> fam(dst.coords);
    for (const auto& [x, off] : src.offset) {
      const QMatrix& A = at[x];
      std::vector<Q> v(A.cols());
      for (int c = 0; c < A.cols(); ++c) v[c] = src.basis(off + c, k);
      auto w = mat_vec(A, v);
      int o = dst.offset.at(x);
      for (int r = 0; r < A.rows(); ++r) fam[o + r] = w[r];
    }
    auto c = dst.coordinates(fam);
    for (int r = 0; r < dst.dim(); ++r) m(r, k) = c[r];
  }
  return m;
}

// ---- the sheaves on L, L^op and Int(L)

FlagSheaf flag_sheaf(const Semilattice& L, const FlagComplex& Fl) {
  FlagSheaf S;
  S.base = std::make_shared<Poset>(L.order);
  int top = Fl.top_degree();
  S.stalk.resize(top + 1);
  for (int j = 0; j <= top; ++j) {
    S.stalk[j].resize(L.size());
    for (int x = 0; x < L.size(); ++x)
      for (int b = 0; b < Fl.dim(j); ++b)
        if (L.leq(Fl.basis_top(j, b), x)) S.stalk[j][x].push_back(b);
    const auto& st = S.stalk[j];
    std::vector<int> dims(L.size());
    for (int x = 0; x < L.size(); ++x) dims[x] = static_cast<int>(st[x].size());
    S.F.emplace_back(S.base, dims, [&](int x, int y) {
      QMatrix m(dims[x], dims[y]);
      for (int r = 0; r < dims[x]; ++r) {
        int c = static_cast<int>(std::find(st[y].begin(), st[y].end(), st[x][r]) - st[y].begin());
        m(r, c) = 1;
      }
      return m;
    });
  }
  for (int j = 0; j < top; ++j) {
    QMatrix D = Fl.delta(j);
    SheafMorphism mor;
    for (int x = 0; x < L.size(); ++x) {
      const auto &src = S.stalk[j][x], &dst = S.stalk[j + 1][x];
      QMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
      for (size_t r = 0; r < dst.size(); ++r)
        for (size_t c = 0; c < src.size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = D(dst[r], src[c]);
      mor.at.push_back(std::move(m));
    }
    S.delta.push_back(std::move(mor));
  }
  return S;
}

std::vector<PosetSheaf> dp_sheaf(std::shared_ptr<const PartialBlowup> B, std::shared_ptr<const Poset> Lop,
                                 bool only_below_one_hat, LocalDPFamily* family) {
  const auto& L = B->lat;
  LocalDPFamily own;
  LocalDPFamily& fam = family ? *family : own;
  fam.at.clear();
  fam.at.resize(L.size());
  int one = B->H->one_hat();
  int one_atom = one >= 0 ? L.atom_of_label[one] : -1;
  int top = 0;
  for (int y = 0; y < L.size(); ++y) {
    if (only_below_one_hat && one_atom >= 0 && L.leq(one_atom, y)) continue;
    fam.at[y] = std::make_unique<LocalDP>(B, y);
    top = std::max(top, fam.at[y]->top_degree());
  }
  std::vector<PosetSheaf> out;
  for (int i = 0; i <= top; ++i) {
    std::vector<int> dims(L.size(), 0);
    for (int y = 0; y < L.size(); ++y)
      if (fam.at[y]) dims[y] = static_cast<int>(fam.at[y]->basis(i).size());
    // x <= y in L^op means y <= x in L, with D_y -> D_x
    out.emplace_back(Lop, dims, [&](int x, int y) {
      if (!dims[x] || !dims[y]) return zero(dims[x], dims[y]);
      return fam.at[y]->restriction(*fam.at[x], i);
    });
  }
  return out;
}

// ---- verification of the C complex

SheafCheckReport build_C_and_verify(const LerayModel& model, const SheafCheckOptions& opt) {
  if (model.hat()) throw std::invalid_argument("the sheaf check is for B, with 1hat in H");
  auto B = model.blowup_ptr();
  const auto& L = B->lat;
  SheafCheckReport rep;
  rep.lattice_size = L.size();
  auto Lp = std::make_shared<Poset>(L.order);
  auto Lop = std::make_shared<Poset>(L.order.opposite());
  IntervalPoset I = interval_poset(*Lp);
  rep.interval_size = static_cast<int>(I.pairs.size());
  if (rep.interval_size > opt.max_poset_size)
    throw CapExceeded("Int(L) has " + std::to_string(rep.interval_size) + " elements");

  FlagComplex Fl(L);
  FlagSheaf FS = flag_sheaf(L, Fl);
  LocalDPFamily fam;
  auto D = dp_sheaf(B, Lop, true, &fam);
  int imax = static_cast<int>(D.size()) - 1, jmax = Fl.top_degree();

  rep.flag_flasque = true;
  for (const auto& F : FS.F)
    if (!flasque(F)) rep.flag_flasque = false;

  // C^{ij} = pr1^* Fl^j tensor pr2^* D^i
  std::vector<PosetSheaf> pF, pD;
  for (int j = 0; j <= jmax; ++j) pF.push_back(pullback(I.poset, I.pr1, FS.F[j]));
  for (int i = 0; i <= imax; ++i) pD.push_back(pullback(I.poset, I.pr2, D[i]));
  std::map<std::pair<int, int>, PosetSheaf> C;
  std::map<std::pair<int, int>, Sections> G;
  for (int i = 0; i <= imax; ++i)
    for (int j = 0; j <= jmax; ++j) {
      C.emplace(std::make_pair(i, j), tensor(pF[j], pD[i]));
      G.emplace(std::make_pair(i, j), global_sections(C.at({i, j})));
    }

  // diagonal blocks: C(z, z) = Fl^j(L_{<=z}) tensor D^i_z for rank(z) = j
  auto blocks = [&](int j) {
    std::vector<int> zs;
    for (int z = 0; z < L.size(); ++z)
      if (L.rank(z) == j && fam.at[z]) zs.push_back(z);
    return zs;
  };
  auto projection = [&](int i, int j) {
    const Sections& S = G.at({i, j});
    std::vector<std::pair<int, int>> rows;  // (z, coordinate in C(z,z))
    for (int z : blocks(j))
      for (int c = 0; c < C.at({i, j}).dim(I.index.at({z, z})); ++c) rows.emplace_back(z, c);
    QMatrix P(static_cast<int>(rows.size()), S.dim());
    for (size_t r = 0; r < rows.size(); ++r) {
      int off = S.offset.at(I.index.at({rows[r].first, rows[r].first}));
      for (int k = 0; k < S.dim(); ++k) P(static_cast<int>(r), k) = S.basis(off + rows[r].second, k);
    }
    return P;
  };

  rep.gamma_dims_match = rep.diagonal_iso = rep.intertwines = true;
  for (int i = 0; i <= imax; ++i)
    for (int j = 0; j <= jmax; ++j) {
      int g = G.at({i, j}).dim();
      rep.gamma_dims[{i, j}] = g;
      rep.model_dims[{i, j}] = model.dim(i, j);
      if (g != model.dim(i, j)) rep.gamma_dims_match = false;
      QMatrix P = projection(i, j);
      if (P.rows() != g || rank(P) != g) rep.diagonal_iso = false;
    }

  // Gamma(delta) against delta tensor restriction on the diagonal blocks
  std::map<std::pair<int, int>, QMatrix> gdelta;
  for (int i = 0; i <= imax; ++i)
    for (int j = 0; j < jmax; ++j) {
      SheafMorphism mor;
      for (size_t k = 0; k < I.pairs.size(); ++k) {
        auto [x, y] = I.pairs[k];
        mor.at.push_back(kron(FS.delta[j].at[x], QMatrix::identity(D[i].dim(y))));
      }
      if (!mor.natural(C.at({i, j}), C.at({i, j + 1}))) rep.intertwines = false;
      QMatrix GD = mor.on_sections(G.at({i, j}), G.at({i, j + 1}));
      QMatrix Fdelta = Fl.delta(j);
      auto src = blocks(j), dst = blocks(j + 1);
      std::vector<std::tuple<int, int, int>> scol, drow;  // (z, flag basis position, D basis index)
      for (int z : src)
        for (int b = 0; b < Fl.dim(j); ++b)
          if (Fl.basis_top(j, b) == z)
            for (size_t f = 0; f < fam.at[z]->basis(i).size(); ++f) scol.emplace_back(z, b, static_cast<int>(f));
      for (int w : dst)
        for (int b = 0; b < Fl.dim(j + 1); ++b)
          if (Fl.basis_top(j + 1, b) == w)
            for (size_t f = 0; f < fam.at[w]->basis(i).size(); ++f) drow.emplace_back(w, b, static_cast<int>(f));
      QMatrix T(static_cast<int>(drow.size()), static_cast<int>(scol.size()));
      std::map<std::pair<int, int>, QMatrix> rho;
      for (size_t r = 0; r < drow.size(); ++r)
        for (size_t c = 0; c < scol.size(); ++c) {
          auto [w, bw, fw] = drow[r];
          auto [z, bz, fz] = scol[c];
          if (!L.lt(z, w) || sgn(Fdelta(bw, bz)) == 0) continue;
          auto it = rho.find({z, w});
          if (it == rho.end()) it = rho.emplace(std::make_pair(z, w), fam.at[z]->restriction(*fam.at[w], i)).first;
          T(static_cast<int>(r), static_cast<int>(c)) = Fdelta(bw, bz) * it->second(fw, fz);
        }
      // the projections list blocks in the same (z, flag, D) order as above
      if (!(projection(i, j + 1) * GD == T * projection(i, j))) rep.intertwines = false;
      gdelta.emplace(std::make_pair(i, j), std::move(GD));
    }
  rep.dual = dual_complex_check(model);

  // (b) each C^{ij} has no higher cohomology
  rep.acyclic = true;
  for (auto& [ij, F] : C) {
    auto h = sheaf_cohomology(F, opt.cohomology);
    for (size_t q = 1; q < h.dims.size(); ++q)
      if (h.dims[q]) rep.acyclic = false;
    if (!h.exact) rep.all_exact = false;
    rep.c_cohomology.emplace(ij, std::move(h));
  }

  // (c) cohomology of the sections complex against iota_! D
  rep.resolution_ok = true;
  for (int i = 0; i <= imax; ++i) {
    std::vector<int> dims(jmax + 1), rk(jmax + 2, 0);
    for (int j = 0; j <= jmax; ++j) dims[j] = G.at({i, j}).dim();
    for (int j = 0; j < jmax; ++j) rk[j + 1] = rank(gdelta.at({i, j}));
    std::vector<int> hs(jmax + 1);
    for (int j = 0; j <= jmax; ++j) hs[j] = dims[j] - rk[j + 1] - rk[j];
    auto h = sheaf_cohomology(extend_by_zero(I.poset, I.iota, D[i]), opt.cohomology);
    if (!h.exact) rep.all_exact = false;
    std::vector<int> hi = h.dims;
    size_t n = std::max(hs.size(), hi.size());
    hs.resize(n, 0);
    hi.resize(n, 0);
    if (hs != hi) rep.resolution_ok = false;
    rep.sections_cohomology[i] = hs;
    rep.iota_cohomology[i] = hi;
  }
  return rep;
}

}  // namespace leray
