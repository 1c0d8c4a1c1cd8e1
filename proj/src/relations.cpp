#include "leray/relations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace leray {

GroebnerSystem::GroebnerSystem(std::shared_ptr<const PartialBlowup> B, bool kill_one_hat)
    : B_(std::move(B)), kill_one_hat_(kill_one_hat) {
  const PartialBuildingSet& H = *B_->H;
  int n = H.size();
  if (n > 64) throw std::invalid_argument("at most 64 generators supported");
  one_hat_ = H.one_hat();
  if (kill_one_hat_ && one_hat_ < 0) throw std::invalid_argument("OneHatMissing: 1hat is not in H");
  below_.resize(n);
  for (int h = 0; h < n; ++h) below_[h] = B_->nested->below(h);
  c_.resize(n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (h == g || ((below_[h] >> g) & 1)) c_[g].add(Mono::var(h), 1);
}

std::vector<std::string> GroebnerSystem::names() const {
  std::vector<std::string> out;
  for (int h = 0; h < n(); ++h) out.push_back(H().name(h));
  return out;
}

int GroebnerSystem::join_below(Mask s, int g) const {
  Mask m = s & below_[g];
  std::lock_guard<std::mutex> lk(mu_);
  auto it = join_memo_.find(m);
  if (it != join_memo_.end()) return it->second;
  int j = B_->nested->join_lattice(m);
  join_memo_.emplace(m, j);
  return j;
}

int GroebnerSystem::bound(Mask s, int g) const {
  return H().L().d(join_below(s, g), H().H[g]);
}

void GroebnerSystem::ensure_circuits() const {
  std::call_once(circuits_once_, [this] {
    const Semilattice& lat = B_->lat;
    auto rank_of = [&](Mask s) {
      auto j = lat.join_labels(s);
      if (!j) throw std::logic_error("nested set without a join");
      return lat.rank(*j);
    };
    int nn = n();
    // Depth-first over independent nested sets; every circuit is an
    // independent set plus one larger element.
    auto rec = [&](auto& self, Mask f, int next) -> void {
      for (int h = next; h < nn; ++h) {
        Mask g = f | bit(h);
        if (!nested(g)) continue;
        int k = popcount(g);
        if (rank_of(g) == k) {
          self(self, g, h + 1);
          continue;
        }
        bool circuit = true;
        for (int a : mask_members(g))
          if (rank_of(g & ~bit(a)) != k - 1) {
            circuit = false;
            break;
          }
        if (circuit) circuits_.push_back(g);
      }
    };
    rec(rec, 0, 0);
    std::sort(circuits_.begin(), circuits_.end(), mask_lex_less);
    for (Mask c : circuits_) broken_.push_back(c & (c - 1));
  });
}

const std::vector<Mask>& GroebnerSystem::nested_circuits() const {
  ensure_circuits();
  return circuits_;
}

bool GroebnerSystem::nbc(Mask e) const {
  if (!nested(e)) return false;
  if (popcount(e) < 2) return true;
  ensure_circuits();
  for (Mask b : broken_)
    if ((b & e) == b) return false;
  return true;
}

bool GroebnerSystem::standard(const Mono& m) const {
  if (kill_one_hat_ && ((m.e >> one_hat_) & 1)) return false;
  Mask sup = m.support();
  if (!nested(sup)) return false;
  if (!nbc(m.e)) return false;
  for (int g : mask_members(m.xs))
    if (m.exp(g) >= bound(sup, g)) return false;
  return true;
}

Element GroebnerSystem::c_power(int g, int d) const {
  long key = static_cast<long>(g) * 4096 + d;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cpow_.find(key);
    if (it != cpow_.end()) return it->second;
  }
  Element p = Element::scalar(1);
  for (int k = 0; k < d; ++k) p = mul(p, c_[g]);
  std::lock_guard<std::mutex> lk(mu_);
  cpow_.emplace(key, p);
  return p;
}

Element GroebnerSystem::normal_form(const Element& a) const {
  ensure_circuits();
  Element::Map work = a.terms();
  Element result;
  auto sub = [&work](const Mono& skip, const Element& prod, const Q& f) {
    for (const auto& [t, v] : prod.terms()) {
      if (t == skip) continue;
      auto [it, ins] = work.emplace(t, -f * v);
      if (!ins) {
        it->second -= f * v;
        if (sgn(it->second) == 0) work.erase(it);
      }
    }
  };
  while (!work.empty()) {
    auto it = work.begin();
    Mono m = it->first;
    Q c = it->second;
    work.erase(it);
    if (kill_one_hat_ && ((m.e >> one_hat_) & 1)) continue;
    Mask sup = m.support();
    if (!nested(sup)) continue;
    Element gen;
    Mono lead;
    bool found = false;
    for (size_t i = 0; i < broken_.size(); ++i)
      if ((broken_[i] & m.e) == broken_[i]) {
        gen = boundary(Element(Mono::ext(circuits_[i])));
        lead = Mono::ext(broken_[i]);
        found = true;
        break;
      }
    if (!found) {
      for (int g : mask_members(m.xs)) {
        int d = bound(sup, g);
        if (m.exp(g) < d) continue;
        if (d <= 0) throw std::logic_error("nested support with join not below g");
        Mask lower = sup & below_[g];
        Mask U = 0;
        for (int u : mask_members(lower)) {
          bool maximal = true;
          for (int v : mask_members(lower))
            if ((below_[v] >> u) & 1) maximal = false;
          if (maximal) U |= bit(u);
        }
        Mask S = U & m.e, T = U & ~S;
        Mono front = Mono::ext(S);
        for (int t : mask_members(T)) front.set_exp(t, 1);
        gen = mul(front, c_power(g, d));
        lead = front;
        lead.set_exp(g, lead.exp(g) + d);
        found = true;
        break;
      }
    }
    if (!found) {
      result.add(m, c);
      continue;
    }
    Mono q = quotient(m, lead);
    Element prod = mul(q, gen);
    Q s = prod.coeff(m);
    if (sgn(s) == 0) throw std::logic_error("reduction lost its lead term");
    sub(m, prod, c / s);
  }
  return result;
}

std::vector<Mono> GroebnerSystem::monomials(int xdeg, int edeg, bool only_standard) const {
  std::vector<Mono> out;
  if (xdeg < 0 || edeg < 0) return out;
  int nn = n();
  int cap = xdeg + edeg;
  // Enumerate nested faces F of size <= cap, then split F = S u T with
  // F - S contained in T.
  auto emit = [&](Mask F) {
    for (Mask S = F;; S = (S - 1) & F) {
      bool okS = popcount(S) == edeg;
      if (okS && only_standard) okS = nbc(S) && !(kill_one_hat_ && ((S >> one_hat_) & 1));
      Mask must = F & ~S;
      if (okS && popcount(must) <= xdeg) {
        for (Mask R = S;; R = (R - 1) & S) {
          Mask T = must | R;
          int t = popcount(T);
          bool fits = xdeg == 0 ? t == 0 : (t > 0 && t <= xdeg);
          if (fits) {
            std::vector<int> vars = mask_members(T);
            std::vector<int> lim(vars.size());
            bool ok = true;
            for (size_t i = 0; i < vars.size(); ++i) {
              lim[i] = only_standard ? bound(F, vars[i]) - 1 : xdeg;
              if (lim[i] < 1) ok = false;
            }
            if (ok) {
              Mono m = Mono::ext(S);
              auto rec = [&](auto& self, size_t i, int left) -> void {
                if (i == vars.size()) {
                  if (left == 0) out.push_back(m);
                  return;
                }
                int rest = static_cast<int>(vars.size() - i - 1);
                for (int b = 1; b <= lim[i] && b <= left - rest; ++b) {
                  m.set_exp(vars[i], b);
                  self(self, i + 1, left - b);
                }
                m.set_exp(vars[i], 0);
              };
              rec(rec, 0, xdeg);
            }
          }
          if (R == 0) break;
        }
      }
      if (S == 0) break;
    }
  };
  auto rec = [&](auto& self, Mask f, int next) -> void {
    emit(f);
    if (popcount(f) == cap) return;
    for (int h = next; h < nn; ++h)
      if (nested(f | bit(h))) self(self, f | bit(h), h + 1);
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end(), TermGreater());
  return out;
}

std::vector<Mono> GroebnerSystem::nested_monomials(int xdeg, int edeg) const {
  return monomials(xdeg, edeg, false);
}

std::vector<Mono> GroebnerSystem::basis(int xdeg, int edeg) const { return monomials(xdeg, edeg, true); }

int GroebnerSystem::max_xdeg() const { return H().L().rank(H().L().top_id); }

std::vector<Generator> GroebnerSystem::groebner_generators() const {
  ensure_circuits();
  auto nm = names();
  std::vector<Generator> out;
  auto faces = B_->nested->faces();
  std::set<Mask> facesS(faces.begin(), faces.end());
  // (i) minimal non-faces, every split
  std::set<Mask> minimal;
  for (Mask f : faces) {
    int top = f ? 63 - __builtin_clzll(f) : -1;
    for (int h = top + 1; h < n(); ++h) {
      Mask F = f | bit(h);
      if (facesS.count(F)) continue;
      bool min = true;
      for (int a : mask_members(F))
        if (!facesS.count(F & ~bit(a))) min = false;
      if (min) minimal.insert(F);
    }
  }
  std::vector<Mask> mins(minimal.begin(), minimal.end());
  std::sort(mins.begin(), mins.end(), mask_lex_less);
  for (Mask F : mins)
    for (Mask S = F;; S = (S - 1) & F) {
      Mono m = Mono::ext(S);
      for (int t : mask_members(F & ~S)) m.set_exp(t, 1);
      out.push_back({Generator::NonNested, Element(m), "SR " + mono_str(m, nm)});
      if (S == 0) break;
    }
  if (kill_one_hat_)
    out.push_back({Generator::OneHat, Element(Mono::ext(bit(one_hat_))), "e_1hat"});
  for (Mask C : circuits_)
    out.push_back({Generator::Circuit, boundary(Element(Mono::ext(C))), "boundary e" + H().set_name(C)});
  // (iii') nested antichains U, splits, g above the join
  for (Mask U : faces) {
    if (!B_->nested->antichain(U)) continue;
    int j = B_->nested->join_lattice(U);
    for (int g = 0; g < n(); ++g) {
      if (!H().L().lt(j, H().H[g])) continue;
      int d = H().L().d(j, H().H[g]);
      for (Mask S = U;; S = (S - 1) & U) {
        Mono front = Mono::ext(S);
        for (int t : mask_members(U & ~S)) front.set_exp(t, 1);
        Element f = mul(front, c_power(g, d));
        std::string desc = mono_str(front, nm) + " c_" + nm[g] + "^" + std::to_string(d);
        out.push_back({Generator::Linear, f, desc});
        if (S == 0) break;
      }
    }
  }
  return out;
}

std::vector<Generator> GroebnerSystem::presentation_generators() const {
  ensure_circuits();
  std::vector<Generator> out;
  for (auto& g : groebner_generators())
    if (g.kind == Generator::NonNested || g.kind == Generator::OneHat || g.kind == Generator::Circuit)
      out.push_back(g);
  auto nm = names();
  for (int a : mask_members(H().atoms())) out.push_back({Generator::Linear, c_[a], "c_" + nm[a]});
  return out;
}

void GroebnerSystem::ideal_span(int xdeg, int edeg, const std::vector<Mono>& cols,
                                const std::unordered_map<Mono, int, MonoHash>& col, Echelon* ech) const {
  (void)cols;
  ensure_circuits();
  std::vector<std::pair<Element, std::pair<int, int>>> gens;
  for (Mask C : circuits_) gens.push_back({boundary(Element(Mono::ext(C))), {0, popcount(C) - 1}});
  for (int a : mask_members(H().atoms())) gens.push_back({c_[a], {1, 0}});
  if (kill_one_hat_) gens.push_back({Element(Mono::ext(bit(one_hat_))), {0, 1}});
  for (const auto& [g, deg] : gens) {
    auto mult = nested_monomials(xdeg - deg.first, edeg - deg.second);
    for (const Mono& m : mult) {
      Element p = mul(m, g);
      SparseVec v;
      for (const auto& [t, c] : p.terms()) {
        auto it = col.find(t);
        if (it != col.end()) v[it->second] += c;
      }
      for (auto it = v.begin(); it != v.end();)
        it = sgn(it->second) == 0 ? v.erase(it) : std::next(it);
      if (!v.empty()) ech->add(std::move(v));
    }
  }
}

int GroebnerSystem::quotient_dim(int xdeg, int edeg) const {
  auto cols = nested_monomials(xdeg, edeg);
  std::unordered_map<Mono, int, MonoHash> col;
  for (size_t i = 0; i < cols.size(); ++i) col.emplace(cols[i], static_cast<int>(i));
  Echelon ech;
  ideal_span(xdeg, edeg, cols, col, &ech);
  return static_cast<int>(cols.size()) - ech.rank();
}

bool GroebnerSystem::generators_in_presentation_span(int xdeg, int edeg, std::string* why) const {
  auto cols = nested_monomials(xdeg, edeg);
  std::unordered_map<Mono, int, MonoHash> col;
  for (size_t i = 0; i < cols.size(); ++i) col.emplace(cols[i], static_cast<int>(i));
  Echelon ech;
  ideal_span(xdeg, edeg, cols, col, &ech);
  for (const auto& g : groebner_generators()) {
    if (g.f.is_zero()) continue;
    const Mono& l = g.f.lead();
    if (l.xdeg() > xdeg || l.edeg() > edeg) continue;
    // Multiply up into this bidegree by every nested monomial.
    for (const Mono& m : nested_monomials(xdeg - l.xdeg(), edeg - l.edeg())) {
      Element p = mul(m, g.f);
      SparseVec v;
      for (const auto& [t, c] : p.terms()) {
        auto it = col.find(t);
        if (it != col.end()) v[it->second] += c;
      }
      for (auto it = v.begin(); it != v.end();)
        it = sgn(it->second) == 0 ? v.erase(it) : std::next(it);
      if (!ech.reduce(v).empty()) {
        if (why) *why = g.describe;
        return false;
      }
    }
  }
  return true;
}

Element s_polynomial(const Element& f, const Element& g) {
  const Mono& a = f.lead();
  const Mono& b = g.lead();
  Mono l = a;
  l.e |= b.e;
  for (int i : mask_members(b.xs)) l.set_exp(i, std::max(a.exp(i), b.exp(i)));
  Element pf = mul(quotient(l, a), f);
  Element pg = mul(quotient(l, b), g);
  Q sf = pf.coeff(l), sg = pg.coeff(l);
  if (sgn(sf) == 0 || sgn(sg) == 0) return Element();
  return pf * Q(1 / sf) - pg * Q(1 / sg);
}

GroebnerReport check_groebner(const std::vector<Generator>& gens,
                              const std::function<Element(const Element&)>& nf,
                              const std::vector<std::string>& names) {
  GroebnerReport r;
  auto fail = [&](const std::string& what) {
    if (r.failures++ == 0) r.first_failure = what;
  };
  for (size_t i = 0; i < gens.size(); ++i) {
    const Element& f = gens[i].f;
    if (f.is_zero()) continue;
    for (int h : mask_members(f.lead().e)) {
      ++r.self_products;
      if (!nf(mul(Mono::ext(bit(h)), f)).is_zero()) fail("e_" + names[h] + " * " + gens[i].describe);
    }
    for (size_t j = i + 1; j < gens.size(); ++j) {
      const Element& g = gens[j].f;
      if (g.is_zero()) continue;
      ++r.pairs;
      // Both monomial: the S-polynomial vanishes identically.
      if (f.size() == 1 && g.size() == 1) continue;
      Element s = s_polynomial(f, g);
      if (s.is_zero()) continue;
      if (!nf(s).is_zero()) fail(gens[i].describe + " / " + gens[j].describe);
    }
  }
  return r;
}

Element normal_form_by(const Element& a, const std::vector<Element>& gens) {
  Element::Map work = a.terms();
  Element result;
  while (!work.empty()) {
    auto it = work.begin();
    Mono m = it->first;
    Q c = it->second;
    work.erase(it);
    const Element* hit = nullptr;
    for (const auto& g : gens)
      if (!g.is_zero() && divides(g.lead(), m)) {
        hit = &g;
        break;
      }
    if (!hit) {
      result.add(m, c);
      continue;
    }
    Element prod = mul(quotient(m, hit->lead()), *hit);
    Q s = prod.coeff(m);
    Q f = c / s;
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

}  // namespace leray
