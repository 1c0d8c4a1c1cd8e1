#include "leray/matroid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace leray {

bool Matroid::independent(Mask s) const {
  for (Mask c : circuits)
    if ((c & s) == c) return false;
  return true;
}

int Matroid::rank(Mask s) const {
  Mask ind = 0;
  for (int e : mask_members(s))
    if (independent(ind | bit(e))) ind |= bit(e);
  return popcount(ind);
}

Mask Matroid::closure(Mask s) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mask c : circuits) {
      Mask rest = c & ~s;
      if (rest && popcount(rest) == 1) {
        s |= rest;
        changed = true;
      }
    }
  }
  return s;
}

int Matroid::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (ground[i] == label) return i;
  return -1;
}

std::string Matroid::set_label(Mask s) const {
  bool short_labels = std::all_of(ground.begin(), ground.end(),
                                  [](const std::string& g) { return g.size() == 1; });
  std::string out;
  for (int e : mask_members(s)) {
    if (!short_labels && !out.empty()) out += ",";
    out += ground[e];
  }
  return out;
}

Matroid matroid_from_circuit_masks(std::vector<std::string> ground, std::vector<Mask> circuits,
                                   bool check_axioms) {
  if (ground.size() > 64) throw MatroidError("ground sets larger than 64 are not supported");
  {
    std::set<std::string> seen(ground.begin(), ground.end());
    if (seen.size() != ground.size()) throw MatroidError("ground labels are not distinct");
  }
  Matroid m;
  m.ground = std::move(ground);
  std::sort(circuits.begin(), circuits.end());
  circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());
  for (Mask c : circuits) {
    if (c == 0) throw CircuitAxiomViolation("empty circuit");
    if (c & ~m.all()) throw CircuitAxiomViolation("circuit uses an element outside the ground set");
  }
  for (Mask c : circuits) {
    if (popcount(c) == 1)
      throw LoopPresent("element " + m.set_label(c) + " is a loop; delete it before building the lattice");
    if (popcount(c) == 2) {
      auto v = mask_members(c);
      throw ParallelPair("elements " + m.ground[v[0]] + " and " + m.ground[v[1]] +
                         " are parallel; keep only one of them");
    }
  }
  if (!check_axioms) {
    m.circuits = std::move(circuits);
    return m;
  }
  for (Mask a : circuits)
    for (Mask b : circuits)
      if (a != b && (a & b) == a)
        throw CircuitAxiomViolation("circuit " + m.set_label(a) + " is contained in " + m.set_label(b));
  for (size_t i = 0; i < circuits.size(); ++i)
    for (size_t j = i + 1; j < circuits.size(); ++j) {
      Mask common = circuits[i] & circuits[j];
      Mask uni = circuits[i] | circuits[j];
      for (int e : mask_members(common)) {
        Mask target = uni & ~bit(e);
        bool found = false;
        for (Mask c : circuits)
          if ((c & target) == c) {
            found = true;
            break;
          }
        if (!found)
          throw CircuitAxiomViolation("elimination fails for " + m.set_label(circuits[i]) + ", " +
                                      m.set_label(circuits[j]) + " at " + m.ground[e]);
      }
    }
  m.circuits = std::move(circuits);
  return m;
}

static Mask labels_to_mask(const std::vector<std::string>& ground, const std::vector<std::string>& s) {
  Mask m = 0;
  for (const auto& l : s) {
    auto it = std::find(ground.begin(), ground.end(), l);
    if (it == ground.end()) throw MatroidError("unknown ground element '" + l + "'");
    m |= bit(static_cast<int>(it - ground.begin()));
  }
  return m;
}

Matroid matroid_from_circuits(std::vector<std::string> ground,
                              const std::vector<std::vector<std::string>>& circuits) {
  std::vector<Mask> cm;
  for (const auto& c : circuits) cm.push_back(labels_to_mask(ground, c));
  return matroid_from_circuit_masks(std::move(ground), std::move(cm));
}

// Minimal dependent sets of a rank function given on all subsets.
template <class Rank>
static std::vector<Mask> circuits_from_rank(int n, Rank&& rk) {
  if (n > 24) throw MatroidError("too many elements to derive circuits by enumeration");
  std::vector<Mask> subsets(Mask{1} << n);
  std::iota(subsets.begin(), subsets.end(), Mask{0});
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  std::vector<Mask> out;
  for (Mask s : subsets) {
    if (s == 0) continue;
    if (rk(s) == popcount(s)) continue;
    bool has_sub = false;
    for (Mask c : out)
      if ((c & s) == c) {
        has_sub = true;
        break;
      }
    if (!has_sub) out.push_back(s);
  }
  return out;
}

Matroid matroid_from_bases(std::vector<std::string> ground,
                           const std::vector<std::vector<std::string>>& bases) {
  if (bases.empty()) throw MatroidError("no bases given");
  std::vector<Mask> bm;
  for (const auto& b : bases) bm.push_back(labels_to_mask(ground, b));
  int n = static_cast<int>(ground.size());
  auto rk = [&](Mask s) {
    int r = 0;
    for (Mask b : bm) r = std::max(r, popcount(b & s));
    return r;
  };
  return matroid_from_circuit_masks(std::move(ground), circuits_from_rank(n, rk), false);
}

Matroid matroid_from_graph(int vertices, const std::vector<std::pair<int, int>>& edges,
                           std::vector<std::string> labels) {
  int n = static_cast<int>(edges.size());
  for (auto [u, v] : edges)
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) throw MatroidError("edge endpoint out of range");
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  if (n > 26) throw MatroidError("graph has too many edges for cycle enumeration");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      if (std::minmax(a, b) == std::minmax(c, d))
        throw ParallelPair("edges " + labels[i] + " and " + labels[j] + " are parallel; keep only one of them");
    }
  for (int i = 0; i < n; ++i)
    if (edges[i].first == edges[i].second) throw LoopPresent("edge " + labels[i] + " is a loop; delete it");
  // simple cycles: connected edge sets with every vertex of degree 2
  std::vector<Mask> cycles;
  std::vector<int> deg(vertices);
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    if (popcount(s) < 3) continue;
    std::fill(deg.begin(), deg.end(), 0);
    bool ok = true;
    for (int e : mask_members(s)) {
      if (++deg[edges[e].first] > 2 || ++deg[edges[e].second] > 2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int v = 0; v < vertices && ok; ++v) ok = deg[v] == 0 || deg[v] == 2;
    if (!ok) continue;
    // connected: walk from one edge
    Mask seen = bit(__builtin_ctzll(s));
    bool grew = true;
    while (grew) {
      grew = false;
      for (int e : mask_members(s & ~seen))
        for (int f : mask_members(seen)) {
          auto [a, b] = edges[e];
          auto [c, d] = edges[f];
          if (a == c || a == d || b == c || b == d) {
            seen |= bit(e);
            grew = true;
            break;
          }
        }
    }
    if (seen == s) cycles.push_back(s);
  }
  return matroid_from_circuit_masks(std::move(labels), std::move(cycles), false);
}

GeometricLattice lattice_of_flats(const Matroid& m) {
  std::set<Mask> flats;
  std::vector<Mask> frontier{m.closure(0)};
  flats.insert(frontier[0]);
  std::vector<std::pair<Mask, Mask>> cover_masks;
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask f : frontier) {
      std::set<Mask> ups;
      for (int e = 0; e < m.size(); ++e)
        if (!(f & bit(e))) ups.insert(m.closure(f | bit(e)));
      for (Mask g : ups) {
        cover_masks.emplace_back(f, g);
        if (flats.insert(g).second) next.push_back(g);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Mask> fl(flats.begin(), flats.end());
  std::map<Mask, int> rk;
  for (Mask f : fl) rk[f] = m.rank(f);
  std::sort(fl.begin(), fl.end(), [&](Mask a, Mask b) {
    if (rk[a] != rk[b]) return rk[a] < rk[b];
    return mask_lex_less(a, b);
  });
  std::map<Mask, int> id;
  for (size_t i = 0; i < fl.size(); ++i) id[fl[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> cov;
  for (auto [a, b] : cover_masks) cov.emplace_back(id[a], id[b]);
  std::vector<std::string> labels;
  for (Mask f : fl) labels.push_back(m.set_label(f));
  labels.front() = "bot";
  labels.back() = "1hat";
  GeometricLattice L;
  L.order = Poset::from_covers(static_cast<int>(fl.size()), cov, labels);
  std::vector<int> atom_label(fl.size(), -1);
  for (size_t i = 0; i < fl.size(); ++i)
    if (rk[fl[i]] == 1) atom_label[i] = __builtin_ctzll(fl[i]);
  L.index_atoms(atom_label);
  L.label_names = m.ground;
  L.top_id = *L.order.top();
  return L;
}

bool restriction_connected(const Semilattice& L, int x) {
  std::vector<int> at = mask_members(L.supp[x]);
  if (at.size() <= 1) return true;
  // greedy basis, then fundamental circuits link the components
  std::vector<int> basis;
  auto rank_of = [&](const std::vector<int>& labels) {
    std::vector<int> ids;
    for (int l : labels) ids.push_back(L.atom_of_label[l]);
    auto j = L.join_of(ids);
    return L.rank(*j);
  };
  for (int a : at) {
    basis.push_back(a);
    if (rank_of(basis) != static_cast<int>(basis.size())) basis.pop_back();
  }
  std::map<int, int> parent;
  for (int a : at) parent[a] = a;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int e : at) {
    if (std::find(basis.begin(), basis.end(), e) != basis.end()) continue;
    for (size_t k = 0; k < basis.size(); ++k) {
      std::vector<int> swapped = basis;
      swapped[k] = e;
      if (rank_of(swapped) == static_cast<int>(basis.size())) unite(e, basis[k]);
    }
  }
  int root = find(at[0]);
  for (int a : at)
    if (find(a) != root) return false;
  return true;
}

std::vector<int> irreducibles(const Semilattice& L) {
  std::vector<int> out;
  for (int x = 0; x < L.size(); ++x)
    if (x != L.bottom && restriction_connected(L, x)) out.push_back(x);
  sort_by_prec(L, out);
  return out;
}

void sort_by_prec(const Semilattice& L, std::vector<int>& ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (L.rank(a) != L.rank(b)) return L.rank(a) > L.rank(b);
    if (L.supp[a] != L.supp[b]) return mask_lex_less(L.supp[a], L.supp[b]);
    return a < b;
  });
}

bool BuildingSet::contains(int x) const {
  return std::find(members.begin(), members.end(), x) != members.end();
}

BuildingSet minimal_building_set(const GeometricLattice& L) { return BuildingSet{irreducibles(L)}; }

BuildingSet maximal_building_set(const GeometricLattice& L) {
  std::vector<int> m;
  for (int x = 0; x < L.size(); ++x)
    if (x != L.bottom) m.push_back(x);
  sort_by_prec(L, m);
  return BuildingSet{m};
}

BuildingSet building_set_from(const Semilattice& L, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  sort_by_prec(L, members);
  return BuildingSet{members};
}

std::vector<int> factors(const Semilattice& L, const BuildingSet& G, int x) {
  if (x == L.bottom) throw PosetError("factors of the bottom element are undefined");
  std::vector<int> below;
  for (int g : G.members)
    if (L.leq(g, x)) below.push_back(g);
  std::vector<int> out;
  for (int g : below) {
    bool maximal = true;
    for (int h : below)
      if (h != g && L.leq(g, h)) maximal = false;
    if (maximal) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool validate_building_set(const Semilattice& L, const BuildingSet& G, std::string* why, bool require_top) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int g : G.members)
    if (g == L.bottom || g < 0 || g >= L.size()) return fail("building set contains the bottom or an unknown id");
  if (require_top && L.top() && !G.contains(*L.top())) return fail("the top element is missing");
  for (int x = 0; x < L.size(); ++x) {
    if (x == L.bottom) continue;
    std::vector<int> F = factors(L, G, x);
    if (F.empty()) return fail("no building-set element below " + L.order.label(x));
    // tuples in the product of lower intervals
    std::vector<std::vector<int>> parts;
    for (int f : F) parts.push_back(L.order.ids_of(L.order.down_bits(f)));
    std::vector<std::vector<int>> tuples{{}};
    for (const auto& part : parts) {
      std::vector<std::vector<int>> nxt;
      for (const auto& t : tuples)
        for (int e : part) {
          auto u = t;
          u.push_back(e);
          nxt.push_back(std::move(u));
        }
      tuples = std::move(nxt);
      if (tuples.size() > 200000) return fail("product too large to check at " + L.order.label(x));
    }
    size_t below_x = L.order.down_bits(x).count();
    if (tuples.size() != below_x) return fail("interval size mismatch at " + L.order.label(x));
    std::vector<int> image;
    for (const auto& t : tuples) {
      auto j = L.join_of(t);
      if (!j) return fail("join missing at " + L.order.label(x));
      image.push_back(*j);
    }
    {
      auto s = image;
      std::sort(s.begin(), s.end());
      if (std::unique(s.begin(), s.end()) != s.end()) return fail("join map not injective at " + L.order.label(x));
    }
    if (F.size() == 1) continue;
    for (size_t a = 0; a < tuples.size(); ++a)
      for (size_t b = 0; b < tuples.size(); ++b) {
        bool comp = true;
        for (size_t k = 0; k < F.size(); ++k) comp = comp && L.leq(tuples[a][k], tuples[b][k]);
        if (comp != L.leq(image[a], image[b])) return fail("join map not an order isomorphism at " + L.order.label(x));
      }
  }
  return true;
}

std::vector<Mask> local_circuits(const Semilattice& L, int x) {
  std::vector<int> at = mask_members(L.supp[x]);
  int k = static_cast<int>(at.size());
  if (k > 24) throw MatroidError("too many atoms for circuit enumeration");
  std::vector<Mask> subs;
  for (Mask s = 1; s < (Mask{1} << k); ++s) subs.push_back(s);
  std::stable_sort(subs.begin(), subs.end(), [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  std::vector<Mask> out;
  for (Mask s : subs) {
    Mask lab = 0;
    for (int i : mask_members(s)) lab |= bit(at[i]);
    bool has_sub = false;
    for (Mask c : out)
      if ((c & lab) == c) {
        has_sub = true;
        break;
      }
    if (has_sub) continue;
    auto j = L.join_labels(lab);
    if (L.rank(*j) < popcount(lab)) out.push_back(lab);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace leray
