#include "leray/semilattice.hpp"

#include <algorithm>

namespace leray {

std::vector<int> mask_members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(__builtin_ctzll(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& v) {
  Mask m = 0;
  for (int i : v) m |= bit(i);
  return m;
}

bool mask_lex_less(Mask a, Mask b) {
  auto va = mask_members(a), vb = mask_members(b);
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

std::vector<int> Semilattice::atoms() const { return order.upper_covers(bottom); }

Mask Semilattice::label_mask() const {
  Mask m = 0;
  for (size_t l = 0; l < atom_of_label.size(); ++l)
    if (atom_of_label[l] >= 0) m |= bit(static_cast<int>(l));
  return m;
}

std::optional<int> Semilattice::join_labels(Mask m) const {
  std::vector<int> s;
  for (int l : mask_members(m)) {
    if (l >= static_cast<int>(atom_of_label.size()) || atom_of_label[l] < 0)
      throw PosetError("unknown atom label");
    s.push_back(atom_of_label[l]);
  }
  return order.join_of(s);
}

int Semilattice::element_with_support(Mask m) const {
  auto it = by_supp.find(m);
  return it == by_supp.end() ? -1 : it->second;
}

std::vector<int> Semilattice::rank_level(int i) const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (rank(x) == i) out.push_back(x);
  return out;
}

std::vector<int> Semilattice::rank_profile() const {
  std::vector<int> prof(order.height() + 1, 0);
  for (int x = 0; x < size(); ++x) ++prof[rank(x)];
  return prof;
}

void Semilattice::index_atoms(const std::vector<int>& atom_label_of_element) {
  if (!order.bottom()) throw PosetError("semilattice has no minimum");
  bottom = *order.bottom();
  int maxl = -1;
  for (int l : atom_label_of_element) maxl = std::max(maxl, l);
  if (maxl >= 64) throw PosetError("more than 64 atom labels");
  atom_of_label.assign(maxl + 1, -1);
  for (int x = 0; x < size(); ++x)
    if (atom_label_of_element[x] >= 0) atom_of_label[atom_label_of_element[x]] = x;
  supp.assign(size(), 0);
  for (int x = 0; x < size(); ++x)
    for (size_t l = 0; l < atom_of_label.size(); ++l)
      if (atom_of_label[l] >= 0 && leq(atom_of_label[l], x)) supp[x] |= bit(static_cast<int>(l));
  by_supp.clear();
  for (int x = 0; x < size(); ++x) by_supp.emplace(supp[x], x);
}

SubLattice interval_lattice(const Semilattice& L, int x, int y) {
  auto [P, ids] = L.order.interval(x, y);
  SubLattice out;
  out.lat.order = std::move(P);
  out.to_parent = ids;
  int bot = *out.lat.order.bottom();
  std::vector<int> lab(ids.size(), -1);
  std::vector<int> at = out.lat.order.upper_covers(bot);
  // label atoms in order of parent id
  std::sort(at.begin(), at.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  for (size_t k = 0; k < at.size(); ++k) lab[at[k]] = static_cast<int>(k);
  out.lat.index_atoms(lab);
  for (int a : at) out.lat.label_names.push_back(L.order.label(ids[a]));
  out.lat.label_names.resize(out.lat.atom_of_label.size());
  return out;
}

}  // namespace leray
