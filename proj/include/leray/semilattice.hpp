#pragma once

#include "leray/poset.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace leray {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }
inline Mask bit(int i) { return Mask{1} << i; }
std::vector<int> mask_members(Mask m);
Mask mask_of(const std::vector<int>& v);
// Lexicographic comparison of the sorted member lists.
bool mask_lex_less(Mask a, Mask b);

// Atomic meet-semilattice whose elements are identified by their atom support.
// Atom labels are small integers (at most 64 of them); supp(x) is the mask of
// labels of atoms below x.
struct Semilattice {
  Poset order;
  int bottom = 0;
  std::vector<int> atom_of_label;  // label -> element id (-1 if unused)
  std::vector<Mask> supp;          // element -> label mask
  std::vector<std::string> label_names;
  std::unordered_map<Mask, int> by_supp;

  int size() const { return order.size(); }
  bool leq(int a, int b) const { return order.leq(a, b); }
  bool lt(int a, int b) const { return order.lt(a, b); }
  int rank(int x) const { return order.rank(x); }
  int d(int x, int y) const { return order.rank(y) - order.rank(x); }
  std::optional<int> top() const { return order.top(); }
  std::vector<int> atoms() const;
  Mask label_mask() const;

  std::optional<int> join(int a, int b) const { return order.join(a, b); }
  std::optional<int> join_of(const std::vector<int>& s) const { return order.join_of(s); }
  // Join of the atoms whose labels are in m.
  std::optional<int> join_labels(Mask m) const;
  int element_with_support(Mask m) const;  // -1 if none

  // Elements of rank i.
  std::vector<int> rank_level(int i) const;
  std::vector<int> rank_profile() const;

  // Recompute bottom, supports, lookup table. Atom labels given per element
  // (-1 for non-atoms).
  void index_atoms(const std::vector<int>& atom_label_of_element);
};

// Interval [x, y] as a semilattice of its own, with atoms relabelled 0..k-1.
struct SubLattice {
  Semilattice lat;
  std::vector<int> to_parent;  // new id -> parent id
};
SubLattice interval_lattice(const Semilattice& L, int x, int y);

}  // namespace leray
