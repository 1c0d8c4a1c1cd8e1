#pragma once

#include "leray/semilattice.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace leray {

struct MatroidError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CircuitAxiomViolation : MatroidError {
  using MatroidError::MatroidError;
};
struct LoopPresent : MatroidError {
  using MatroidError::MatroidError;
};
struct ParallelPair : MatroidError {
  using MatroidError::MatroidError;
};

struct Matroid {
  std::vector<std::string> ground;
  std::vector<Mask> circuits;  // sorted

  int size() const { return static_cast<int>(ground.size()); }
  Mask all() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  bool independent(Mask s) const;
  int rank(Mask s) const;
  Mask closure(Mask s) const;
  int index_of(const std::string& label) const;  // -1 if absent
  std::string set_label(Mask s) const;
};

Matroid matroid_from_circuits(std::vector<std::string> ground,
                              const std::vector<std::vector<std::string>>& circuits);
// Bases and graph inputs produce circuit families that satisfy the axioms by
// construction, so they skip the quadratic elimination check.
Matroid matroid_from_circuit_masks(std::vector<std::string> ground, std::vector<Mask> circuits,
                                   bool check_axioms = true);
Matroid matroid_from_bases(std::vector<std::string> ground,
                           const std::vector<std::vector<std::string>>& bases);
// Cycle matroid; edges labelled by their index + 1 unless labels are given.
Matroid matroid_from_graph(int vertices, const std::vector<std::pair<int, int>>& edges,
                           std::vector<std::string> labels = {});

// Lattice of flats; atom label i is ground element i, supp(x) is the flat.
struct GeometricLattice : Semilattice {
  int top_id = 0;
  int r() const { return rank(top_id) - 1; }  // rank(L) = r + 1
};
GeometricLattice lattice_of_flats(const Matroid& m);

// Elements of L_+ whose restriction matroid is connected (circuits of the
// lattice are read off from joins of atoms).
std::vector<int> irreducibles(const Semilattice& L);
bool restriction_connected(const Semilattice& L, int x);

// Sort by descending rank, ties by lex order of atom supports.
void sort_by_prec(const Semilattice& L, std::vector<int>& ids);

struct BuildingSet {
  std::vector<int> members;  // element ids in prec order
  bool contains(int x) const;
};
BuildingSet minimal_building_set(const GeometricLattice& L);
BuildingSet maximal_building_set(const GeometricLattice& L);
BuildingSet building_set_from(const Semilattice& L, std::vector<int> members);

std::vector<int> factors(const Semilattice& L, const BuildingSet& G, int x);
// The factor isomorphism already forces every irreducible into G, so 1hat is
// only demanded explicitly when require_top is set.
bool validate_building_set(const Semilattice& L, const BuildingSet& G, std::string* why = nullptr,
                           bool require_top = false);

// Circuits of the matroid of the lattice [bottom, x] (subsets of atom labels).
std::vector<Mask> local_circuits(const Semilattice& L, int x);

}  // namespace leray
