#pragma once

#include "leray/blowup.hpp"

#include <memory>
#include <string>
#include <vector>

namespace leray {

Matroid matroid_m5();        // circuits 124, 135, 2345
Matroid matroid_u23();
Matroid matroid_boolean3();  // three coloops
Matroid matroid_complete_graph(int n);  // lattice of flats is Pi_n

struct Fixture {
  std::string name;
  Matroid matroid;
  std::shared_ptr<const GeometricLattice> L;
  BuildingSet G;
};
enum class BuildingKind { Minimal, Maximal };
Fixture make_fixture(std::string name, Matroid m, BuildingKind kind = BuildingKind::Minimal);
Fixture named_fixture(const std::string& name);  // "M5", "U23", "B3", "Pi4", "Pi4max", ...

// Element of L whose atoms carry the given labels.
int flat_of(const Semilattice& L, const std::vector<std::string>& atoms);
// Accepts "1hat", a concatenation of one-character labels ("124") or a
// comma separated list of labels.
int parse_flat(const Semilattice& L, const std::string& spec);

// Every order filter of G minus its atoms, each sorted by lattice id; the
// empty filter first, then by size and lexicographically.
std::vector<std::vector<int>> all_cores(const GeometricLattice& L, const BuildingSet& G);

std::shared_ptr<const PartialBuildingSet> partial(const Fixture& f, const std::vector<int>& core);
std::shared_ptr<const PartialBuildingSet> partial(const Fixture& f, const std::vector<std::string>& core);

}  // namespace leray
