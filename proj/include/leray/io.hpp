#pragma once

#include "leray/verify.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace leray {

using json = nlohmann::ordered_json;

// Bad user input: unreadable file, malformed JSON, invalid G or core.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"ground": [...], "circuits": [[...], ...]} or
// {"graph": {"vertices": N, "edges": [[u, v], ...]}}. Graph vertices are
// 0-based, or 1-based when every endpoint lies in 1..N and N occurs.
Matroid matroid_from_json(const json& j);
json matroid_to_json(const Matroid& m);

// {"elements": [labels], "covers": [[i, j], ...]} with i covered by j.
Poset poset_from_json(const json& j);
json poset_to_json(const Poset& P);

json read_json_file(const std::string& path);

// "minimal", "maximal" or "file:<path>" where the file holds a JSON array
// of flats ("124", "1hat" or ["1","2","4"]). Atoms are always added.
BuildingSet parse_building_set(const GeometricLattice& L, const std::string& spec);
// Comma separated flats; "a+b+c" names a flat by multi-character labels.
std::vector<int> parse_core(const GeometricLattice& L, const BuildingSet& G, const std::string& list);

json lattice_report(const GeometricLattice& L);
json blowup_report(const PartialBlowup& B);
json os_report(const OSAlgebra& os);
json dp_report(const DPAlgebra& D);
// {"bigraded_dims": [[i,j,dim]], "cohomology": [[p,k,dim]], "checks": {...}}
// with i the polynomial degree (cohomological degree 2i).
json model_report(const LerayModel& m, const std::vector<std::vector<int>>& coh, const Suite& checks);
json suite_report(const Suite& s);

}  // namespace leray
