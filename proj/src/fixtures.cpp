#include "leray/fixtures.hpp"

#include <algorithm>
#include <sstream>

namespace leray {

Matroid matroid_m5() {
  return matroid_from_circuits({"1", "2", "3", "4", "5"}, {{"1", "2", "4"}, {"1", "3", "5"}, {"2", "3", "4", "5"}});
}

Matroid matroid_u23() { return matroid_from_circuits({"1", "2", "3"}, {{"1", "2", "3"}}); }

Matroid matroid_boolean3() { return matroid_from_circuits({"1", "2", "3"}, {}); }

Matroid matroid_complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      edges.emplace_back(i, j);
      labels.push_back(std::to_string(i + 1) + std::to_string(j + 1));
    }
  return matroid_from_graph(n, edges, labels);
}

Fixture make_fixture(std::string name, Matroid m, BuildingKind kind) {
  Fixture f;
  f.name = std::move(name);
  f.matroid = std::move(m);
  auto L = std::make_shared<GeometricLattice>(lattice_of_flats(f.matroid));
  f.G = kind == BuildingKind::Minimal ? minimal_building_set(*L) : maximal_building_set(*L);
  f.L = L;
  return f;
}

Fixture named_fixture(const std::string& name) {
  if (name == "M5") return make_fixture(name, matroid_m5());
  if (name == "M5max") return make_fixture(name, matroid_m5(), BuildingKind::Maximal);
  if (name == "U23") return make_fixture(name, matroid_u23());
  if (name == "B3") return make_fixture(name, matroid_boolean3());
  if (name == "B3max") return make_fixture(name, matroid_boolean3(), BuildingKind::Maximal);
  if (name.rfind("Pi", 0) == 0) {
    bool max = name.size() > 3 && name.substr(name.size() - 3) == "max";
    int n = std::stoi(name.substr(2, name.size() - 2 - (max ? 3 : 0)));
    return make_fixture(name, matroid_complete_graph(n), max ? BuildingKind::Maximal : BuildingKind::Minimal);
  }
  throw std::invalid_argument("unknown fixture " + name);
}

int flat_of(const Semilattice& L, const std::vector<std::string>& atoms) {
  Mask m = 0;
  for (const auto& a : atoms) {
    auto it = std::find(L.label_names.begin(), L.label_names.end(), a);
    if (it == L.label_names.end()) throw std::invalid_argument("unknown atom label " + a);
    m |= bit(static_cast<int>(it - L.label_names.begin()));
  }
  int x = L.element_with_support(m);
  if (x < 0) throw std::invalid_argument("no flat with atoms " + std::to_string(atoms.size()));
  return x;
}

int parse_flat(const Semilattice& L, const std::string& spec) {
  if (spec == "1hat" || spec == "top") {
    auto t = L.top();
    if (!t) throw std::invalid_argument("no top element");
    return *t;
  }
  std::vector<std::string> parts;
  if (spec.find(',') != std::string::npos || spec.find(' ') != std::string::npos) {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) parts.push_back(tok);
  } else {
    bool single = std::all_of(L.label_names.begin(), L.label_names.end(),
                              [](const std::string& s) { return s.size() <= 1; });
    if (single)
      for (char c : spec) parts.push_back(std::string(1, c));
    else
      parts.push_back(spec);
  }
  return flat_of(L, parts);
}

std::vector<std::vector<int>> all_cores(const GeometricLattice& L, const BuildingSet& G) {
  std::vector<int> nonatoms;
  for (int g : G.members)
    if (L.rank(g) > 1) nonatoms.push_back(g);
  int k = static_cast<int>(nonatoms.size());
  if (k > 24) throw std::invalid_argument("too many building set elements to enumerate filters");
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << k); ++m) {
    bool filter = true;
    for (int i = 0; i < k && filter; ++i)
      if ((m >> i) & 1)
        for (int j = 0; j < k; ++j)
          if (!((m >> j) & 1) && L.leq(nonatoms[i], nonatoms[j])) {
            filter = false;
            break;
          }
    if (!filter) continue;
    std::vector<int> core;
    for (int i = 0; i < k; ++i)
      if ((m >> i) & 1) core.push_back(nonatoms[i]);
    std::sort(core.begin(), core.end());
    out.push_back(core);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::shared_ptr<const PartialBuildingSet> partial(const Fixture& f, const std::vector<int>& core) {
  return std::make_shared<const PartialBuildingSet>(make_partial(f.L, f.G, core));
}

std::shared_ptr<const PartialBuildingSet> partial(const Fixture& f, const std::vector<std::string>& core) {
  std::vector<int> ids;
  for (const auto& s : core) ids.push_back(parse_flat(*f.L, s));
  return partial(f, ids);
}

}  // namespace leray
