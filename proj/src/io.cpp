#include "leray/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace leray {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::string label_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw InputError("labels must be strings or integers");
}

int flat_from_json(const GeometricLattice& L, const json& v) {
  try {
    if (v.is_string()) return parse_flat(L, v.get<std::string>());
    if (v.is_array()) {
      std::vector<std::string> atoms;
      for (const auto& a : v) atoms.push_back(label_string(a));
      return flat_of(L, atoms);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("a flat is a string or an array of atom labels");
}

json labels_of(const Semilattice& L, Mask m) {
  json out = json::array();
  for (int i : mask_members(m)) out.push_back(L.label_names[i]);
  return out;
}

}  // namespace

Matroid matroid_from_json(const json& j) {
  try {
    if (j.contains("graph")) {
      const auto& g = j.at("graph");
      int n = g.at("vertices").get<int>();
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : g.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      bool one_based = !edges.empty();
      bool hits_n = false;
      for (auto [u, v] : edges) {
        if (std::min(u, v) < 1 || std::max(u, v) > n) one_based = false;
        if (u == n || v == n) hits_n = true;
      }
      if (one_based && hits_n)
        for (auto& [u, v] : edges) --u, --v;
      for (auto [u, v] : edges)
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
      std::vector<std::string> labels;
      if (j.contains("labels"))
        for (const auto& l : j.at("labels")) labels.push_back(label_string(l));
      return matroid_from_graph(n, edges, labels);
    }
    std::vector<std::string> ground;
    for (const auto& g : j.at("ground")) ground.push_back(label_string(g));
    std::vector<std::vector<std::string>> circuits;
    for (const auto& c : j.at("circuits")) {
      std::vector<std::string> cc;
      for (const auto& e : c) cc.push_back(label_string(e));
      circuits.push_back(std::move(cc));
    }
    return matroid_from_circuits(std::move(ground), circuits);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matroid JSON: ") + e.what());
  } catch (const MatroidError& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json matroid_to_json(const Matroid& m) {
  json out;
  out["ground"] = m.ground;
  json cs = json::array();
  for (Mask c : m.circuits) {
    json one = json::array();
    for (int i : mask_members(c)) one.push_back(m.ground[i]);
    cs.push_back(one);
  }
  out["circuits"] = cs;
  return out;
}

Poset poset_from_json(const json& j) {
  try {
    std::vector<std::string> labels;
    for (const auto& e : j.at("elements")) labels.push_back(label_string(e));
    int n = static_cast<int>(labels.size());
    std::vector<std::pair<int, int>> covers;
    for (const auto& c : j.at("covers")) {
      int a = c.at(0).get<int>(), b = c.at(1).get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("cover index out of range");
      covers.emplace_back(a, b);
    }
    return Poset::from_covers(n, covers, labels);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed poset JSON: ") + e.what());
  } catch (const PosetError& e) {
    throw InputError(e.what());
  }
}

json poset_to_json(const Poset& P) {
  json out;
  json el = json::array();
  for (int x = 0; x < P.size(); ++x) el.push_back(P.label(x));
  out["elements"] = el;
  auto cov = P.covers();
  std::sort(cov.begin(), cov.end());
  json cs = json::array();
  for (auto [a, b] : cov) cs.push_back({a, b});
  out["covers"] = cs;
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

BuildingSet parse_building_set(const GeometricLattice& L, const std::string& spec) {
  if (spec == "minimal") return minimal_building_set(L);
  if (spec == "maximal") return maximal_building_set(L);
  if (spec.rfind("file:", 0) != 0) throw InputError("building set must be minimal, maximal or file:<path>");
  json j = read_json_file(spec.substr(5));
  if (!j.is_array()) throw InputError("building set file must hold a JSON array of flats");
  std::vector<int> members = L.atoms();
  for (const auto& v : j) members.push_back(flat_from_json(L, v));
  BuildingSet G = building_set_from(L, members);
  std::string why;
  if (!validate_building_set(L, G, &why)) throw InputError("not a building set: " + why);
  return G;
}

std::vector<int> parse_core(const GeometricLattice& L, const BuildingSet& G, const std::string& list) {
  std::vector<int> out;
  for (const auto& tok : split(list, ',')) {
    int x;
    try {
      x = tok.find('+') != std::string::npos ? flat_of(L, split(tok, '+')) : parse_flat(L, tok);
    } catch (const std::invalid_argument& e) {
      throw InputError("core entry " + tok + ": " + e.what());
    }
    if (!G.contains(x)) throw InputError("core entry " + tok + " is not in the building set");
    if (L.rank(x) > 1) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int x : out)
    for (int g : G.members)
      if (L.leq(x, g) && L.rank(g) > 1 && !std::binary_search(out.begin(), out.end(), g))
        throw InputError("core is not an order filter of G: " + L.order.label(g) + " lies above " +
                         L.order.label(x));
  return out;
}

json lattice_report(const GeometricLattice& L) {
  json out;
  out["rank_profile"] = L.rank_profile();
  out["geometric"] = is_geometric_lattice(L.order);
  json flats = json::array();
  for (int x : L.order.linear_order()) {
    if (x == L.bottom) continue;
    flats.push_back({{"label", L.order.label(x)}, {"rank", L.rank(x)}, {"atoms", labels_of(L, L.supp[x])}});
  }
  out["flats"] = flats;
  json irr = json::array();
  auto ir = irreducibles(L);
  sort_by_prec(L, ir);
  for (int x : ir) irr.push_back(L.order.label(x));
  out["irreducibles"] = irr;
  return out;
}

json blowup_report(const PartialBlowup& B) {
  const auto& H = *B.H;
  json out;
  json names = json::array();
  for (int h = 0; h < H.size(); ++h) names.push_back(H.name(h));
  out["H"] = names;
  json order = json::array();
  for (int h : H.blowup_order) order.push_back(H.name(h));
  out["blowup_order"] = order;
  out["size"] = B.lat.size();
  out["rank_profile"] = B.lat.rank_profile();
  auto facets = B.nested->facets();
  std::vector<std::vector<int>> fs;
  for (Mask f : facets) fs.push_back(mask_members(f));
  std::sort(fs.begin(), fs.end());
  json fj = json::array();
  for (const auto& f : fs) {
    json one = json::array();
    for (int h : f) one.push_back(H.name(h));
    fj.push_back(one);
  }
  out["nested_facets"] = fj;
  return out;
}

json os_report(const OSAlgebra& os) {
  json out;
  out["dims"] = os.dims();
  out["pos_dims"] = os.projective_dims();
  json basis = json::array();
  for (int i = 0; i < static_cast<int>(os.dims().size()); ++i) {
    json level = json::array();
    for (Mask s : os.nbc_basis(i)) level.push_back(labels_of(os.lattice(), s));
    basis.push_back(level);
  }
  out["nbc_basis"] = basis;
  return out;
}

json dp_report(const DPAlgebra& D) {
  json out;
  auto dims = D.dims();
  out["dims"] = dims;
  auto names = D.system().names();
  json basis = json::array();
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    json level = json::array();
    for (const Mono& m : D.basis(k)) level.push_back(mono_str(m, names));
    basis.push_back(level);
  }
  out["basis"] = basis;
  out["palindromic"] = palindromic(dims);
  if (D.one_hat() >= 0) {
    bool id = true;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
      if (!(D.pairing_matrix(k) == QMatrix::identity(dims[k]))) id = false;
    out["pairing_identity"] = id;
  }
  return out;
}

json model_report(const LerayModel& m, const std::vector<std::vector<int>>& coh, const Suite& checks) {
  json out;
  json bd = json::array();
  for (const auto& [aj, d] : m.table()) bd.push_back({aj.first, aj.second, d});
  out["bigraded_dims"] = bd;
  json cj = json::array();
  for (int k = 0; k < static_cast<int>(coh.size()); ++k)
    for (int p = 0; p < static_cast<int>(coh[k].size()); ++p)
      if (coh[k][p]) cj.push_back({p, k, coh[k][p]});
  out["cohomology"] = cj;
  out["checks"] = suite_report(checks)["checks"];
  return out;
}

json suite_report(const Suite& s) {
  json out;
  json c = json::object();
  for (const auto& ch : s.checks()) c[ch.name] = ch.pass;
  out["checks"] = c;
  json failures = json::array();
  for (const auto& ch : s.checks())
    if (!ch.pass) failures.push_back({{"check", ch.name}, {"detail", ch.detail}});
  out["failures"] = failures;
  out["ok"] = s.ok();
  if (!s.cap_breach.empty()) out["cap_breach"] = s.cap_breach;
  return out;
}

}  // namespace leray
