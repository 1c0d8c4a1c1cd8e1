// Command-line front end for the blowup / Leray model computations.
#include "leray/io.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

using namespace leray;

namespace {

struct Config {
  std::string input, fixture, building_set, core, format = "text", variant = "auto";
  int threads = 1;
  long max_poset_size = 50'000;
};

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Fixture load(const Config& c) {
  if (c.input.empty() == c.fixture.empty()) throw InputError("give exactly one of --input and --fixture");
  Fixture f;
  if (!c.fixture.empty()) {
    try {
      f = named_fixture(c.fixture);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else {
    f = make_fixture(c.input, matroid_from_json(read_json_file(c.input)));
  }
  if (!c.building_set.empty()) f.G = parse_building_set(*f.L, c.building_set);
  return f;
}

std::shared_ptr<const PartialBlowup> blowup_of(const Fixture& f, const std::vector<int>& core) {
  try {
    return build_semilattice(partial(f, core));
  } catch (const BlowupError& e) {
    throw InputError(e.what());
  }
}

bool use_hat(const Config& c, const PartialBlowup& B) {
  if (c.variant == "Bhat") return true;
  if (c.variant == "B") {
    if (B.H->one_hat() < 0) throw InputError("the B variant needs 1hat in the core");
    return false;
  }
  return B.H->one_hat() < 0;
}

std::string ints(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

void print_suite(const Suite& s) {
  for (const auto& c : s.checks())
    std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
  std::cout << (s.ok() ? "all checks pass" : "some checks failed") << "\n";
}

void emit(const Config& c, const json& j) {
  if (c.format == "json") std::cout << j.dump(2) << "\n";
}

int cmd_lattice(const Config& c) {
  auto f = load(c);
  json r = lattice_report(*f.L);
  if (c.format == "json") return emit(c, r), 0;
  std::cout << "rank profile " << ints(f.L->rank_profile()) << "\n";
  for (const auto& fl : r["flats"]) std::cout << "  rank " << fl["rank"] << "  " << fl["label"].get<std::string>() << "\n";
  std::cout << "irreducibles:";
  for (const auto& x : r["irreducibles"]) std::cout << " " << x.get<std::string>();
  std::cout << "\n";
  return 0;
}

int cmd_blowup(const Config& c) {
  auto f = load(c);
  auto B = blowup_of(f, parse_core(*f.L, f.G, c.core));
  json r = blowup_report(*B);
  if (c.format == "json") return emit(c, r), 0;
  std::cout << "|L(M,H)| = " << B->lat.size() << ", rank profile " << ints(B->lat.rank_profile()) << "\n";
  std::cout << "blowup order:";
  for (const auto& x : r["blowup_order"]) std::cout << " " << x.get<std::string>();
  std::cout << "\nnested set complex facets (" << r["nested_facets"].size() << "):\n";
  for (const auto& fct : r["nested_facets"]) {
    std::cout << "  {";
    for (size_t i = 0; i < fct.size(); ++i) std::cout << (i ? "," : "") << fct[i].get<std::string>();
    std::cout << "}\n";
  }
  return 0;
}

int cmd_os(const Config& c) {
  auto f = load(c);
  auto core = parse_core(*f.L, f.G, c.core);
  std::shared_ptr<const PartialBlowup> B;
  if (!core.empty()) B = blowup_of(f, core);
  OSAlgebra os(B ? B->lat : static_cast<const Semilattice&>(*f.L));
  json r = os_report(os);
  if (c.format == "json") return emit(c, r), 0;
  std::cout << "OS dims " << ints(os.dims()) << "\nPOS dims " << ints(os.projective_dims()) << "\n";
  for (size_t i = 0; i < r["nbc_basis"].size(); ++i) {
    std::cout << "  degree " << i << ":";
    for (const auto& s : r["nbc_basis"][i]) {
      std::cout << " e";
      for (const auto& l : s) std::cout << l.get<std::string>();
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_dp(const Config& c) {
  auto f = load(c);
  auto B = blowup_of(f, parse_core(*f.L, f.G, c.core));
  DPAlgebra D(B);
  json r = dp_report(D);
  bool ok = !r.contains("pairing_identity") || (r["pairing_identity"].get<bool>() && r["palindromic"].get<bool>());
  if (c.format == "json") {
    emit(c, r);
  } else {
    std::cout << "D(M,H) dims " << ints(D.dims()) << "\n";
    for (size_t k = 0; k < r["basis"].size(); ++k) {
      std::cout << "  degree " << k << ":";
      for (const auto& m : r["basis"][k]) std::cout << " " << m.get<std::string>();
      std::cout << "\n";
    }
    if (r.contains("pairing_identity"))
      std::cout << "duality: pairing " << (r["pairing_identity"].get<bool>() ? "is" : "is NOT")
                << " the identity, Hilbert function " << (r["palindromic"].get<bool>() ? "" : "not ")
                << "palindromic\n";
    else
      std::cout << "duality: 1hat not in H, no top class\n";
  }
  return ok ? 0 : 1;
}

void print_table(const LerayModel& m) {
  std::cout << (m.hat() ? "B-hat" : "B") << " dims, rows j (exterior), columns i (polynomial)\n";
  for (int j = 0; j <= m.max_j(); ++j) {
    std::cout << "  j=" << j << ":";
    for (int a = 0; a <= m.max_a(); ++a) std::cout << std::setw(5) << m.dim(a, j);
    std::cout << "\n";
  }
}

int cmd_leray(const Config& c) {
  auto f = load(c);
  auto B = blowup_of(f, parse_core(*f.L, f.G, c.core));
  LerayModel m(B, use_hat(c, *B));
  Suite s;
  s.add("d squared is zero", m.d_squared_zero());
  if (c.format == "json") {
    emit(c, model_report(m, {}, s));
  } else {
    print_table(m);
    print_suite(s);
  }
  return s.ok() ? 0 : 1;
}

int cmd_cohomology(const Config& c) {
  auto f = load(c);
  auto B = blowup_of(f, parse_core(*f.L, f.G, c.core));
  LerayModel m(B, use_hat(c, *B));
  auto coh = m.cohomology(c.threads);
  OSAlgebra os(*f.L);
  std::vector<int> expected = m.hat() ? os.dims() : os.projective_dims();
  while (!expected.empty() && expected.back() == 0) expected.pop_back();
  std::vector<int> h0;
  bool higher = true;
  for (const auto& line : coh) {
    h0.push_back(line.empty() ? 0 : line[0]);
    for (size_t p = 1; p < line.size(); ++p) higher = higher && line[p] == 0;
  }
  while (!h0.empty() && h0.back() == 0) h0.pop_back();
  Suite s;
  s.add(std::string("H^0 equals ") + (m.hat() ? "OS" : "POS") + " dims", h0 == expected, ints(h0) + " vs " + ints(expected));
  s.add("H^p vanishes for p > 0", higher);
  if (c.format == "json") {
    emit(c, model_report(m, coh, s));
  } else {
    std::cout << (m.hat() ? "B-hat" : "B") << " cohomology, H^p of line k sits in bidegree (p, k-p)\n";
    for (size_t k = 0; k < coh.size(); ++k) std::cout << "  k=" << k << ": H^p = " << ints(coh[k]) << "\n";
    print_suite(s);
  }
  return s.ok() ? 0 : 1;
}

int cmd_sheaf(const Config& c) {
  auto f = load(c);
  auto B = blowup_of(f, parse_core(*f.L, f.G, c.core));
  if (B->H->one_hat() < 0) throw InputError("sheaf-check needs 1hat in the core");
  LerayModel m(B, false);
  VerifyOptions o;
  o.threads = c.threads;
  o.max_poset_size = c.max_poset_size;
  Suite s = check_sheaf(m, o);
  if (!s.cap_breach.empty()) throw CapExceeded(s.cap_breach);
  if (c.format == "json") emit(c, suite_report(s));
  else print_suite(s);
  return s.ok() ? 0 : 1;
}

int cmd_verify(const Config& c) {
  auto f = load(c);
  auto core = parse_core(*f.L, f.G, c.core);
  blowup_of(f, core);  // validates the core
  VerifyOptions o;
  o.threads = c.threads;
  o.max_poset_size = c.max_poset_size;
  Suite s = verify_all(f, core, o);
  if (c.format == "json") emit(c, suite_report(s));
  else print_suite(s);
  if (!s.cap_breach.empty()) return 2;
  return s.ok() ? 0 : 1;
}

int report_error(const Config& c, const std::string& kind, const std::string& msg, int code) {
  if (c.format == "json") {
    json e;
    e["error"] = kind;
    e["message"] = msg;
    std::cerr << e.dump() << "\n";
  } else {
    std::cerr << "error (" << kind << "): " << msg << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial blowups, Orlik-Solomon and Chow rings, and the bigraded Leray model"};
  app.require_subcommand(1);
  Config c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "matroid JSON file");
    sub->add_option("--fixture", c.fixture, "built-in matroid: M5, M5max, U23, B3, B3max, PiN, PiNmax");
    sub->add_option("--building-set", c.building_set, "minimal | maximal | file:<path>");
    sub->add_option("--core", c.core, "comma separated flats of H minus the atoms, e.g. 1hat,124");
    sub->add_option("--format", c.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-poset-size", c.max_poset_size, "bound on the interval poset in sheaf checks");
  };
  std::map<std::string, int (*)(const Config&)> commands = {
      {"lattice", cmd_lattice}, {"blowup", cmd_blowup},     {"os", cmd_os},
      {"dp", cmd_dp},           {"leray", cmd_leray},       {"cohomology", cmd_cohomology},
      {"sheaf-check", cmd_sheaf}, {"verify-all", cmd_verify}};
  std::map<std::string, std::string> help = {
      {"lattice", "flats and rank profile"},
      {"blowup", "L(M,H) and its nested set complex"},
      {"os", "Orlik-Solomon dims, nbc basis, POS dims"},
      {"dp", "Chow ring dims, basis and duality"},
      {"leray", "bigraded dims of the model"},
      {"cohomology", "cohomology of the model per line"},
      {"sheaf-check", "sheaf resolution checks"},
      {"verify-all", "every structural check"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name, help[name]);
    common(sub);
    if (name == "leray" || name == "cohomology")
      sub->add_option("--variant", c.variant, "auto | B | Bhat (auto: B when 1hat is in the core)")
          ->check(CLI::IsMember({"auto", "B", "Bhat"}));
    subs[name] = sub;
  }
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) return commands[name](c);
  } catch (const CapExceeded& e) {
    return report_error(c, "resource-cap", e.what(), 2);
  } catch (const InputError& e) {
    return report_error(c, "validation", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return report_error(c, "validation", e.what(), 1);
  } catch (const std::exception& e) {
    return report_error(c, "internal", e.what(), 1);
  }
  return 1;
}
