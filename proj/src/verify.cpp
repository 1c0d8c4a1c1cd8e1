#include "leray/verify.hpp"

#include <algorithm>
#include <sstream>

namespace leray {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream s;
  s << "(";
  for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ")";
  return s.str();
}

std::vector<int> trim(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

void Suite::add(std::string name, bool pass, std::string detail) {
  checks_.push_back({std::move(name), pass, std::move(detail)});
}

void Suite::merge(const Suite& o, const std::string& prefix) {
  for (const auto& c : o.checks_) checks_.push_back({prefix.empty() ? c.name : prefix + ": " + c.name, c.pass, c.detail});
  if (cap_breach.empty()) cap_breach = o.cap_breach;
}

bool Suite::ok() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

Suite check_os_layer(const Semilattice& L) {
  Suite s;
  OSAlgebra os(L);
  auto dims = os.dims();
  bool q = true;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (os.quotient_dim(i) != dims[i]) q = false;
  s.add("nbc dims equal quotient dims", q, join_ints(dims));

  bool exact = true;
  std::string where;
  for (int x = 0; x < L.size(); ++x) {
    if (x == L.bottom) continue;
    OSAlgebra local(interval_lattice(L, L.bottom, x).lat);
    if (!boundary_exact(local)) {
      exact = false;
      where = L.order.label(x);
      break;
    }
  }
  s.add("boundary exact on every lower interval above the bottom", exact, where);

  bool blocks = true;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    int sum = 0;
    for (const auto& [y, sets] : os.brieskorn(i)) {
      sum += static_cast<int>(sets.size());
      if (L.rank(y) != i) blocks = false;
    }
    if (sum != dims[i]) blocks = false;
  }
  s.add("Brieskorn blocks sum to the dims", blocks);
  s.add("POS dims agree (recurrence, kernel)", trim(os.projective_dims()) == trim(os.boundary_kernel_dims()),
        join_ints(os.projective_dims()));

  FlagComplex fl(L);
  bool iso = true, wd = true, adj = true;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    QMatrix F = fl.fl_matrix(os, i);
    if (F.rows() != F.cols() || rank(F) != F.rows()) iso = false;
    if (!fl.fl_well_defined(os, i)) wd = false;
    if (i + 1 < static_cast<int>(dims.size()) && !fl.delta_well_defined(i)) wd = false;
    if (i >= 1) {
      // fl(boundary e_S)(Y) = fl(e_S)(delta Y)
      QMatrix lhs = os.boundary_matrix(i).transpose() * fl.fl_matrix(os, i - 1);
      QMatrix rhs = F * fl.delta(i - 1);
      if (!(lhs == rhs)) adj = false;
    }
  }
  s.add("fl matrices invertible", iso);
  s.add("fl and delta well defined on the flag quotient", wd);
  s.add("fl intertwines the boundary with the dual of delta", adj);
  return s;
}

Suite check_nested(const PartialBlowup& B) {
  Suite s;
  auto ka = atomic_complex(B.lat);
  auto n = nested_complex(*B.H, *B.nested);
  s.add("atomic complex equals nested complex", ka == n,
        std::to_string(ka.size()) + " / " + std::to_string(n.size()) + " faces");
  return s;
}

Suite check_dp(std::shared_ptr<const PartialBlowup> B, const VerifyOptions& opt) {
  Suite s;
  DPAlgebra D(B);
  auto dims = D.dims();
  bool q = true;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (D.quotient_dim(k) != dims[k]) q = false;
  s.add("basis counts equal quotient dims", q, join_ints(dims));
  if (D.one_hat() >= 0) {
    s.add("Hilbert function palindromic", palindromic(dims));
    bool id = true, eps = true;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
      if (!(D.pairing_matrix(k) == QMatrix::identity(dims[k]))) id = false;
      for (const Mono& m : D.basis(k))
        if (!D.epsilon_product_ok(m)) eps = false;
    }
    s.add("pairing of the basis with its epsilon is the identity", id);
    s.add("x epsilon(x) is the top class for every basis monomial", eps);
  }
  const auto& L = B->lat;
  int top = B->H->L().top_id;
  int checked = 0, bad_dims = 0, bad_bij = 0, bad_mult = 0;
  std::string first_dims, first_bij, first_mult;
  bool bottom_ok = LocalDP(B, L.bottom).dims() == dims;
  for (int y = 0; y < L.size(); ++y) {
    if (B->pi[y] == top) continue;
    ++checked;
    auto r = tensor_decompose(B, y, opt.tensor_psi);
    int local = 0;
    for (int d : r.local_dims) local += d;
    std::string at = L.order.label(y) + (r.failure.empty() ? "" : ": " + r.failure);
    if (!r.dims_match || !palindromic(r.local_dims)) {
      if (!bad_dims++) first_dims = at;
    }
    if (!opt.tensor_psi) continue;
    if (!r.psi_defined || r.psi_rank != local) {
      if (!bad_bij++) first_bij = at;
    } else if (!r.psi_multiplicative) {
      if (!bad_mult++) first_mult = at;
    }
  }
  auto detail = [&](int bad, const std::string& first) {
    std::string d = std::to_string(checked) + " elements";
    if (bad) d += ", " + std::to_string(bad) + " failing, first " + first;
    return d;
  };
  s.add("D at the bottom is D", bottom_ok);
  s.add("local dims are the product over F+(y)", bad_dims == 0, detail(bad_dims, first_dims));
  if (opt.tensor_psi) {
    s.add("psi maps the product basis onto a basis of D_y", bad_bij == 0, detail(bad_bij, first_bij));
    s.add("psi is multiplicative", bad_mult == 0, detail(bad_mult, first_mult));
  }
  return s;
}

Suite check_groebner_system(std::shared_ptr<const PartialBlowup> B, bool hat, const VerifyOptions& opt) {
  Suite s;
  GroebnerSystem gs(B, !hat);
  auto rep = check_groebner(gs.groebner_generators(), [&](const Element& a) { return gs.normal_form(a); }, gs.names());
  s.add("S-polynomials reduce to zero", rep.failures == 0,
        std::to_string(rep.pairs) + " pairs" + (rep.first_failure.empty() ? "" : ", " + rep.first_failure));
  bool counts = true, span = true;
  std::string where;
  for (int a = 0; 2 * a <= opt.groebner_total_degree; ++a)
    for (int j = 0; 2 * a + j <= opt.groebner_total_degree; ++j) {
      if (static_cast<int>(gs.basis(a, j).size()) != gs.quotient_dim(a, j)) {
        counts = false;
        if (where.empty()) where = "(" + std::to_string(a) + "," + std::to_string(j) + ")";
      }
      if (!gs.generators_in_presentation_span(a, j)) span = false;
    }
  s.add("standard monomial counts equal quotient dims", counts, where);
  s.add("Groebner generators lie in the presented ideal", span);
  return s;
}

Suite check_model(const LerayModel& m, const VerifyOptions& opt) {
  Suite s;
  s.add("d squared is zero", m.d_squared_zero());
  s.add("d has integer matrix entries", m.d_integral());
  bool dec = true;
  for (const auto& b : m.decomposition())
    if (b.count != b.predicted) dec = false;
  s.add("fine decomposition matches OS blocks times D_y", dec);

  OSAlgebra os(m.system().H().L());
  auto expected = m.hat() ? os.dims() : os.projective_dims();
  expected = trim(expected);
  auto coh = m.cohomology(opt.threads);
  std::vector<int> h0;
  bool higher = true;
  for (const auto& line : coh) {
    h0.push_back(line.empty() ? 0 : line[0]);
    for (size_t p = 1; p < line.size(); ++p)
      if (line[p]) higher = false;
  }
  h0 = trim(h0);
  s.add(std::string("H^0 equals ") + (m.hat() ? "OS" : "POS") + " dims", h0 == expected,
        join_ints(h0) + " vs " + join_ints(expected));
  s.add("H^p vanishes for p > 0", higher);

  auto em = os_to_model(m);
  bool emb = em.cocycles;
  for (size_t j = 0; j < em.source_dims.size(); ++j)
    if (em.image_ranks[j] != em.source_dims[j] || em.h0[j] != em.source_dims[j]) emb = false;
  s.add(std::string(m.hat() ? "OS" : "POS") + " embeds onto H^0", emb);

  bool row = true;
  DPAlgebra D(m.blowup_ptr());
  auto dd = D.dims();
  for (int a = 0; a <= m.max_a(); ++a)
    if (m.dim(a, 0) != (a < static_cast<int>(dd.size()) ? dd[a] : 0)) row = false;
  s.add("exterior degree 0 row equals D", row);
  if (m.hat()) {
    auto od = OSAlgebra(m.blowup().lat).dims();
    bool r0 = true;
    for (int j = 0; j <= m.max_j(); ++j)
      if (m.dim(0, j) != (j < static_cast<int>(od.size()) ? od[j] : 0)) r0 = false;
    s.add("polynomial degree 0 row equals OS(L(M,H))", r0);
  } else {
    int r = m.r();
    bool sym = true;
    for (int j = 0; j <= m.max_j(); ++j)
      for (int a = 0; a <= m.max_a(); ++a) {
        int mirror = r - j - a;
        int other = mirror >= 0 ? m.dim(mirror, j) : 0;
        if (m.dim(a, j) != other) sym = false;
      }
    s.add("dual dims are the model dims reversed in x-degree", sym);
    auto dual = dual_complex_check(m);
    s.add("dual differential is delta tensor restriction", dual.decomposition_iso && dual.mismatches == 0,
          std::to_string(dual.entries) + " entries" + (dual.first_failure.empty() ? "" : ", " + dual.first_failure));
  }
  return s;
}

Suite check_sheaf(const LerayModel& m, const VerifyOptions& opt) {
  Suite s;
  SheafCheckOptions so;
  so.max_poset_size = opt.max_poset_size;
  so.cohomology.threads = opt.threads;
  try {
    auto r = build_C_and_verify(m, so);
    std::string sz = "|Int(L)| = " + std::to_string(r.interval_size);
    s.add("sections of C have the dims of the dual of B", r.gamma_dims_match, sz);
    s.add("sections map isomorphically onto the diagonal blocks", r.diagonal_iso);
    s.add("sections of delta agree with delta tensor restriction", r.intertwines);
    s.add("each C^{ij} is acyclic", r.acyclic && r.all_exact);
    s.add("sections complex computes the cohomology of iota_! D", r.resolution_ok);
    s.add("flag sheaves are flasque", r.flag_flasque);
  } catch (const CapExceeded& e) {
    s.cap_breach = e.what();
    s.add("sheaf layer", false, std::string("resource bound: ") + e.what());
  }
  return s;
}

Suite check_blowup_step(std::shared_ptr<const PartialBlowup> small, std::shared_ptr<const PartialBlowup> big,
                        const VerifyOptions& opt) {
  Suite s;
  auto os = os_blowup_map(*small, *big);
  s.add("OS map: relations, injective, initial terms",
        os.relations_ok && os.rank == os.source_dim && os.leads_match && os.leads_distinct,
        std::to_string(os.rank) + "/" + std::to_string(os.source_dim));
  auto dp = dp_blowup_map(small, big, opt.stalks);
  s.add("D map: relations, injective, stalk cokernels",
        dp.c_maps_to_c && dp.relations_ok && dp.rank == dp.source_dim && dp.stalk_failures == 0,
        std::to_string(dp.rank) + "/" + std::to_string(dp.source_dim) + ", " + std::to_string(dp.stalks) + " stalks" +
            (dp.first_failure.empty() ? "" : ", " + dp.first_failure));
  for (bool hat : {true, false}) {
    if (!hat && small->H->one_hat() < 0) continue;
    auto r = leray_blowup_map(LerayModel(small, hat), LerayModel(big, hat));
    s.add(std::string(hat ? "B-hat" : "B") + " map: relations, commutes with d, injective, initial terms",
          r.relations_ok && r.commutes_with_d && r.rank == r.source_dim && r.leads_match && r.leads_distinct,
          std::to_string(r.rank) + "/" + std::to_string(r.source_dim) +
              (r.first_failure.empty() ? "" : ", " + r.first_failure));
  }
  return s;
}

std::vector<std::shared_ptr<const PartialBlowup>> blowup_chain(const Fixture& f, const std::vector<int>& core) {
  auto H = partial(f, core);
  std::vector<int> order;
  for (int h : H->blowup_order) order.push_back(H->H[h]);
  std::vector<std::shared_ptr<const PartialBlowup>> out;
  for (size_t k = 0; k <= order.size(); ++k) {
    std::vector<int> prefix(order.begin(), order.begin() + static_cast<long>(k));
    out.push_back(build_semilattice(partial(f, prefix)));
  }
  return out;
}

Suite verify_all(const Fixture& f, const std::vector<int>& core, const VerifyOptions& opt) {
  Suite s;
  const auto& L = *f.L;
  s.add("lattice of flats is geometric", is_geometric_lattice(L.order));
  std::string why;
  s.add("building set is valid", validate_building_set(L, f.G, &why), why);
  s.merge(check_os_layer(L), "OS(M)");

  auto chain = blowup_chain(f, core);
  for (size_t k = 0; k + 1 < chain.size(); ++k)
    s.merge(check_blowup_step(chain[k], chain[k + 1], opt),
            "blowup " + chain[k + 1]->H->set_name(chain[k + 1]->H->core() & ~chain[k]->H->core()));
  auto B = chain.back();
  s.merge(check_nested(*B), "N(M,H)");
  s.merge(check_os_layer(B->lat), "OS(L(M,H))");
  s.merge(check_dp(B, opt), "D(M,H)");
  s.merge(check_groebner_system(B, true, opt), "B-hat relations");
  LerayModel hat(B, true);
  s.merge(check_model(hat, opt), "B-hat");
  if (B->H->one_hat() >= 0) {
    s.merge(check_groebner_system(B, false, opt), "B relations");
    LerayModel b(B, false);
    s.merge(check_model(b, opt), "B");
    if (opt.sheaf) s.merge(check_sheaf(b, opt), "sheaf");
  }
  return s;
}

}  // namespace leray
