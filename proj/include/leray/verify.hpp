#pragma once

#include "leray/fixtures.hpp"
#include "leray/leray_model.hpp"
#include "leray/poset_sheaf.hpp"

#include <memory>
#include <string>
#include <vector>

namespace leray {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

class Suite {
 public:
  void add(std::string name, bool pass, std::string detail = {});
  void merge(const Suite& o, const std::string& prefix = {});
  const std::vector<Check>& checks() const { return checks_; }
  bool ok() const;
  std::string cap_breach;  // set when a resource bound stopped a check

 private:
  std::vector<Check> checks_;
};

struct VerifyOptions {
  int threads = 1;
  long max_poset_size = 50'000;
  int groebner_total_degree = 6;  // bound on 2a + j for the quotient count
  bool stalks = true;             // stalkwise blowup maps on D
  bool sheaf = true;
  bool tensor_psi = true;
};

Suite check_os_layer(const Semilattice& L);
Suite check_nested(const PartialBlowup& B);
Suite check_dp(std::shared_ptr<const PartialBlowup> B, const VerifyOptions& opt = {});
Suite check_groebner_system(std::shared_ptr<const PartialBlowup> B, bool hat, const VerifyOptions& opt = {});
// Cohomology against OS (hat) or POS (B), decomposition, d^2, embedding of
// OS, and for B the dual complex.
Suite check_model(const LerayModel& m, const VerifyOptions& opt = {});
Suite check_sheaf(const LerayModel& m, const VerifyOptions& opt = {});
Suite check_blowup_step(std::shared_ptr<const PartialBlowup> small, std::shared_ptr<const PartialBlowup> big,
                        const VerifyOptions& opt = {});

// L(M,H) for the prefixes of the core in blowup order, from H = atoms up.
std::vector<std::shared_ptr<const PartialBlowup>> blowup_chain(const Fixture& f, const std::vector<int>& core);

Suite verify_all(const Fixture& f, const std::vector<int>& core, const VerifyOptions& opt = {});

}  // namespace leray
