#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sl2lab/report.hpp"

namespace sl2lab {

struct SuiteConfig {
  std::vector<uint32_t> primes = {2, 3};
  uint32_t nmax_t1 = 4;   // ambient depth for t = 1 suites
  uint32_t n_t2 = 2;      // ambient depth for t = 2 suites
  std::vector<uint32_t> t_list = {1, 2};
  uint64_t seed = 0;
  uint32_t module_count = 200;  // seeded cyclic modules per sweep point
  uint64_t enum_cap = uint64_t(1) << 20;
  uint32_t dim_cap = 4096;
  bool relaxed_decompose = false;
  double t2_ratio_cap = 4.0;  // asserted bound for the t=2 decay ratios
  uint32_t workers = 0;  // 0: SL2LAB_WORKERS env, else hardware

  void validate() const;                 // throws ParamError
  uint64_t module_seed(uint32_t p, uint32_t N, uint32_t t, uint32_t idx) const;
};

// All assertion suites over the configured grid, in a deterministic order.
// Rows with asserted = false are report-only.
std::vector<CheckResult> run_verify_suites(const SuiteConfig& cfg);

// Individual suites (used by the unit tests as well as cmd_verify).
std::vector<CheckResult> suite_delta(const SuiteConfig& cfg);
std::vector<CheckResult> suite_congruence(const SuiteConfig& cfg, uint32_t p, uint32_t N);
std::vector<CheckResult> suite_coset(const SuiteConfig& cfg, uint32_t p, uint32_t N);
std::vector<CheckResult> suite_sym(const SuiteConfig& cfg, uint32_t p);
std::vector<CheckResult> suite_iwasawa(const SuiteConfig& cfg, uint32_t p);
std::vector<CheckResult> suite_coinvariants_t1(const SuiteConfig& cfg, uint32_t p, uint32_t N);
std::vector<CheckResult> suite_coinvariants_t2(const SuiteConfig& cfg, uint32_t p);

// CLI entry points.  Exit codes: 0 all assertions pass, 1 assertion
// failure, 2 configuration or resource error.
int cmd_verify(const SuiteConfig& cfg, std::ostream& out, const std::string& format);
int cmd_sweep(const SuiteConfig& cfg, std::ostream& out, const std::string& format);
int cmd_decompose(uint32_t d, uint32_t p, uint32_t k, bool relaxed, std::ostream& out);
int cmd_delta(uint32_t pmax, std::ostream& out, const std::string& format);

}  // namespace sl2lab
