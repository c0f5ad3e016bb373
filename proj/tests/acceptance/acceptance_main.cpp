// Acceptance suite: runs the ten gate criteria end to end and prints one
// pass/fail line per criterion.  Exit status is the number of failing
// criteria (0 when all pass).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sl2lab/coinvariants.hpp"
#include "sl2lab/coset_module.hpp"
#include "sl2lab/iwasawa.hpp"
#include "sl2lab/subgroups.hpp"
#include "sl2lab/suites.hpp"
#include "sl2lab/sym_power.hpp"

using namespace sl2lab;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int id;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Criterion> results;
std::vector<int> selected;  // empty: run everything

bool is_selected(int id) {
  if (selected.empty()) return true;
  for (int s : selected)
    if (s == id) return true;
  return false;
}

void record(int id, bool pass, double secs, const std::string& detail) {
  results.push_back({id, pass, secs, detail});
  std::printf("[%s] criterion %2d (%6.2fs): %s\n", pass ? "PASS" : "FAIL", id, secs,
              detail.c_str());
  std::fflush(stdout);
}

template <typename F>
void run(int id, double budget_seconds, F&& body) {
  if (!is_selected(id)) return;
  auto t0 = Clock::now();
  bool pass = false;
  std::string detail;
  try {
    auto r = body();
    pass = r.first;
    detail = r.second;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= budget_seconds) {
    pass = false;
    detail += " [runtime budget " + format_double(budget_seconds) + " s exceeded]";
  }
  record(id, pass, secs, detail);
}

std::vector<TestModule> seeded_family(const CoinvLab& lab, const SuiteConfig& cfg, uint32_t p,
                                      uint32_t N, uint32_t t, uint32_t count) {
  std::vector<TestModule> out = {TestModule::trivial(), TestModule::regular()};
  for (uint32_t i = 0; i < count; ++i) out.push_back(lab.random_cyclic(cfg.module_seed(p, N, t, i)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  SuiteConfig cfg;  // default: seed 0, caps as shipped

  // 1. delta formula: delta(2) in [0.2070, 0.2080]; p = 2 is the extremal
  //    prime of the formula among primes <= 100: its largest value (the
  //    formula is decreasing in p, so p = 2 is the distinguished extremum).
  //    Runtime < 1 s.
  run(1, 1.0, [] {
    double d2 = delta_of_p(2);
    bool in_range = d2 >= 0.2070 && d2 <= 0.2080;
    bool extremal = true;
    for (uint32_t p : primes_up_to(100))
      if (p != 2 && delta_of_p(p) >= d2) extremal = false;
    return std::make_pair(in_range && extremal,
                          "delta(2)=" + format_double(d2) + ", extremal prime = 2");
  });

  // 2. Subgroup identities for all admissible (l, j), p in {2, 3}, l <= N-1,
  //    N <= 4, exact set equality.  Runtime < 60 s.
  run(2, 60.0, [&] {
    bool all = true;
    std::string detail;
    for (uint32_t p : {2u, 3u}) {
      for (uint32_t N = 2; N <= 4; ++N) {
        LevelGroup lg(LevelContext(p, N), 1);
        for (uint32_t l = 3; l + 1 <= N; ++l)
          for (uint32_t j = 2; j + 1 <= l; ++j) {
            bool prod = verify_product_identity(l, j, lg, cfg.enum_cap);
            bool inter = verify_intersection_identity(l, j, lg, cfg.enum_cap);
            if (!(prod && inter)) {
              all = false;
              detail += " p=" + std::to_string(p) + ",(l,j)=(" + std::to_string(l) + "," +
                        std::to_string(j) + "):product=" + (prod ? "ok" : "FALSE") +
                        ",intersection=" + (inter ? "ok" : "FALSE");
            }
          }
      }
    }
    if (all) detail = "product and intersection identities hold for all admissible (l, j)";
    else
      detail = "p=2 conjugates T(l,j)', T(l,j)'' degenerate to T(l,j), so the identities fail"
               " there (enumeration ground truth):" + detail;
    return std::make_pair(all, detail);
  });

  // 3. Coset-module structure for p in {2, 3}, k <= 4.  Runtime < 120 s.
  run(3, 120.0, [] {
    bool all = true;
    for (uint32_t p : {2u, 3u})
      for (uint32_t k = 1; k <= 4; ++k) {
        uint32_t n = uint32_t(ipow(p, k - 1));
        auto census = invariant_subspace_census(p, k);
        all = all && census.subspaces.size() == n + 1;
        for (const auto& S : census.subspaces) all = all && S == filtration_F(p, k, S.dim());
        for (uint32_t t = 0; t < n; ++t) all = all && shift_recurrence_check(p, k, t);
        for (uint32_t l = 1; l <= k; ++l)
          for (uint32_t a = 0; a < ipow(p, k - l); ++a) all = all && quotient_iso(p, k, a, l).ok();
      }
    return std::make_pair(all, "census counts, shift recurrence, quotient isomorphisms");
  });

  // 4. Symmetric-power reduction: image is a census subspace F(m), G-stable,
  //    with a consistent resolution of m across all tested (d, k).
  run(4, 600.0, [] {
    bool all = true;
    int resolution = INT32_MIN;
    for (uint32_t p : {2u, 3u})
      for (uint32_t k = 2; k <= 4; ++k) {
        uint64_t n = ipow(p, k - 1);
        for (uint32_t d = 0; d <= 4 && uint64_t(d) + 1 <= n; ++d) {
          auto r = sym_reduction(p, k, d);
          all = all && r.g_invariant && r.image == filtration_F(p, k, r.m);
          if (resolution == INT32_MIN) resolution = int(r.m) - int(d);
          all = all && int(r.m) - int(d) == resolution;
        }
      }
    return std::make_pair(all, "resolved m = d + " + std::to_string(resolution) +
                                   " uniformly (dim Sym^d = d+1 forces F(d+1))");
  });

  // 5. Monomial basis at (t=1, p=3, N in {2,3}); graded commutativity on 100
  //    seeded pairs; I(p^l) two-description equality for all l <= N.
  run(5, 600.0, [&] {
    bool all = true;
    for (uint32_t N : {2u, 3u}) {
      TruncatedAlgebra A(3, N, 1);
      all = all && A.monomial_basis_full_rank() && A.dim() == ipow(3, 3 * (N - 1));
      Rng rng(cfg.seed ^ (N * 97));
      for (uint32_t s = 0; s < 100; ++s) {
        MonomialIndex a(3), b(3);
        for (auto& x : a) x = uint32_t(rng.below(3));
        for (auto& x : b) x = uint32_t(rng.below(3));
        all = all && graded_commutativity_check(A, a, b);
      }
      for (uint32_t l = 1; l <= N; ++l) all = all && ideal_Ip(A, l).descriptions_equal;
    }
    return std::make_pair(all, "rank p^(3(N-1)) at N=2,3; 100 pairs; ideal descriptions agree");
  });

  // 6. Coinvariant inequalities on 200 seeded cyclic modules at (p=3, N=4)
  //    plus the regular and trivial modules; zero failures tolerated.
  run(6, 600.0, [&] {
    CoinvLab lab(3, 4, 1, cfg.enum_cap, cfg.dim_cap);
    auto modules = seeded_family(lab, cfg, 3, 4, 1, 200);
    const auto& A = lab.subgroup(SubgroupSpec::Tlj(3, 2));
    uint64_t nj = lab.level_group().encode(nj_element(lab.ctx(), 2));
    auto B = lab.conjugated(A, nj);
    auto M_meet = lab.meet(A, B);
    auto M_join = lab.join(A, B);
    Rng rng(cfg.seed ^ 0x6a5);
    uint64_t g2 = lab.random_element(rng), g3 = lab.random_element(rng);
    auto C1 = lab.conjugated(A, nj);
    auto C2 = lab.conjugated(A, g2);
    auto C3 = lab.conjugated(A, g3);
    uint32_t fails = 0;
    for (const auto& m : modules) {
      uint64_t da = lab.coinv_dim(m, A);
      if (da + lab.coinv_dim(m, B) > lab.coinv_dim(m, M_meet) + lab.coinv_dim(m, M_join)) ++fails;
      if (lab.coinv_dim(m, C1) != da || lab.coinv_dim(m, C2) != da || lab.coinv_dim(m, C3) != da)
        ++fails;
      if (!recursion_check(lab, m, 3, 2).holds) ++fails;
    }
    return std::make_pair(fails == 0, std::to_string(modules.size()) +
                                          " modules, failures=" + std::to_string(fails));
  });

  // 7. Prop. (single) with the minimal hypothesis constant, eta = (2p^2+1)/p^2:
  //    every tested module at 2 <= k <= N-1 (the k = 1 conclusion is the j = 0
  //    base case, which does not follow from the hypothesis; reported only).
  run(7, 600.0, [&] {
    uint32_t fails = 0, count = 0;
    double worst_strict = 0;
    for (auto [p, N] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 4}, {3, 4}, {5, 3}}) {
      CoinvLab lab(p, N, 1, cfg.enum_cap, cfg.dim_cap);
      auto modules = seeded_family(lab, cfg, p, N, 1, 200);
      for (const auto& m : modules)
        for (uint32_t k = 2; k + 1 <= N; ++k) {
          auto rep = prop_single_check(lab, m, k);
          ++count;
          if (!rep.holds) ++fails;
          worst_strict = std::max(worst_strict, rep.ratio_strict);
        }
    }
    return std::make_pair(fails == 0,
                          std::to_string(count) + " (module, k) pairs, failures=" +
                              std::to_string(fails) +
                              "; worst strict-eta ratio=" + format_double(worst_strict));
  });

  // 8. Degree-0 Shapiro at (p=3, N=3, k=2) on 50 seeded modules plus the
  //    trivial and regular modules; exact equality.
  run(8, 600.0, [&] {
    CoinvLab lab(3, 3, 1, cfg.enum_cap, cfg.dim_cap);
    auto modules = seeded_family(lab, cfg, 3, 3, 1, 50);
    uint32_t fails = 0;
    for (const auto& m : modules)
      if (!shapiro_h0_check(lab, m, 2).holds) ++fails;
    return std::make_pair(fails == 0, std::to_string(modules.size()) +
                                          " modules, failures=" + std::to_string(fails));
  });

  // 9. Product-group case at (t=2, p=3, N=2) over 50 seeded modules: sanity
  //    and monotonicity asserted; decay ratios and fitted exponent reported.
  run(9, 600.0, [&] {
    CoinvLab lab(3, 2, 2, cfg.enum_cap, cfg.dim_cap);
    auto modules = seeded_family(lab, cfg, 3, 2, 2, 50);
    bool ok = true;
    double worst = 0, fit_sum = 0;
    uint32_t fit_n = 0;
    for (const auto& m : modules) {
      auto rep = coinvarlem_product_check(lab, m, 2);
      ok = ok && rep.sanity && rep.monotone;
      for (const auto& row : rep.rows) worst = std::max(worst, row.ratio);
      if (m.kind == TestModule::Kind::Cyclic) {
        fit_sum += rep.fitted_exponent;
        ++fit_n;
      }
    }
    return std::make_pair(ok, "worst ratio=" + format_double(worst) + ", mean fitted exponent=" +
                                  format_double(fit_sum / fit_n) + " (reported, not asserted)");
  });

  // 10. Determinism and budget: cmd_verify with the default config is
  //     byte-reproducible and completes in under 5 minutes.
  run(10, 900.0, [&] {
    const char* cli = std::getenv("SL2LAB_CLI");
    if (!cli) return std::make_pair(false, std::string("SL2LAB_CLI not set"));
    std::string base = cli;
    auto t0 = Clock::now();
    int rc1 = std::system((base + " verify --out /tmp/sl2lab_acc_v1.jsonl").c_str());
    double one_run = std::chrono::duration<double>(Clock::now() - t0).count();
    int rc2 = std::system((base + " verify --out /tmp/sl2lab_acc_v2.jsonl").c_str());
    int e1 = WEXITSTATUS(rc1), e2 = WEXITSTATUS(rc2);
    std::ifstream f1("/tmp/sl2lab_acc_v1.jsonl"), f2("/tmp/sl2lab_acc_v2.jsonl");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    bool identical = !s1.str().empty() && s1.str() == s2.str();
    bool in_budget = one_run < 300.0;
    // The default config includes the p = 2 identity assertions, which are
    // false (criterion 2), so exit code 1 is the expected honest outcome.
    bool exits_consistent = e1 == e2 && (e1 == 0 || e1 == 1);
    return std::make_pair(identical && in_budget && exits_consistent,
                          "one run " + format_double(one_run) + " s, exit " + std::to_string(e1) +
                              ", byte-identical=" + (identical ? "yes" : "no"));
  });

  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::printf("%d/%zu criteria passed\n", int(results.size()) - failures, results.size());
  return failures > 0 ? 1 : 0;
}
