#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sl2lab/coinvariants.hpp"
#include "sl2lab/report.hpp"
#include "sl2lab/suites.hpp"

using namespace sl2lab;

TEST_CASE("deterministic double formatting") {
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(delta_of_p(2)) == "0.207518749639");
}

TEST_CASE("jsonl and csv writers") {
  std::vector<CheckResult> rows = {{"s", "c", "p=3", true, true, "d"},
                                   {"s", "c2", "x,y", true, false, "has \"quotes\""}};
  std::ostringstream js, cs;
  write_results_jsonl(js, rows);
  CHECK(js.str() ==
        "{\"suite\":\"s\",\"check\":\"c\",\"params\":\"p=3\",\"asserted\":true,\"pass\":true,"
        "\"detail\":\"d\"}\n"
        "{\"suite\":\"s\",\"check\":\"c2\",\"params\":\"x,y\",\"asserted\":true,\"pass\":false,"
        "\"detail\":\"has \\\"quotes\\\"\"}\n");
  write_results_csv(cs, rows);
  CHECK(cs.str().find("\"x,y\"") != std::string::npos);
  CHECK(cs.str().find("\"has \"\"quotes\"\"\"") != std::string::npos);
}

TEST_CASE("subspace json export") {
  auto s = FpSubspace::from_vectors(3, 3, {{1, 2, 0}, {0, 0, 1}});
  std::string j = subspace_to_json(s);
  CHECK(j == "{\"p\":3,\"ncols\":3,\"dim\":2,\"basis\":[[1,2,0],[0,0,1]]}");
}

TEST_CASE("suite config validation") {
  SuiteConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.primes = {4};
  CHECK_THROWS_AS(cfg.validate(), ParamError);
  cfg.primes = {3};
  cfg.nmax_t1 = 1;
  CHECK_THROWS_AS(cfg.validate(), ParamError);
  // Module seeds are deterministic in (seed, p, N, t, idx).
  SuiteConfig a, b;
  CHECK(a.module_seed(3, 4, 1, 7) == b.module_seed(3, 4, 1, 7));
  CHECK(a.module_seed(3, 4, 1, 7) != a.module_seed(3, 4, 1, 8));
}

TEST_CASE("delta table command") {
  std::ostringstream out;
  int rc = cmd_delta(2, out, "csv");
  CHECK(rc == 0);
  CHECK(out.str() ==
        "p,delta,extremal,min_delta\n2,0.207518749639,1,1\n");
  std::ostringstream err;
  CHECK(cmd_delta(1, err, "csv") == 2);  // no primes: config error
}

TEST_CASE("decompose command") {
  std::ostringstream out;
  CHECK(cmd_decompose(17, 2, 9, false, out) == 0);
  CHECK(out.str().find("\"level\":\"5\"") != std::string::npos);
  CHECK(out.str().find("\"level\":\"1\"") != std::string::npos);
  std::ostringstream err;
  CHECK(cmd_decompose(17, 2, 5, false, err) == 2);  // d > p^(k-1)
}

TEST_CASE("cli binary: exit codes and reproducibility on a small config") {
  const char* cli = std::getenv("SL2LAB_CLI");
  if (!cli) {
    MESSAGE("SL2LAB_CLI not set; skipping subprocess checks");
    return;
  }
  std::string base = cli;
  auto run = [&](const std::string& args) {
    int rc = std::system((base + " " + args).c_str());
    return WEXITSTATUS(rc);
  };
  CHECK(run("delta 10 --out /tmp/sl2lab_t_delta.jsonl") == 0);
  CHECK(run("delta 1 --out /tmp/sl2lab_t_delta_err.txt") == 2);
  CHECK(run("verify --p 3 --modules 3 --out /tmp/sl2lab_t_v1.jsonl") == 0);
  CHECK(run("verify --p 3 --modules 3 --out /tmp/sl2lab_t_v2.jsonl") == 0);
  std::ifstream f1("/tmp/sl2lab_t_v1.jsonl"), f2("/tmp/sl2lab_t_v2.jsonl");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
  // Config-file path with flag override.
  {
    std::ofstream cfg("/tmp/sl2lab_t_cfg.txt");
    cfg << "# comment\np = 3\nmodules = 3\nseed = 5\n";
  }
  CHECK(run("verify --config /tmp/sl2lab_t_cfg.txt --out /tmp/sl2lab_t_v3.jsonl") == 0);
}
