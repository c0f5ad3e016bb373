// Command-line front door: verification suites, parameter sweeps,
// submodule decompositions, and the delta table.
//
// Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration
// or resource error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sl2lab/suites.hpp"

namespace {

// Config files are plain key=value lines ('#' comments); CLI flags override.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::ifstream in(path);
  if (!in) throw sl2lab::ParamError("config file not readable: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto e = s.find_last_not_of(" \t");
      s.erase(e == std::string::npos ? 0 : e + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<uint32_t> parse_u32_list(const std::string& s) {
  std::vector<uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(uint32_t(std::stoul(tok)));
  return out;
}

struct CommonOpts {
  std::vector<uint32_t> primes;
  uint32_t nmax = 0, nt2 = 0, modules = 0, dim_cap = 0, workers = 0;
  std::vector<uint32_t> t_list;
  uint64_t seed = UINT64_MAX;
  uint64_t enum_cap = 0;
  std::string out_path, format = "json", config_path;
  bool relaxed = false;

  sl2lab::SuiteConfig to_config() const {
    sl2lab::SuiteConfig cfg;
    if (!config_path.empty()) {
      auto kv = read_config_file(config_path);
      if (kv.count("p")) cfg.primes = parse_u32_list(kv["p"]);
      if (kv.count("n-max")) cfg.nmax_t1 = uint32_t(std::stoul(kv["n-max"]));
      if (kv.count("n-t2")) cfg.n_t2 = uint32_t(std::stoul(kv["n-t2"]));
      if (kv.count("t")) cfg.t_list = parse_u32_list(kv["t"]);
      if (kv.count("seed")) cfg.seed = std::stoull(kv["seed"]);
      if (kv.count("modules")) cfg.module_count = uint32_t(std::stoul(kv["modules"]));
      if (kv.count("enum-cap")) cfg.enum_cap = std::stoull(kv["enum-cap"]);
      if (kv.count("dim-cap")) cfg.dim_cap = uint32_t(std::stoul(kv["dim-cap"]));
      if (kv.count("t2-ratio-cap")) cfg.t2_ratio_cap = std::stod(kv["t2-ratio-cap"]);
    }
    if (!primes.empty()) cfg.primes = primes;
    if (nmax) cfg.nmax_t1 = nmax;
    if (nt2) cfg.n_t2 = nt2;
    if (!t_list.empty()) cfg.t_list = t_list;
    if (seed != UINT64_MAX) cfg.seed = seed;
    if (modules) cfg.module_count = modules;
    if (enum_cap) cfg.enum_cap = enum_cap;
    if (dim_cap) cfg.dim_cap = dim_cap;
    if (workers) cfg.workers = workers;
    cfg.relaxed_decompose = relaxed;
    return cfg;
  }
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--p", o.primes, "primes to run")->delimiter(',');
  sub->add_option("--n-max", o.nmax, "ambient depth N for t=1 suites");
  sub->add_option("--n-t2", o.nt2, "ambient depth N for t=2 suites");
  sub->add_option("--t", o.t_list, "t values to run (1 and/or 2)")->delimiter(',');
  sub->add_option("--seed", o.seed, "master seed (recorded in every output)");
  sub->add_option("--modules", o.modules, "seeded cyclic modules per sweep point");
  sub->add_option("--enum-cap", o.enum_cap, "subgroup enumeration cap");
  sub->add_option("--dim-cap", o.dim_cap, "linear-algebra dimension cap");
  sub->add_option("--workers", o.workers, "worker count (or SL2LAB_WORKERS)");
  sub->add_option("--out", o.out_path, "output path (default stdout)");
  sub->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", o.config_path, "key=value config file");
  sub->add_flag("--relaxed-decompose", o.relaxed, "base-p expansion instead of base-p^4");
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open output path " << path << "\n";
    return 2;
  }
  return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification lab for SL2(Z/p^N) congruence subgroup families,\n"
               "coset modules, truncated group algebras and coinvariant growth"};
  app.require_subcommand(1);

  CommonOpts vo, so;
  auto* verify = app.add_subcommand("verify", "run every assertion suite; exit 0 iff all pass");
  add_common(verify, vo);
  auto* sweep = app.add_subcommand("sweep", "coinvariant decay tables and growth reports");
  add_common(sweep, so);

  uint32_t dec_d = 0, dec_p = 2, dec_k = 5;
  bool dec_relaxed = false;
  std::string dec_out;
  auto* dec = app.add_subcommand("decompose", "filtration of the d-dimensional submodule F(d)");
  dec->add_option("d", dec_d, "submodule dimension")->required();
  dec->add_option("--p", dec_p, "prime");
  dec->add_option("--k", dec_k, "coset level k");
  dec->add_flag("--relaxed-decompose", dec_relaxed, "base-p expansion instead of base-p^4");
  dec->add_option("--out", dec_out, "output path");

  uint32_t delta_pmax = 100;
  std::string delta_out, delta_format = "json";
  auto* del = app.add_subcommand("delta", "table of delta(p) for primes <= pmax");
  del->add_option("pmax", delta_pmax, "largest prime bound");
  del->add_option("--out", delta_out, "output path");
  del->add_option("--format", delta_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      auto cfg = vo.to_config();
      return with_output(vo.out_path,
                         [&](std::ostream& out) { return sl2lab::cmd_verify(cfg, out, vo.format); });
    }
    if (sweep->parsed()) {
      auto cfg = so.to_config();
      std::string fmt = so.format == "json" ? "json" : "csv";
      return with_output(so.out_path,
                         [&](std::ostream& out) { return sl2lab::cmd_sweep(cfg, out, fmt); });
    }
    if (dec->parsed()) {
      return with_output(dec_out, [&](std::ostream& out) {
        return sl2lab::cmd_decompose(dec_d, dec_p, dec_k, dec_relaxed, out);
      });
    }
    if (del->parsed()) {
      return with_output(delta_out, [&](std::ostream& out) {
        return sl2lab::cmd_delta(delta_pmax, out, delta_format);
      });
    }
  } catch (const sl2lab::ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sl2lab::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
