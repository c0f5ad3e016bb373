#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sl2lab/fp_linalg.hpp"

namespace sl2lab {

// Deterministic double formatting shared by every writer (%.12g).
std::string format_double(double v);

// One verification result; report-only rows carry asserted = false.
struct CheckResult {
  std::string suite;
  std::string check;
  std::string params;
  bool asserted = true;
  bool pass = true;
  std::string detail;
};

void write_results_jsonl(std::ostream& out, const std::vector<CheckResult>& rows);
void write_results_csv(std::ostream& out, const std::vector<CheckResult>& rows);

// Generic CSV table with a fixed header.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void write_csv(std::ostream& out) const;
  void write_jsonl(std::ostream& out) const;
};

// Row-major JSON array-of-arrays with entries 0..p-1.
std::string subspace_to_json(const FpSubspace& s);
std::string matrix_to_json(const FpMat& m);

}  // namespace sl2lab
