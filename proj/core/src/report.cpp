#include "sl2lab/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace sl2lab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

nlohmann::ordered_json result_to_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["check"] = r.check;
  j["params"] = r.params;
  j["asserted"] = r.asserted;
  j["pass"] = r.pass;
  j["detail"] = r.detail;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_results_jsonl(std::ostream& out, const std::vector<CheckResult>& rows) {
  for (const auto& r : rows) out << result_to_json(r).dump() << "\n";
}

void write_results_csv(std::ostream& out, const std::vector<CheckResult>& rows) {
  out << "suite,check,params,asserted,pass,detail\n";
  for (const auto& r : rows)
    out << csv_escape(r.suite) << ',' << csv_escape(r.check) << ',' << csv_escape(r.params) << ','
        << (r.asserted ? "1" : "0") << ',' << (r.pass ? "1" : "0") << ',' << csv_escape(r.detail)
        << "\n";
}

void Table::write_csv(std::ostream& out) const {
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_escape(header[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << "\n";
  }
}

void Table::write_jsonl(std::ostream& out) const {
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    for (size_t i = 0; i < header.size() && i < row.size(); ++i) j[header[i]] = row[i];
    out << j.dump() << "\n";
  }
}

std::string subspace_to_json(const FpSubspace& s) {
  nlohmann::ordered_json j;
  j["p"] = s.p;
  j["ncols"] = s.ncols;
  j["dim"] = s.dim();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& b : s.basis) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (uint8_t x : b) row.push_back(int(x));
    rows.push_back(row);
  }
  j["basis"] = rows;
  return j.dump();
}

std::string matrix_to_json(const FpMat& m) {
  nlohmann::ordered_json j;
  j["p"] = m.p;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (uint32_t i = 0; i < m.rows; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (uint32_t c = 0; c < m.cols; ++c) row.push_back(int(m.at(i, c)));
    data.push_back(row);
  }
  j["data"] = data;
  return j.dump();
}

}  // namespace sl2lab
