// Copyright 2026 The tscomplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tscomplex/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tscomplex {

Json state_to_json(const StateVector& s) {
  Json amps = Json::array();
  for (std::uint64_t i = 0; i < s.dim(); ++i) amps.push_back({s[i].real(), s[i].imag()});
  return Json{{"n_qubits", s.n_qubits()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("amplitudes"))
    throw std::invalid_argument("state JSON needs 'n_qubits' and 'amplitudes'");
  const int n = j.at("n_qubits").get<int>();
  if (n < 1 || n > kMaxDenseQubits) throw std::invalid_argument("state JSON: n_qubits out of range");
  const Json& a = j.at("amplitudes");
  if (!a.is_array() || a.size() != (std::size_t{1} << n))
    throw std::invalid_argument("state JSON: expected 2^n amplitudes");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Json& e = a[i];
    if (e.is_number()) {
      v[static_cast<Eigen::Index>(i)] = e.get<double>();
    } else if (e.is_array() && e.size() == 2) {
      v[static_cast<Eigen::Index>(i)] = Complex(e[0].get<double>(), e[1].get<double>());
    } else {
      throw std::invalid_argument("state JSON: amplitude " + std::to_string(i) + " must be a number or [re, im]");
    }
  }
  return StateVector(n, std::move(v));
}

Json report_to_json(const EstimateReport& r) {
  return Json{{"samples", r.samples}, {"successes", r.successes},         {"p_hat", r.p_hat},
              {"ci_low", r.ci_low},   {"ci_high", r.ci_high},             {"threshold_log2", r.threshold_log2},
              {"seed", r.seed},       {"mu_n", r.mu_n}};
}

Json reading_to_json(const WitnessReading& r) {
  return Json{{"value", r.value},
              {"means", r.means},
              {"shots", r.shots},
              {"std_error", r.std_error},
              {"detected", r.detected}};
}

Json trace_to_json(const SimTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json e{{"qubit", s.qubit},
           {"outcome", s.outcome},
           {"eta", {{s.eta[0].real(), s.eta[0].imag()}, {s.eta[1].real(), s.eta[1].imag()}}}};
    e["probability"] = s.probability ? Json(*s.probability) : Json(nullptr);
    steps.push_back(std::move(e));
  }
  Json out{{"steps", std::move(steps)}};
  out["final_tree"] = t.final_tree ? Json(serialize_tree(*t.final_tree)) : Json(nullptr);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

}  // namespace tscomplex
