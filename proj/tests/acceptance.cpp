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

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles are independent of the library code paths they check.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "test_util.hpp"
#include "tscomplex/fewqubit.hpp"
#include "tscomplex/mbqc.hpp"
#include "tscomplex/raz.hpp"
#include "tscomplex/states.hpp"
#include "tscomplex/subgroup.hpp"

namespace ts = tscomplex;
using ts::StateVector;
using ts::TreeNode;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// -- independent oracles ------------------------------------------------------------

ts::Complex brute_permanent(const Eigen::MatrixXcd& m) {
  std::vector<int> sigma(static_cast<std::size_t>(m.rows()));
  std::iota(sigma.begin(), sigma.end(), 0);
  ts::Complex total = 0.0;
  do {
    ts::Complex p = 1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) p *= m(i, sigma[static_cast<std::size_t>(i)]);
    total += p;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

StateVector ghz_oracle(int n) {
  StateVector s(n);
  s[0] = 1.0;
  s[s.dim() - 1] += 1.0;
  return s;
}

StateVector dicke_oracle(int n, int k) {
  StateVector s(n);
  for (std::uint64_t x = 0; x < s.dim(); ++x)
    if (std::popcount(x) == k) s[x] = 1.0;
  return s;
}

StateVector permanent_oracle(int m) {
  const int n = m * m;
  StateVector s(n);
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    Eigen::MatrixXcd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = static_cast<double>((x >> (n - 1 - (m * i + j))) & 1U);
    s[x] = brute_permanent(a);
  }
  return s;
}

StateVector project_oracle(const StateVector& s, int q, const Eigen::Vector2cd& v) {
  StateVector out(s.n_qubits());
  const std::uint64_t bit = std::uint64_t{1} << (s.n_qubits() - q);
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    if (x & bit) continue;
    const ts::Complex c = std::conj(v[0]) * s[x] + std::conj(v[1]) * s[x | bit];
    out[x] = c * v[0];
    out[x | bit] = c * v[1];
  }
  return out;
}

ts::MeasurementBasis random_basis(ts::Rng& rng) {
  Eigen::Matrix2cd a;
  a << rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal();
  const Eigen::Matrix2cd q = Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ();
  return ts::MeasurementBasis(q.col(0), q.col(1));
}

StateVector at_fidelity(const StateVector& target, double f, ts::Rng& rng) {
  StateVector perp = ts::testing::random_state(target.n_qubits(), rng);
  perp.amplitudes() -= target.amplitudes() * target.amplitudes().dot(perp.amplitudes());
  perp = perp.normalized();
  StateVector s(target.n_qubits());
  s.amplitudes() = std::sqrt(f) * target.amplitudes() + std::sqrt(1.0 - f) * perp.amplitudes();
  return s;
}

// -- criteria ------------------------------------------------------------------------

Outcome few_qubit_table() {
  Outcome o;
  StateVector p(3), b(3), ghz(3);
  p[0] = 1.0;
  b[0b000] = b[0b011] = 1.0;
  ghz[0b000] = ghz[0b111] = 1.0;
  const int tp = ts::ts_from_class3(ts::slocc_classify3(p));
  const int tb = ts::ts_from_class3(ts::slocc_classify3(b));
  const int tg = ts::ts_from_class3(ts::slocc_classify3(ghz));
  const int tw = ts::ts_from_class3(ts::slocc_classify3(ts::w_state(3)));
  o.pass = tp == 3 && tb == 5 && tg == 6 && tw == 8;
  const auto t0 = Clock::now();
  const auto fg = ts::fit_tree(ghz.normalized(), ts::shape_ghz3());
  const auto fw = ts::fit_tree(ts::w_state(3), ts::shape_w3());
  const double secs = seconds_since(t0);
  o.pass = o.pass && fg.size == 6 && fg.residual < 1e-8 && fw.size == 8 && fw.residual < 1e-8 && secs < 60.0;
  o.detail = fmt("TS P/B/GHZ/W = %d/%d/%d/%d; fit GHZ size %zu residual %.2e, W size %zu residual %.2e; %.1f s", tp,
                 tb, tg, tw, fg.size, fg.residual, fw.size, fw.residual, secs);
  return o;
}

Outcome psi4() {
  Outcome o;
  const StateVector s = ts::build_psi4();
  const std::size_t leaves = ts::basis_expansion_size(s);
  const auto fit = ts::fit_tree(s, ts::shape_psi4());
  o.pass = leaves == 24 && fit.size == 16 && fit.residual < 1e-6;
  o.detail = fmt("basis expansion %zu leaves; 16-leaf fit residual %.2e", leaves, fit.residual);
  return o;
}

Outcome builders() {
  Outcome o;
  double worst = 0.0;
  bool sizes = true;
  for (int n = 1; n <= 12; ++n) {
    const TreeNode t = ts::build_ghz(n);
    sizes = sizes && t.size() == static_cast<std::size_t>(2 * n);
    worst = std::max(worst, ts::testing::diff_up_to_phase(ts::evaluate(t, n), ghz_oracle(n)));
    for (int k = 1; k < n; ++k) {
      const TreeNode d = ts::build_dicke(n, k);
      sizes = sizes && d.size() <= static_cast<std::size_t>(std::max(k, n - k) * n + 2 * n);
      worst = std::max(worst, ts::testing::diff_up_to_phase(ts::evaluate(d, n), dicke_oracle(n, k)));
    }
  }
  std::size_t prev = 0;
  for (int n : {2, 4, 8}) {
    std::vector<std::pair<int, int>> edges;
    for (int q = 1; q < n; ++q) edges.emplace_back(q, q + 1);
    const TreeNode t = ts::build_mps_tree(ts::cluster1d_mps(n));
    if (prev) sizes = sizes && t.size() <= 4 * prev;  // two halves, bond dimension two
    prev = t.size();
    worst = std::max(worst, ts::testing::diff_up_to_phase(ts::evaluate(t, n), ts::testing::plus_with_cz(n, edges)));
  }
  for (int m : {2, 3}) {
    const int n = m * m;
    const TreeNode t = ts::permanent_state_tree(m);
    sizes = sizes && static_cast<double>(t.size()) <= std::pow(n, 1.5) * std::pow(2.0, std::sqrt(n));
    worst = std::max(worst, ts::testing::diff_up_to_phase(ts::evaluate(t, n), permanent_oracle(m)));
  }
  o.pass = sizes && worst <= 1e-9;
  o.detail = fmt("max normalized amplitude difference %.2e; size bounds %s", worst, sizes ? "hold" : "VIOLATED");
  return o;
}

Outcome balanced_fullrank() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r2 = ts::estimate_balanced_fullrank(2, 100000, 1);
  const bool point = r2.ci_low <= 2.0 / 3.0 && 2.0 / 3.0 <= r2.ci_high;
  bool monotone = true;
  double prev_low = 0.0, p12 = 0.0;
  std::string curve;
  for (int n = 2; n <= 12; n += 2) {
    const auto r = ts::estimate_balanced_fullrank(n, 10000, 2);
    monotone = monotone && r.ci_high >= prev_low;
    prev_low = r.ci_low;
    if (n == 12) p12 = r.p_hat;
    curve += fmt("%s%d:%.3f", curve.empty() ? "" : " ", n, r.p_hat);
  }
  const double secs = seconds_since(t0);
  o.pass = point && monotone && p12 > 0.9 && secs < 300.0;
  o.detail = fmt("n=2 p_hat %.4f CI [%.2e, %.2e] %s 2/3; curve %s; %s; %.1f s", r2.p_hat, r2.ci_low, r2.ci_high,
                 point ? "contains" : "excludes", curve.c_str(), monotone ? "non-decreasing" : "NOT monotone", secs);
  return o;
}

Outcome jacobsthal() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int q : {19, 43, 59}) {
    const auto r = ts::estimate_subgroup_invertibility(ts::jacobsthal_subgroup(q), 10000, 1);
    o.pass = o.pass && r.p_hat >= 0.25 && r.p_hat <= 0.35;
    o.detail += fmt("q=%d %.4f; ", q, r.p_hat);
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 120.0;
  o.detail += fmt("%.1f s", secs);
  return o;
}

Outcome subgroup_suite() {
  Outcome o;
  ts::Rng rng(6);
  int commute = 0, stabilize = 0, exact = 0, psd = 0, psd_checked = 0, detect = 0, detect_checked = 0;
  double min_eig = 1.0;
  const int specs = 50;
  for (int i = 0; i < specs; ++i) {
    const int n = 2 * (1 + static_cast<int>(rng.below(7)));
    const ts::SubgroupSpec spec(ts::BitMatrix::random(static_cast<std::size_t>(n / 2), static_cast<std::size_t>(n), rng));
    const auto gens = ts::derive_generators(spec);
    const StateVector s = ts::subgroup_state(spec);
    bool all = gens.size() == static_cast<std::size_t>(n);
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) all = all && gens[a].commutes(gens[b]);
    commute += all;
    stabilize += ts::check_stabilizes(gens, s);
    exact += std::abs(ts::witness_stabilizer(gens, s) + 1.0) < 1e-9;
    if (n <= 10) {
      ++psd_checked;
      const double e = ts::psd_gap_check(gens, s);
      min_eig = std::min(min_eig, e);
      psd += e >= -1e-9;
    }
    for (int k = 0; k < 5; ++k) {
      const double thr = ts::detection_threshold(n);
      const double f = thr + (1.0 - thr) * (0.01 + 0.99 * rng.uniform());
      ++detect_checked;
      detect += ts::witness_stabilizer(gens, at_fidelity(s, f, rng)) < 0.0;
    }
  }
  o.pass = commute == specs && stabilize == specs && exact == specs && psd == psd_checked && detect == detect_checked;
  o.detail = fmt("commute %d/%d, stabilize %d/%d, <W'> = -1 %d/%d, PSD %d/%d (min eig %.2e), detected %d/%d", commute,
                 specs, stabilize, specs, exact, specs, psd, psd_checked, min_eig, detect, detect_checked);
  return o;
}

Outcome shot_budget() {
  Outcome o;
  const int n = 10;
  const double alpha = 0.5;
  const std::uint64_t shots = ts::required_shots(n, alpha);
  ts::Rng rng(7);
  const ts::SubgroupSpec spec(ts::BitMatrix::random(n / 2, n, rng));
  const auto gens = ts::derive_generators(spec);
  const StateVector target = ts::subgroup_state(spec);
  int flagged = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const StateVector s = at_fidelity(target, 1.0 - alpha / (2.0 * n), rng);
    flagged += ts::sample_witness(gens, s, shots, static_cast<std::uint64_t>(t)).value < 0.0;
  }
  o.pass = shots >= 400 && flagged >= 95;
  o.detail = fmt("%llu shots per generator; <W'> < 0 flagged in %d/%d trials", static_cast<unsigned long long>(shots),
                 flagged, trials);
  return o;
}

Outcome mbqc() {
  Outcome o;
  ts::Rng rng(8);
  double worst = 0.0;
  bool sizes = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const TreeNode t = ts::testing::random_tree(ts::qubit_range(n), rng);
    const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto b = random_basis(rng);
    const int out = static_cast<int>(rng.below(2));
    const StateVector before = ts::evaluate(t, n);
    const StateVector want = project_oracle(before, q, b.vector(out));
    const auto m = ts::measure_on_tree(t, q, b, out, false);
    const double scale = 1.0 + before.norm();
    if (!m.tree) {
      worst = std::max(worst, want.norm() / scale);
      continue;
    }
    sizes = sizes && m.tree->size() <= t.size();
    worst = std::max(worst, ts::testing::max_abs_diff(ts::evaluate(*m.tree, n), want) / scale);
  }
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const StateVector a = ts::testing::random_state(6, rng);
    StateVector b = a;
    const double mix = rng.uniform();
    b.amplitudes() = (1.0 - mix) * a.amplitudes() + mix * ts::testing::random_state(6, rng).amplitudes();
    b = b.normalized();
    violations += !ts::fidelity_monotonicity_check(a, b, 1 + static_cast<int>(rng.below(6)), random_basis(rng)).holds;
  }
  o.pass = worst <= 1e-10 && sizes && violations == 0;
  o.detail = fmt("max relative deviation %.2e over 1000 triples; size %s; monotonicity violations %d/1000", worst,
                 sizes ? "never grew" : "GREW", violations);
  return o;
}

Outcome fast_path() {
  Outcome o;
  ts::Rng rng(9);
  for (int i = 0; i < 6; ++i) {
    // Alternate fully random A with (I | R), whose blocks are often invertible.
    const ts::BitMatrix a = i % 2 ? ts::BitMatrix::identity(6).hconcat(ts::BitMatrix::random(6, 6, rng))
                                  : ts::BitMatrix::random(6, 12, rng);
    const ts::SubgroupSpec spec(a);
    const auto fast = ts::estimate_subgroup_invertibility(spec, 1000, 10 + static_cast<std::uint64_t>(i));
    const auto dense = ts::estimate_state_schmidt(ts::subgroup_state(spec), 1000, 10 + static_cast<std::uint64_t>(i));
    const bool overlap = std::max(fast.ci_low, dense.ci_low) <= std::min(fast.ci_high, dense.ci_high);
    o.pass = o.pass && overlap;
    o.detail += fmt("%.3f/%.3f ", fast.p_hat, dense.p_hat);
  }
  o.detail = "fast/dense p_hat over 1000 bipartitions: " + o.detail + (o.pass ? "(CIs overlap)" : "(CI MISMATCH)");
  return o;
}

Outcome ryser() {
  Outcome o;
  ts::Rng rng(10);
  double worst = 0.0;
  for (int m = 1; m <= 7; ++m)
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXcd a(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.complex_normal();
      const ts::Complex want = brute_permanent(a);
      worst = std::max(worst, std::abs(ts::permanent_ryser(a) - want) / std::abs(want));
    }
  double imm = 0.0;
  for (int m = 1; m <= 6; ++m) {
    Eigen::MatrixXcd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = rng.complex_normal();
    const ts::Complex per = brute_permanent(a), det = a.determinant();
    imm = std::max(imm, std::abs(ts::immanant(a, ts::permanent_coefficients(m)) - per) / std::max(1.0, std::abs(per)));
    imm = std::max(imm, std::abs(ts::immanant(a, ts::determinant_coefficients(m)) - det) / std::max(1.0, std::abs(det)));
  }
  o.pass = worst <= 1e-10 && imm <= 1e-10;
  o.detail = fmt("max relative error %.2e over m <= 7; immanant specializations %.2e", worst, imm);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 few-qubit table", few_qubit_table},   {"2 psi4", psi4},
      {"3 builders vs oracle", builders},       {"4 balanced full-rank", balanced_fullrank},
      {"5 Jacobsthal constant", jacobsthal},    {"6 subgroup/stabilizer suite", subgroup_suite},
      {"7 shot budget", shot_budget},           {"8 MBQC oracle equivalence", mbqc},
      {"9 fast-path agreement", fast_path},     {"10 Ryser oracle", ryser},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
