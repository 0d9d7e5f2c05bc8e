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

#include "tscomplex/fewqubit.hpp"

#include <bit>
#include <cmath>

namespace tscomplex {

std::string to_string(Slocc3Class c) {
  switch (c) {
    case Slocc3Class::Product: return "P";
    case Slocc3Class::B12_3: return "B12|3";
    case Slocc3Class::B13_2: return "B13|2";
    case Slocc3Class::B23_1: return "B23|1";
    case Slocc3Class::W: return "W";
    case Slocc3Class::GHZ: return "GHZ";
  }
  return "?";
}

Slocc3Class slocc3_class_from_string(std::string_view s) {
  for (auto c : {Slocc3Class::Product, Slocc3Class::B12_3, Slocc3Class::B13_2, Slocc3Class::B23_1, Slocc3Class::W,
                 Slocc3Class::GHZ})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown SLOCC class '" + std::string(s) + "'");
}

double three_tangle(const StateVector& s) {
  if (s.n_qubits() != 3) throw std::invalid_argument("three_tangle: state must have three qubits");
  const StateVector u = s.normalized();
  auto a = [&](int i) { return u[static_cast<std::uint64_t>(i)]; };
  // Indices in binary: a(0b011) is amplitude of |011>.
  const Complex d1 = a(0) * a(0) * a(7) * a(7) + a(1) * a(1) * a(6) * a(6) + a(2) * a(2) * a(5) * a(5) +
                     a(4) * a(4) * a(3) * a(3);
  const Complex d2 = a(0) * a(7) * a(3) * a(4) + a(0) * a(7) * a(5) * a(2) + a(0) * a(7) * a(6) * a(1) +
                     a(3) * a(4) * a(5) * a(2) + a(3) * a(4) * a(6) * a(1) + a(5) * a(2) * a(6) * a(1);
  const Complex d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

Slocc3Class slocc_classify3(const StateVector& s, double tangle_tol, double rank_tol) {
  if (s.n_qubits() != 3) throw std::invalid_argument("slocc_classify3: state must have three qubits");
  if (s.norm() == 0.0) throw std::invalid_argument("slocc_classify3: zero state has no class");
  const StateVector u = s.normalized();
  int rank_one = 0;
  int separated = 0;
  for (int q = 1; q <= 3; ++q) {
    if (schmidt_rank(u, Bipartition::from_qubits(3, {q}), rank_tol) == 1) {
      ++rank_one;
      separated = q;
    }
  }
  if (rank_one >= 2) return Slocc3Class::Product;  // two factored qubits force the third
  if (rank_one == 1) {
    if (separated == 1) return Slocc3Class::B23_1;
    if (separated == 2) return Slocc3Class::B13_2;
    return Slocc3Class::B12_3;
  }
  return three_tangle(u) > tangle_tol ? Slocc3Class::GHZ : Slocc3Class::W;
}

int ts_from_class3(Slocc3Class c) {
  switch (c) {
    case Slocc3Class::Product: return 3;
    case Slocc3Class::B12_3:
    case Slocc3Class::B13_2:
    case Slocc3Class::B23_1: return 5;
    case Slocc3Class::GHZ: return 6;
    case Slocc3Class::W: return 8;
  }
  throw std::invalid_argument("ts_from_class3: unknown class");
}

namespace {

StateVector w_approximant(double t) {
  // ((|0> + t|1>)^3 - |000>) / t, unnormalized.
  StateVector g(3);
  for (std::uint64_t x = 1; x < 8; ++x) {
    const int w = std::popcount(x);
    g[x] = std::pow(t, w - 1);
  }
  return g;
}

}  // namespace

EpsilonWitness ts_epsilon_w3(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("ts_epsilon_w3: epsilon must lie in (0, 1)");
  const StateVector w = w_state(3);
  auto fidelity = [&](double t) { return overlap_squared(w_approximant(t), w); };
  // Fidelity decreases in t > 0; take the largest t that still meets the
  // bound so the witness stays clearly inside the GHZ class.
  double lo = 0.0;
  double hi = 1.0;
  if (fidelity(hi) >= 1.0 - epsilon) {
    lo = hi;
  } else {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (fidelity(mid) >= 1.0 - epsilon)
        lo = mid;
      else
        hi = mid;
    }
  }
  EpsilonWitness out;
  out.t = lo;
  out.witness = w_approximant(lo).normalized();
  out.overlap_squared = overlap_squared(out.witness, w);
  out.ts_epsilon = ts_from_class3(slocc_classify3(out.witness));
  return out;
}

StateVector build_psi4() {
  StateVector s(4);
  const double half = 1.0 / (2.0 * std::sqrt(3.0));
  const double full = -1.0 / std::sqrt(3.0);
  for (std::uint64_t x : {0b0110u, 0b0101u, 0b1001u, 0b1010u}) s[x] = half;
  for (std::uint64_t x : {0b0011u, 0b1100u}) s[x] = full;
  return s;
}

int werner_ts(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_ts: p must lie in [0, 1]");
  if (p <= 1.0 / 5.0) return 3;
  if (p <= 3.0 / 7.0) return 5;
  return 6;
}

TreeNode shape_ghz3() { return parse_tree("(+ (x [q1 1 1] [q2 1 1] [q3 1 1]) (x [q1 1 1] [q2 1 1] [q3 1 1]))"); }

TreeNode shape_w3() {
  return parse_tree(
      "(+ (x [q1 1 1] (+ (x [q2 1 1] [q3 1 1]) (x [q2 1 1] [q3 1 1]))) (x [q1 1 1] [q2 1 1] [q3 1 1]))");
}

TreeNode shape_psi4() {
  const std::string pair12 = "(+ (x [q1 1 1] [q2 1 1]) (x [q1 1 1] [q2 1 1]))";
  const std::string pair34 = "(+ (x [q3 1 1] [q4 1 1]) (x [q3 1 1] [q4 1 1]))";
  const std::string pair13 = "(+ (x [q1 1 1] [q3 1 1]) (x [q1 1 1] [q3 1 1]))";
  const std::string pair24 = "(+ (x [q2 1 1] [q4 1 1]) (x [q2 1 1] [q4 1 1]))";
  return parse_tree("(+ (x " + pair12 + " " + pair34 + ") (x " + pair13 + " " + pair24 + "))");
}

}  // namespace tscomplex
