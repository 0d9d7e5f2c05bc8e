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

#include "tscomplex/subgroup.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "tscomplex/random.hpp"

namespace tscomplex {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m;
  unsigned __int128 x = b % m;
  while (e > 0) {
    if (e & 1U) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Basis-index masks of the X and Z parts; qubit q sits at bit n - q.
std::pair<std::uint64_t, std::uint64_t> index_masks(const PauliString& g) {
  const std::size_t n = g.size();
  std::uint64_t xm = 0;
  std::uint64_t zm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
    if (g.x.get(i)) xm |= bit;
    if (g.z.get(i)) zm |= bit;
  }
  return {xm, zm};
}

void require_normalized(const StateVector& s, const char* who) {
  if (!s.is_normalized(1e-9)) throw std::invalid_argument(std::string(who) + ": state must be normalized");
}

void require_generators(const std::vector<PauliString>& gens, int n, const char* who) {
  if (gens.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument(std::string(who) + ": need one generator per qubit");
  for (const auto& g : gens)
    if (g.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument(std::string(who) + ": generator length differs from qubit count");
}

}  // namespace

SubgroupSpec::SubgroupSpec(BitMatrix a) : a_(std::move(a)) {
  if (a_.cols() == 0 || a_.cols() % 2 != 0) throw std::invalid_argument("SubgroupSpec: column count must be even");
  if (a_.rows() * 2 != a_.cols()) throw std::invalid_argument("SubgroupSpec: A must have n/2 rows and n columns");
}

BitMatrix SubgroupSpec::y_block(const Bipartition& p) const {
  if (p.n() != n() || !p.is_equal()) throw std::invalid_argument("SubgroupSpec: need an equal bipartition of n qubits");
  std::vector<std::size_t> cols;
  for (int q = 1; q <= n(); ++q)
    if (p.in_y(q)) cols.push_back(static_cast<std::size_t>(q - 1));
  return gf2_columns(a_, cols);
}

BitMatrix SubgroupSpec::z_block(const Bipartition& p) const { return y_block(p.swapped()); }

StateVector subgroup_state(const SubgroupSpec& spec) {
  const int n = spec.n();
  if (n > kMaxSubgroupStateQubits)
    throw std::invalid_argument("subgroup_state: n = " + std::to_string(n) + " exceeds the dense limit of " +
                                std::to_string(kMaxSubgroupStateQubits));
  std::vector<std::uint64_t> basis;
  for (const auto& v : gf2_kernel_basis(spec.matrix())) {
    std::uint64_t idx = 0;
    for (int j = 0; j < n; ++j)
      if (v.get(static_cast<std::size_t>(j))) idx |= std::uint64_t{1} << (n - 1 - j);
    basis.push_back(idx);
  }
  StateVector s(n);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(basis.size()));
  // Gray-code walk over the span.
  std::uint64_t x = 0;
  s[0] = amp;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << basis.size()); ++k) {
    x ^= basis[static_cast<std::size_t>(std::countr_zero(k))];
    s[x] = amp;
  }
  return s;
}

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

int quadratic_character(std::int64_t a, std::int64_t q) {
  if (!is_prime(q)) throw std::invalid_argument("quadratic_character: q = " + std::to_string(q) + " is not prime");
  const std::int64_t r = ((a % q) + q) % q;
  if (r == 0) return 0;
  if (q == 2) return 1;
  const auto uq = static_cast<std::uint64_t>(q);
  return pow_mod(static_cast<std::uint64_t>(r), (uq - 1) / 2, uq) == 1 ? 1 : 0;
}

SubgroupSpec jacobsthal_subgroup(std::int64_t q) {
  if (!is_prime(q) || q % 8 != 3)
    throw std::invalid_argument("jacobsthal_subgroup: q must be a prime with q = 3 mod 8 (got " + std::to_string(q) +
                                ")");
  const auto uq = static_cast<std::size_t>(q);
  BitMatrix a(uq, 2 * uq);
  for (std::size_t i = 0; i < uq; ++i) {
    a.set(i, i);
    for (std::size_t j = 0; j < uq; ++j)
      if (quadratic_character(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j), q) == 1) a.set(i, uq + j);
  }
  return SubgroupSpec(std::move(a));
}

std::string PauliString::to_string() const {
  std::string out(1, sign < 0 ? '-' : '+');
  for (std::size_t i = 0; i < size(); ++i) {
    const bool xi = x.get(i);
    const bool zi = z.get(i);
    out += xi && zi ? 'Y' : xi ? 'X' : zi ? 'Z' : 'I';
  }
  return out;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString g;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    g.sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  if (text.empty()) throw std::invalid_argument("PauliString: empty string");
  g.x = BitVector(text.size());
  g.z = BitVector(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': g.x.set(i); break;
      case 'Z': g.z.set(i); break;
      default:
        throw std::invalid_argument("PauliString: unexpected letter '" + std::string(1, text[i]) + "' at position " +
                                    std::to_string(i));
    }
  }
  return g;
}

bool PauliString::commutes(const PauliString& other) const {
  if (size() != other.size()) throw std::invalid_argument("PauliString::commutes: length mismatch");
  return dot(x, other.z) == dot(z, other.x);
}

std::vector<PauliString> derive_generators(const SubgroupSpec& spec) {
  const BitMatrix& a = spec.matrix();
  const std::size_t n = a.cols();
  std::vector<PauliString> gens;
  for (std::size_t r : gf2_independent_rows(a)) gens.push_back({BitVector(n), a.row(r), 1});
  for (auto& k : gf2_kernel_basis(a)) gens.push_back({std::move(k), BitVector(n), 1});
  return gens;
}

StateVector apply_pauli(const PauliString& g, const StateVector& s) {
  if (g.size() != static_cast<std::size_t>(s.n_qubits()))
    throw std::invalid_argument("apply_pauli: string length differs from qubit count");
  const auto [xm, zm] = index_masks(g);
  StateVector out(s.n_qubits());
  // Z acts first, so the sign depends on the input index.
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    const double sign = (std::popcount(i & zm) & 1) ? -g.sign : g.sign;
    out[i ^ xm] = sign * s[i];
  }
  return out;
}

double pauli_expectation(const PauliString& g, const StateVector& s) {
  return inner_product(s, apply_pauli(g, s)).real();
}

bool check_stabilizes(const std::vector<PauliString>& gens, const StateVector& s, double tol) {
  for (const auto& g : gens) {
    const StateVector gs = apply_pauli(g, s);
    if ((gs.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

double witness_exact(const StateVector& s, const StateVector& target) {
  if (s.n_qubits() != target.n_qubits()) throw std::invalid_argument("witness_exact: qubit counts differ");
  return 0.5 - std::norm(inner_product(target, s));
}

double witness_stabilizer(const std::vector<PauliString>& gens, const StateVector& s) {
  require_normalized(s, "witness_stabilizer");
  require_generators(gens, s.n_qubits(), "witness_stabilizer");
  double sum = 0.0;
  for (const auto& g : gens) sum += pauli_expectation(g, s);
  return static_cast<double>(s.n_qubits() - 1) - sum;
}

double detection_threshold(int n) {
  if (n < 1) throw std::invalid_argument("detection_threshold: n must be positive");
  return 1.0 - 1.0 / (2.0 * n);
}

WitnessReading sample_witness(const std::vector<PauliString>& gens, const StateVector& s, std::uint64_t shots,
                              std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_witness: need at least one shot");
  require_normalized(s, "sample_witness");
  require_generators(gens, s.n_qubits(), "sample_witness");
  WitnessReading out;
  out.shots = shots;
  out.means.resize(gens.size());
  double max_delta = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const double exact = pauli_expectation(gens[i], s);
    const double p_plus = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
    Rng rng(derive_seed(seed, "witness", i));
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const std::uint64_t plus = draw(rng);
    const double mean = (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) / static_cast<double>(shots);
    out.means[i] = mean;
    sum += mean;
    max_delta = std::max(max_delta, std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(shots)));
  }
  out.value = static_cast<double>(gens.size()) - 1.0 - sum;
  out.std_error = static_cast<double>(gens.size()) * max_delta;
  out.detected = out.value + out.std_error < 0.0;
  return out;
}

std::uint64_t required_shots(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("required_shots: n must be positive");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("required_shots: alpha must lie in [0, 1)");
  const double gap = 1.0 - alpha;
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * n / (gap * gap) - 1e-9));
}

double psd_gap_check(const std::vector<PauliString>& gens, const StateVector& target) {
  const int n = target.n_qubits();
  if (n > kMaxDenseWitnessQubits)
    throw std::invalid_argument("psd_gap_check: n = " + std::to_string(n) + " exceeds the dense limit of " +
                                std::to_string(kMaxDenseWitnessQubits));
  require_normalized(target, "psd_gap_check");
  require_generators(gens, n, "psd_gap_check");
  const auto dim = static_cast<Eigen::Index>(target.dim());
  // W' - 2W = (n - 2) I - sum_i g_i + 2 |t><t|.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) * static_cast<double>(n - 2);
  m += 2.0 * target.amplitudes() * target.amplitudes().adjoint();
  for (const auto& g : gens) {
    const auto [xm, zm] = index_masks(g);
    for (std::uint64_t i = 0; i < target.dim(); ++i) {
      const double sign = (std::popcount(i & zm) & 1) ? -g.sign : g.sign;
      m(static_cast<Eigen::Index>(i ^ xm), static_cast<Eigen::Index>(i)) -= sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace tscomplex
