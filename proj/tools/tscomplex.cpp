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

// Command-line driver. Every subcommand writes one JSON document (or CSV for
// figure data) to stdout or --output; failures print {"error": ...} and exit 1.

#include <Eigen/Core>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tscomplex/core.hpp"
#include "tscomplex/fewqubit.hpp"
#include "tscomplex/gf2.hpp"
#include "tscomplex/io.hpp"
#include "tscomplex/mbqc.hpp"
#include "tscomplex/random.hpp"
#include "tscomplex/raz.hpp"
#include "tscomplex/states.hpp"
#include "tscomplex/subgroup.hpp"
#include "tscomplex/tree.hpp"

namespace ts = tscomplex;
using ts::Json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Common {
  std::string output;
  bool timing = false;
};

Json provenance(const std::string& subcommand, Json config) {
  Json p{{"tool", "tscomplex"},
         {"version", kVersion},
         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION)},
         {"subcommand", subcommand}};
  p["config"] = std::move(config);
  return p;
}

void write_out(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + common.output + "'");
  out << text;
}

void emit(const Common& common, const Json& j) { write_out(common, j.dump(2) + "\n"); }

ts::BitMatrix load_matrix(const std::string& path) { return ts::bit_matrix_from_text(ts::read_text_file(path)); }

ts::StateVector load_state(const std::string& path) {
  return ts::state_from_json(Json::parse(ts::read_text_file(path)));
}

ts::TreeNode load_tree(const std::string& path) { return ts::parse_tree(ts::read_text_file(path)); }

Json generators_json(const std::vector<ts::PauliString>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(g.to_string());
  return out;
}

std::vector<ts::PatternStep> load_pattern(const std::string& path) {
  const Json j = Json::parse(ts::read_text_file(path));
  const Json& steps = j.is_array() ? j : j.at("steps");
  std::vector<ts::PatternStep> out;
  for (const auto& s : steps) {
    ts::PatternStep step;
    step.qubit = s.at("qubit").get<int>();
    const std::string basis = s.value("basis", "Z");
    if (basis == "Z")
      step.kind = ts::BasisKind::Z;
    else if (basis == "X")
      step.kind = ts::BasisKind::X;
    else if (basis == "XY")
      step.kind = ts::BasisKind::XY;
    else
      throw std::invalid_argument("pattern: unknown basis '" + basis + "'");
    step.angle = s.value("angle", 0.0);
    if (s.contains("sign_from")) step.sign_from = s.at("sign_from").get<std::vector<std::size_t>>();
    if (s.contains("outcome")) step.outcome = s.at("outcome").get<int>();
    out.push_back(std::move(step));
  }
  return out;
}

ts::ImmanantCoefficients load_coefficients(const std::string& path) {
  const Json j = Json::parse(ts::read_text_file(path));
  ts::ImmanantCoefficients out;
  for (const auto& e : j) {
    if (e.is_number())
      out.emplace_back(e.get<double>());
    else
      out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return out;
}

std::vector<std::string> report_row(long long key, const ts::EstimateReport& r) {
  return {std::to_string(key),         std::to_string(r.samples),     std::to_string(r.successes),
          ts::format_double(r.p_hat),  ts::format_double(r.ci_low),   ts::format_double(r.ci_high),
          ts::format_double(r.threshold_log2), std::to_string(r.seed)};
}

std::string even_range(int lo, int hi) {
  std::string s;
  for (int n = lo; n <= hi; n += 2) s += (s.empty() ? "" : ",") + std::to_string(n);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-size complexity of multiqubit states"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--output,-o", common.output, "Write the artifact here instead of stdout");
  app.add_flag("--timing", common.timing, "Add wall time to the artifact (breaks byte reproducibility)");

  std::function<Json()> run;
  std::function<std::string()> run_csv;
  bool csv = false;

  // ts-fewqubit
  auto* few = app.add_subcommand("ts-fewqubit", "SLOCC class and tree size of a three-qubit state");
  std::string few_state;
  few->add_option("--state", few_state, "State JSON file")->required();
  few->callback([&] {
    run = [&] {
      const auto c = ts::slocc_classify3(load_state(few_state));
      return Json{{"class", ts::to_string(c)}, {"ts", ts::ts_from_class3(c)}};
    };
  });

  // tree
  auto* tree = app.add_subcommand("tree", "Parse, evaluate, size or build trees");
  tree->require_subcommand(1);
  std::string tree_file;
  auto* tparse = tree->add_subcommand("parse", "Validate and print canonical text");
  tparse->add_option("--tree", tree_file, "Tree file")->required();
  tparse->callback([&] {
    run = [&] {
      const auto t = load_tree(tree_file);
      return Json{{"tree", ts::serialize_tree(t)}, {"size", t.size()}, {"qubits", ts::qubit_list(t.qubits())}};
    };
  });
  auto* teval = tree->add_subcommand("eval", "Evaluate to a state vector");
  teval->add_option("--tree", tree_file, "Tree file")->required();
  bool eval_normalize = false;
  teval->add_flag("--normalize", eval_normalize, "Normalize the result");
  teval->callback([&] {
    run = [&] {
      const auto t = load_tree(tree_file);
      const auto qs = ts::qubit_list(t.qubits());
      auto s = ts::evaluate(t, qs.empty() ? 0 : qs.back());
      return ts::state_to_json(eval_normalize ? s.normalized() : s);
    };
  });
  auto* tsize = tree->add_subcommand("size", "Leaf count");
  tsize->add_option("--tree", tree_file, "Tree file")->required();
  tsize->callback([&] {
    run = [&] {
      const auto t = load_tree(tree_file);
      return Json{{"size", t.size()}, {"prod_gates", t.prod_count()}};
    };
  });
  auto* tbuild = tree->add_subcommand("build", "Build a named family");
  std::string family;
  int build_n = 4;
  int build_k = 1;
  int build_m = 2;
  tbuild->add_option("--family", family, "ghz | dicke | cluster1d | permanent")
      ->required()
      ->check(CLI::IsMember({"ghz", "dicke", "cluster1d", "permanent"}));
  tbuild->add_option("--n", build_n, "Qubit count");
  tbuild->add_option("--k", build_k, "Dicke excitation number");
  tbuild->add_option("--m", build_m, "Permanent matrix dimension");
  tbuild->callback([&] {
    run = [&] {
      ts::TreeNode t = family == "ghz"    ? ts::build_ghz(build_n)
                       : family == "dicke" ? ts::build_dicke(build_n, build_k)
                       : family == "cluster1d"
                           ? ts::build_mps_tree(ts::cluster1d_mps(build_n))
                           : ts::permanent_state_tree(build_m);
      return Json{{"tree", ts::serialize_tree(t)}, {"size", t.size()}};
    };
  });

  // raz-estimate
  auto* raz = app.add_subcommand("raz-estimate", "Monte Carlo Raz-criterion estimates");
  std::string raz_mode = "balanced";
  std::vector<int> raz_n;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string raz_matrix;
  std::string raz_state;
  raz->add_option("--mode", raz_mode, "subgroup | state | balanced")
      ->check(CLI::IsMember({"subgroup", "state", "balanced"}));
  raz->add_option("--n", raz_n, "Qubit count (repeatable); random A for subgroup mode");
  raz->add_option("--samples", samples, "Samples per estimate")->check(CLI::PositiveNumber);
  raz->add_option("--seed", seed, "Seed");
  raz->add_option("--matrix", raz_matrix, "A matrix file (subgroup or state mode)");
  raz->add_option("--state", raz_state, "State JSON (state mode)");
  raz->add_flag("--csv", csv, "One CSV row per n");
  raz->callback([&] {
    auto estimates = [&] {
      std::vector<std::pair<int, ts::EstimateReport>> out;
      if (raz_mode == "balanced") {
        if (raz_n.empty()) throw std::invalid_argument("raz-estimate: balanced mode needs --n");
        for (int n : raz_n) out.emplace_back(n, ts::estimate_balanced_fullrank(n, samples, seed));
      } else if (raz_mode == "subgroup") {
        if (!raz_matrix.empty()) {
          const ts::SubgroupSpec spec(load_matrix(raz_matrix));
          out.emplace_back(spec.n(), ts::estimate_subgroup_invertibility(spec, samples, seed));
        } else {
          if (raz_n.empty()) throw std::invalid_argument("raz-estimate: subgroup mode needs --matrix or --n");
          for (int n : raz_n) {
            if (n < 2 || n % 2 != 0) throw std::invalid_argument("raz-estimate: n must be even and >= 2");
            ts::Rng rng(ts::derive_seed(seed, "raz-matrix", static_cast<std::uint64_t>(n)));
            const ts::SubgroupSpec spec(
                ts::BitMatrix::random(static_cast<std::size_t>(n / 2), static_cast<std::size_t>(n), rng));
            out.emplace_back(n, ts::estimate_subgroup_invertibility(spec, samples, seed));
          }
        }
      } else {
        ts::StateVector s;
        if (!raz_state.empty())
          s = load_state(raz_state);
        else if (!raz_matrix.empty())
          s = ts::subgroup_state(ts::SubgroupSpec(load_matrix(raz_matrix)));
        else
          throw std::invalid_argument("raz-estimate: state mode needs --state or --matrix");
        out.emplace_back(s.n_qubits(), ts::estimate_state_schmidt(s, samples, seed));
      }
      return out;
    };
    run_csv = [&, estimates] {
      std::ostringstream os;
      ts::write_csv_row(os, {"n", "samples", "successes", "p_hat", "ci_low", "ci_high", "threshold_log2", "seed"});
      for (const auto& [n, r] : estimates()) ts::write_csv_row(os, report_row(n, r));
      return os.str();
    };
    run = [&, estimates] {
      Json results = Json::array();
      for (const auto& [n, r] : estimates()) {
        Json row{{"n", n}};
        row.update(ts::report_to_json(r));
        results.push_back(std::move(row));
      }
      Json out = provenance("raz-estimate", Json{{"mode", raz_mode},
                                                 {"n", raz_n},
                                                 {"samples", samples},
                                                 {"seed", seed},
                                                 {"matrix", raz_matrix},
                                                 {"state", raz_state}});
      out["results"] = std::move(results);
      return out;
    };
  });

  // subgroup
  auto* sub = app.add_subcommand("subgroup", "Subgroup state, generators and witness");
  std::string sub_matrix;
  std::string emit_what = "state";
  sub->add_option("--matrix", sub_matrix, "A matrix file, rows of 0/1")->required();
  sub->add_option("--emit", emit_what, "state | generators | witness")
      ->check(CLI::IsMember({"state", "generators", "witness"}));
  sub->callback([&] {
    run = [&] {
      const ts::SubgroupSpec spec(load_matrix(sub_matrix));
      if (emit_what == "generators") return Json{{"n", spec.n()}, {"generators", generators_json(ts::derive_generators(spec))}};
      const ts::StateVector s = ts::subgroup_state(spec);
      if (emit_what == "state") return ts::state_to_json(s);
      const auto gens = ts::derive_generators(spec);
      Json out{{"n", spec.n()},
               {"generators", generators_json(gens)},
               {"stabilizes", ts::check_stabilizes(gens, s)},
               {"witness_value", ts::witness_stabilizer(gens, s)},
               {"detection_threshold", ts::detection_threshold(spec.n())}};
      if (spec.n() <= ts::kMaxDenseWitnessQubits) out["psd_gap_min_eigenvalue"] = ts::psd_gap_check(gens, s);
      return out;
    };
  });

  // witness
  auto* wit = app.add_subcommand("witness", "Evaluate W and W' on a state");
  std::string wit_matrix;
  std::string wit_state;
  std::uint64_t shots = 0;
  double alpha = 0.5;
  wit->add_option("--matrix", wit_matrix, "A matrix file defining the target")->required();
  wit->add_option("--state", wit_state, "State JSON (defaults to the target)");
  wit->add_option("--shots", shots, "Shots per generator; 0 skips sampling");
  wit->add_option("--alpha", alpha, "Margin for the shot budget");
  wit->add_option("--seed", seed, "Seed");
  wit->callback([&] {
    run = [&] {
      const ts::SubgroupSpec spec(load_matrix(wit_matrix));
      const ts::StateVector target = ts::subgroup_state(spec);
      const ts::StateVector s = wit_state.empty() ? target : load_state(wit_state);
      const auto gens = ts::derive_generators(spec);
      Json out = provenance("witness", Json{{"matrix", wit_matrix},
                                            {"state", wit_state},
                                            {"shots", shots},
                                            {"alpha", alpha},
                                            {"seed", seed}});
      out["overlap_squared"] = ts::overlap_squared(s, target);
      out["witness_exact"] = ts::witness_exact(s, target);
      out["witness_stabilizer"] = ts::witness_stabilizer(gens, s);
      out["detection_threshold"] = ts::detection_threshold(spec.n());
      out["required_shots"] = ts::required_shots(spec.n(), alpha);
      if (shots > 0) out["sampled"] = ts::reading_to_json(ts::sample_witness(gens, s, shots, seed));
      return out;
    };
  });

  // states
  auto* st = app.add_subcommand("states", "Build a state family");
  std::string st_family;
  int st_m = 2;
  int st_n = 4;
  std::uint64_t st_p = 3;
  std::uint64_t st_s = 2;
  std::uint64_t st_modulus = 15;
  std::string st_coeffs;
  int st_constant = -1;
  bool st_post = false;
  st->add_option("--family", st_family, "permanent | determinant | immanant | dj | pz | shor")
      ->required()
      ->check(CLI::IsMember({"permanent", "determinant", "immanant", "dj", "pz", "shor"}));
  st->add_option("--m", st_m, "Matrix dimension (n = m^2)");
  st->add_option("--n", st_n, "Qubit count (register size for shor)");
  st->add_option("--p", st_p, "Period for pz");
  st->add_option("--s", st_s, "Base for shor");
  st->add_option("--N", st_modulus, "Modulus for shor");
  st->add_option("--coeffs", st_coeffs, "JSON list of m! coefficients in lexicographic permutation order");
  st->add_option("--constant", st_constant, "dj: constant function value instead of a random balanced one");
  st->add_option("--seed", seed, "Seed for random balanced functions");
  st->add_flag("--postselect", st_post, "shor: first register after outcome 1");
  st->callback([&] {
    run = [&] {
      ts::StateVector s;
      if (st_family == "permanent") {
        s = ts::immanant_state(st_m, ts::permanent_coefficients(st_m));
      } else if (st_family == "determinant") {
        s = ts::immanant_state(st_m, ts::determinant_coefficients(st_m));
      } else if (st_family == "immanant") {
        if (st_coeffs.empty()) throw std::invalid_argument("states: immanant needs --coeffs");
        s = ts::immanant_state(st_m, load_coefficients(st_coeffs));
      } else if (st_family == "dj") {
        ts::Rng rng(ts::derive_seed(seed, "dj-function"));
        const auto f = st_constant >= 0 ? ts::constant_function(st_n, st_constant != 0)
                                        : ts::random_balanced_function(st_n, rng);
        s = ts::dj_state(f);
      } else if (st_family == "pz") {
        s = ts::pz_state(st_n, st_p);
      } else {
        s = ts::shor_state(st_n, st_s, st_modulus);
        if (st_post) s = ts::shor_postselect(s, st_n);
      }
      return ts::state_to_json(s);
    };
  });

  // mbqc-sim
  auto* mb = app.add_subcommand("mbqc-sim", "Simulate single-qubit measurements on a tree");
  std::string mb_tree;
  std::string mb_pattern;
  std::uint64_t runs = 1;
  std::string mb_mode = "born";
  mb->add_option("--tree", mb_tree, "Tree file")->required();
  mb->add_option("--pattern", mb_pattern, "Pattern JSON")->required();
  mb->add_option("--runs", runs, "Independent runs")->check(CLI::PositiveNumber);
  mb->add_option("--seed", seed, "Seed");
  mb->add_option("--mode", mb_mode, "born | postselect")->check(CLI::IsMember({"born", "postselect"}));
  mb->callback([&] {
    run = [&] {
      const auto t = load_tree(mb_tree);
      const auto steps = load_pattern(mb_pattern);
      Json out = provenance("mbqc-sim", Json{{"tree", mb_tree},
                                             {"pattern", mb_pattern},
                                             {"runs", runs},
                                             {"seed", seed},
                                             {"mode", mb_mode}});
      const auto mode = mb_mode == "born" ? ts::SimulationMode::Born : ts::SimulationMode::PostSelect;
      ts::Rng rng(ts::derive_seed(seed, "mbqc-run", 0));
      out["trace"] = ts::trace_to_json(ts::simulate_pattern(t, steps, rng, mode));
      if (mode == ts::SimulationMode::Born) {
        Json hist = Json::object();
        for (const auto& [k, v] : ts::outcome_histogram(t, steps, runs, seed)) hist[k] = v;
        out["histogram"] = std::move(hist);
      }
      return out;
    };
  });

  // figure-probe2
  auto* fp = app.add_subcommand("figure-probe2", "Full-rank probability of balanced +-1 matrices versus n");
  std::vector<int> fp_n;
  std::uint64_t fig_samples = 1000;
  fp->add_option("--n", fp_n, "Even qubit counts (default 2,4,...,16)");
  fp->add_option("--samples", fig_samples, "Samples per n")->check(CLI::PositiveNumber);
  fp->add_option("--seed", seed, "Seed");
  fp->callback([&] {
    csv = true;
    run_csv = [&] {
      if (fp_n.empty())
        for (int n = 2; n <= 16; n += 2) fp_n.push_back(n);
      std::ostringstream os;
      ts::write_csv_row(os, {"n", "samples", "successes", "p_hat", "ci_low", "ci_high", "threshold_log2", "seed"});
      for (int n : fp_n) ts::write_csv_row(os, report_row(n, ts::estimate_balanced_fullrank(n, fig_samples, seed)));
      return os.str();
    };
  });

  // figure-jacobsthal
  auto* fj = app.add_subcommand("figure-jacobsthal", "Invertibility probability of Jacobsthal subgroup states");
  std::vector<long long> fj_q;
  std::uint64_t fj_samples = 10000;
  fj->add_option("--q", fj_q, "Primes q = 3 mod 8 (default 3,11,19,43,59)");
  fj->add_option("--samples", fj_samples, "Samples per q")->check(CLI::PositiveNumber);
  fj->add_option("--seed", seed, "Seed");
  fj->callback([&] {
    csv = true;
    run_csv = [&] {
      if (fj_q.empty()) fj_q = {3, 11, 19, 43, 59};
      std::ostringstream os;
      ts::write_csv_row(os, {"q", "n", "samples", "successes", "p_hat", "ci_low", "ci_high", "seed", "error"});
      for (long long q : fj_q) {
        try {
          const auto spec = ts::jacobsthal_subgroup(q);
          const auto r = ts::estimate_subgroup_invertibility(spec, fj_samples, seed);
          ts::write_csv_row(os, {std::to_string(q), std::to_string(spec.n()), std::to_string(r.samples),
                                 std::to_string(r.successes), ts::format_double(r.p_hat),
                                 ts::format_double(r.ci_low), ts::format_double(r.ci_high), std::to_string(seed),
                                 ""});
        } catch (const std::invalid_argument& e) {
          ts::write_csv_row(os, {std::to_string(q), "", std::to_string(fj_samples), "", "", "", "",
                                 std::to_string(seed), e.what()});
        }
      }
      return os.str();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    if (csv) {
      if (!run_csv) throw std::invalid_argument("this subcommand has no CSV form");
      write_out(common, run_csv());
      return 0;
    }
    Json out = run();
    if (common.timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      out["wall_time_s"] = dt.count();
    }
    emit(common, out);
  } catch (const std::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
