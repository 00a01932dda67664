/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "superq/dynamics.hpp"
#include "superq/entangler.hpp"
#include "superq/errors.hpp"
#include "superq/frames.hpp"
#include "superq/scenario.hpp"
#include "superq/search.hpp"

namespace {

using namespace superq;
constexpr double kPi = std::numbers::pi;

const StateVector kUp = StateVector::basis(2, 0);
const StateVector kDown = StateVector::basis(2, 1);

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Worst normalization and step-unitarity errors over every propagation.
double g_norm_error = 0.0;
double g_unitarity_error = 0.0;

void track_errors(double norm, double unitarity) {
  g_norm_error = std::max(g_norm_error, norm);
  g_unitarity_error = std::max(g_unitarity_error, unitarity);
}

FidelityCurve curve(const Waveform& shape, std::span<const double> taus) {
  FidelityCurve c =
      fidelity_vs_length(shape, single_qubit_system(), kUp, kDown, taus);
  track_errors(c.max_norm_error, c.max_unitarity_error);
  return c;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Smooth random sweep: omega1 >= 0 vanishing at the ends, delta_omega from
// + to - with random low-order harmonics.
Waveform random_sweep(std::mt19937_64& rng, double tau, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double w = 6e4 + 3e4 * u(rng), d = 2e5 + 1e5 * u(rng);
  double a[3], b[3];
  for (int k = 0; k < 3; ++k) a[k] = 0.15 * u(rng), b[k] = 0.15 * u(rng);
  std::vector<double> w1(n + 1), dw(n + 1);
  for (int m = 0; m <= n; ++m) {
    const double x = kPi * m / n;
    double ws = std::sin(x), ds = std::cos(x);
    for (int k = 0; k < 3; ++k) {
      ws += a[k] * std::sin((k + 2) * x) * std::sin(x);
      ds += b[k] * std::sin((k + 1) * x);
    }
    w1[m] = w * ws;
    dw[m] = d * ds;
  }
  return Waveform(tau, {{"omega1", w1}, {"delta_omega", dw}});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Outcome criterion_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  const ControlSystem sys = single_qubit_system();
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const Waveform wf = random_sweep(rng, 80e-6, 256);
    std::uniform_real_distribution<double> ua(0.2, 5.0);
    const double alpha = ua(rng);
    std::vector<Channel> big = wf.channels();
    for (Channel& c : big) {
      for (double& v : c.samples) v *= alpha;
    }
    try {
      const FrameStep f0 = next_frame(sample_hamiltonian(sys, wf));
      const FrameStep fa =
          next_frame(sample_hamiltonian(sys, Waveform(wf.tau(), big)));
      const FrameStep ft =
          next_frame(sample_hamiltonian(sys, wf.with_tau(wf.tau() / alpha)));
      const QCurve q0 = q_curve(f0.diagonal, f0.inertial);
      const QCurve qa = q_curve(fa.diagonal, fa.inertial);
      const QCurve qt = q_curve(ft.diagonal, ft.inertial);
      for (std::size_t m = 1; m + 1 < q0.values.size(); ++m) {
        if (!std::isfinite(q0.values[m])) continue;
        worst = std::max(worst, std::abs(qa.values[m] / (alpha * q0.values[m]) - 1));
        worst = std::max(worst, std::abs(qt.values[m] * alpha / q0.values[m] - 1));
      }
      ++done;
    } catch (const DegenerateSpectrum&) {
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6 && secs < 30.0,
          "100 waveforms, max relative error " + fmt("%.2e", worst) + " in " +
              fmt("%.1f", secs) + " s"};
}

Outcome criterion_hard_pulse() {
  const double w1 = 8e4;
  const Waveform shape = hard_pulse(w1, 1.0, 8);
  std::vector<double> taus{kPi / w1};
  for (int i = 0; i <= 800; ++i) taus.push_back(i * 0.1e-6);
  const FidelityCurve c = curve(shape, taus);
  double worst = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double s = std::sin(w1 * taus[i] / 2);
    worst = std::max(worst, std::abs(c.infidelity[i] - (1 - s * s)));
  }
  const bool ok = c.infidelity[0] < 1e-10 && worst < 1e-8;
  return {ok, "infidelity at " + fmt("%.4f", taus[0] * 1e6) + " us = " +
                  fmt("%.1e", c.infidelity[0]) + ", max deviation from Rabi " +
                  fmt("%.1e", worst)};
}

Outcome criterion_frames() {
  const auto t0 = std::chrono::steady_clock::now();
  const ControlSystem sys = single_qubit_system();
  const FrameSequence qs = superadiabatic_q(
      sample_hamiltonian(sys, tanh_tan(table_qs120_pulse(), 120e-6, 512)), 10);
  const FrameSequence q1 = superadiabatic_q(
      sample_hamiltonian(sys, tanh_tan(table_q1_pulse(), 120e-6, 512)), 10);
  auto rises_then_falls = [](const FrameSequence& f) {
    const std::vector<double> q = f.q_values();
    for (int n = 1; n < f.s; ++n) {
      if (!(q[n - 1] < q[n])) return false;
    }
    return f.s < static_cast<int>(q.size()) && q[f.s] < q[f.s - 1] &&
           q.back() < q[f.s - 1] && f.s > 1;
  };
  const bool ok = qs.s >= 4 && qs.s <= 6 && q1.s >= 2 && q1.s <= 3 &&
                  rises_then_falls(qs) && rises_then_falls(q1) &&
                  seconds_since(t0) < 60.0;
  return {ok, "s = " + std::to_string(qs.s) + " (Qs 120 us pulse, Q_s = " +
                  fmt("%.1f", qs.q_s) + "), s = " + std::to_string(q1.s) +
                  " (Q1 pulse, Q_s = " + fmt("%.2f", q1.q_s) + ")"};
}

std::vector<double> micros(double from, double to, double step) {
  std::vector<double> t;
  for (double x = from; x <= to + 1e-9; x += step) t.push_back(x * 1e-6);
  return t;
}

Outcome criterion_superadiabatic_advantage() {
  const std::vector<double> taus = micros(57, 250, 1);
  const FidelityCurve qs = curve(tanh_tan(table_qs120_pulse(), 1.0, 512), taus);
  const FidelityCurve q1 = curve(tanh_tan(table_q1_pulse(), 1.0, 512), taus);
  const std::size_t at120 = 120 - 57;
  const double ratio = q1.infidelity[at120] / qs.infidelity[at120];
  std::size_t wins = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    wins += qs.infidelity[i] < q1.infidelity[i] ? 1 : 0;
  }
  const bool ok = ratio >= 10.0 && 2 * wins > taus.size();
  return {ok, "ratio at 120 us = " + fmt("%.0f", ratio) + ", Qs lower at " +
                  std::to_string(wins) + "/" + std::to_string(taus.size()) +
                  " lengths in (56, 250] us"};
}

Outcome criterion_crossover() {
  const std::vector<double> taus = micros(50, 150, 0.5);
  const FidelityCurve s50 = curve(tanh_tan(table_qs50_pulse(), 1.0, 512), taus);
  const FidelityCurve s120 = curve(tanh_tan(table_qs120_pulse(), 1.0, 512), taus);
  std::size_t cross = taus.size();
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (s50.infidelity[i - 1] < s120.infidelity[i - 1] &&
        s50.infidelity[i] >= s120.infidelity[i]) {
      cross = i;
      break;
    }
  }
  if (cross == taus.size()) return {false, "no crossover in [50, 150] us"};
  const double a = s50.infidelity[cross - 1] - s120.infidelity[cross - 1];
  const double b = s50.infidelity[cross] - s120.infidelity[cross];
  const double t_cross =
      taus[cross - 1] + (taus[cross] - taus[cross - 1]) * a / (a - b);
  std::size_t below = 0, above = 0;
  for (std::size_t i = 0; i < cross; ++i) {
    below += s50.infidelity[i] < s120.infidelity[i] ? 1 : 0;
  }
  for (std::size_t i = cross; i < taus.size(); ++i) {
    above += s50.infidelity[i] > s120.infidelity[i] ? 1 : 0;
  }
  const std::size_t n_above = taus.size() - cross;
  const bool ok = std::abs(t_cross - 77e-6) <= 10e-6 && 2 * below > cross &&
                  2 * above > n_above;
  return {ok, "crossover at " + fmt("%.1f", t_cross * 1e6) + " us; Qs50 wins " +
                  std::to_string(below) + "/" + std::to_string(cross) +
                  " below, loses " + std::to_string(above) + "/" +
                  std::to_string(n_above) + " above"};
}

Outcome criterion_robustness() {
  const ControlSystem sys = single_qubit_system();
  const std::vector<double> sigmas = default_robustness_sigmas();
  const std::vector<double> deltas{0.0};
  const RobustnessGrid qs = robustness_scan(
      tanh_tan(table_qs120_pulse(), 120e-6, 512), sys, kUp, kDown, deltas, sigmas);
  const RobustnessGrid q1 = robustness_scan(
      tanh_tan(table_q1_pulse(), 120e-6, 512), sys, kUp, kDown, deltas, sigmas);
  track_errors(qs.max_norm_error, qs.max_unitarity_error);
  track_errors(q1.max_norm_error, q1.max_unitarity_error);
  std::vector<double> losing;
  double worst_inf = 0.0;
  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    if (sigmas[j] > 0.8 && qs.at(0, j) < q1.at(0, j)) losing.push_back(sigmas[j]);
    if (sigmas[j] > 0.9) {
      worst_inf = std::max(worst_inf, 1.0 - qs.at(0, j) * qs.at(0, j));
    }
  }
  std::string detail = "Qs below Q1 at " + std::to_string(losing.size()) +
                       " sigma points > 0.8";
  if (!losing.empty()) {
    detail += " (";
    for (std::size_t i = 0; i < losing.size(); ++i) {
      detail += (i ? ", " : "") + fmt("%.2f", losing[i]);
    }
    detail += ")";
  }
  detail += "; max Qs infidelity for sigma > 0.9 = " + fmt("%.2e", worst_inf);
  return {losing.empty() && worst_inf <= 0.02, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_search() {
  bool monotone = true;
  const Waveform guess = inversion_guess(8e4, 1.5e5, -1.5e5, 50e-6, 32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchConfig cfg;
    cfg.seed = seed;
    const SearchResult r = evolutionary_search(guess, single_qubit_system(), cfg);
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      monotone = monotone && r.history[i] >= r.history[i - 1];
    }
  }
  const auto dir =
      std::filesystem::temp_directory_path() / "superq_acceptance_numerical";
  std::filesystem::remove_all(dir);
  RunOptions opt;
  opt.output_dir = dir;
  run_scenario(parse_config({{"scenario", "numerical-inversion"}}), opt);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  const double numerical = manifest["results"]["infidelity_at_tau"]["numerical"];
  const double reference = manifest["results"]["infidelity_at_tau"]["qs50"];
  std::filesystem::remove_all(dir);
  const bool ok = monotone && numerical < reference;
  return {ok, std::string("history monotone for 10 seeds: ") +
                  (monotone ? "yes" : "no") + "; infidelity at 50 us: numerical " +
                  fmt("%.3e", numerical) + " vs Qs50 tanh/tan " +
                  fmt("%.3e", reference)};
}

Outcome criterion_two_qubit_analytics() {
  const TwoQubitBoundary b{64e3, 57e3, 78.5e3, 209.4};
  const ControlSystem sys = two_qubit_system(b.coupling_hz);
  const double start[4] = {0.0, b.alpha, 0.0, -b.beta};
  const double end[4] = {-b.amplitude, 0.0, b.amplitude, 0.0};
  const CMatrix h0 = sys.evaluate(start);
  const CMatrix h1 = sys.evaluate(end);
  const CVector ket00 = StateVector::basis(4, 0).amplitudes();
  const CVector bell = bell_state().amplitudes();
  const double pj = kPi * b.coupling_hz / 2;
  const double lam0 = h0(0, 0).real();
  const double r0 = (h0 * ket00 - lam0 * ket00).norm() / h0.norm();
  const double r1 = (h1 * bell - pj * bell).norm() / h1.norm();
  const EigenstateCheck c0 = initial_state_check(b);
  const EigenstateCheck c1 = target_state_check(b);
  const bool ok = r0 <= 1e-15 && r1 <= 1e-15 && c0.rank == 2 && c1.rank == 2 &&
                  std::abs(c1.eigenvalue - pj) <= 1e-9 * h1.norm();
  return {ok, "|00> residual " + fmt("%.1e", r0) + ", rank " +
                  std::to_string(c0.rank) + "; Bell residual " + fmt("%.1e", r1) +
                  ", eigenvalue " + fmt("%.6f", c1.eigenvalue) + " (pi J/2 = " +
                  fmt("%.6f", pj) + "), rank " + std::to_string(c1.rank)};
}

Outcome criterion_entangler() {
  const auto t0 = std::chrono::steady_clock::now();
  EntanglerSpec spec;
  spec.n_steps = 200;
  spec.search.rounds = 3;
  spec.search.seed = 0;
  spec.taus = {2e-3, 5e-3, 10e-3, 20e-3};
  const EntanglerResult r = run_entangler(spec);
  const double seconds = seconds_since(t0);
  track_errors(r.guess_curve.max_norm_error, r.guess_curve.max_unitarity_error);
  track_errors(r.optimized_curve.max_norm_error,
               r.optimized_curve.max_unitarity_error);
  const std::vector<double>& rounds = r.search.round_objectives;
  const double pj = kPi * spec.boundary.coupling_hz;
  const double J = spec.boundary.coupling_hz;
  const Fidelity dia = fidelity(diabatic_entangler(J, 1 / (2 * J)), bell_state());
  const bool ok = rounds.size() == 3 && rounds[0] > r.guess_q1 &&
                  rounds[2] > rounds[0] && r.tracks.min_gap > 0.1 * pj &&
                  dia.F * dia.F >= 0.999 && seconds < 600.0;
  return {ok, "Q1 guess " + fmt("%.2f", r.guess_q1) + " -> round 1 " +
                  fmt("%.2f", rounds.at(0)) + " -> round 3 " +
                  fmt("%.2f", rounds.at(2)) + "; min gap " +
                  fmt("%.3f", r.tracks.min_gap / pj) + " pi J; diabatic F^2 " +
                  fmt("%.6f", dia.F * dia.F) + "; " + fmt("%.0f", seconds) + " s"};
}

Outcome criterion_grid_convergence() {
  const ControlSystem sys = single_qubit_system();
  const std::vector<TanhTanParams> pulses = {
      table_q1_pulse(), table_qs120_pulse(), table_qs50_pulse(),
      TanhTanParams::from_tan_kappa(2e5, 3.0, 8.0, 8e4),
      TanhTanParams::from_tan_kappa(1e6, 20.0, 30.0, 8e4)};
  double worst = 0.0;
  for (const TanhTanParams& p : pulses) {
    const auto q1 = [&](int n) {
      return superadiabatic_q(sample_hamiltonian(sys, tanh_tan(p, 120e-6, n)), 1)
          .frames[0].q.q;
    };
    const double a = q1(512), b = q1(1024);
    worst = std::max(worst, std::abs(b - a) / a);
  }
  return {worst < 1e-3, "5 pulses, N 512 -> 1024, max relative change " +
                            fmt("%.2e", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 2 is evaluated last over every propagation made by the others.
  const std::vector<Criterion> criteria = {
      {1, "scaling laws", criterion_scaling},
      {3, "hard-pulse oracle", criterion_hard_pulse},
      {4, "frame hierarchy shape", criterion_frames},
      {5, "superadiabatic advantage", criterion_superadiabatic_advantage},
      {6, "crossover", criterion_crossover},
      {7, "robustness", criterion_robustness},
      {8, "evolutionary search", criterion_search},
      {9, "two-qubit analytics", criterion_two_qubit_analytics},
      {10, "entangler run", criterion_entangler},
      {11, "grid convergence", criterion_grid_convergence},
  };
  std::vector<std::pair<int, std::string>> lines;
  int failures = 0;
  auto report = [&](int id, const char* name, const Outcome& o, double secs) {
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %-26s %s", id, name,
                  o.pass ? "PASS" : "FAIL");
    lines.emplace_back(id, std::string(head) + "  " + o.detail + " [" +
                               fmt("%.1f", secs) + " s]");
    failures += o.pass ? 0 : 1;
    std::printf("%s\n", lines.back().second.c_str());
    std::fflush(stdout);
  };
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    report(c.id, c.name, o, seconds_since(t0));
  }
  const Outcome unit{g_norm_error < 1e-10 && g_unitarity_error < 1e-10,
                     "max norm error " + fmt("%.1e", g_norm_error) +
                         ", max step unitarity error " +
                         fmt("%.1e", g_unitarity_error)};
  report(2, "unitarity/normalization", unit, 0.0);

  std::sort(lines.begin(), lines.end());
  std::printf("\nsummary\n");
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria failed\n", failures, lines.size());
  return failures == 0 ? 0 : 1;
}
