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

// Pulse optimizers: exhaustive tanh/tan parameter search, the
// parabolic-perturbation evolutionary search, and the two-qubit guess scan.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "superq/frames.hpp"
#include "superq/waveform.hpp"

namespace superq {

struct PerturbationSpec {
  int center = 0;               // grid index l
  int radius = 2;               // r, 2 <= r <= N/2
  double amplitude = 0.0;       // epsilon, rad/s
  double amplitude_max = 0.0;   // epsilon_max, rad/s
};

struct IndexRange {
  int first = 0;
  int last = -1;
  bool empty() const { return last < first; }
};

// u[m] -= eps (m - (l - r)) (m - (l + r)) / r^2 for m in [l - r, l + r],
// clipped to the grid and skipping locked indices. The peak change at m = l
// is +eps and the window ends are parabola roots. Returns the index span
// that may have changed. Throws InvalidRadius or InvalidParams.
IndexRange apply_parabolic_perturbation(std::span<double> u,
                                        const PerturbationSpec& spec,
                                        std::span<const int> locked = {});

std::vector<double> parabolic_perturbation(std::span<const double> u,
                                           const PerturbationSpec& spec,
                                           std::span<const int> locked = {});

struct SearchConfig {
  // Frame whose Q_n is maximized; 0 selects Q_s over n_max frames.
  int objective_frame = 1;
  int n_max = kDefaultFrameCount;
  int trials_per_radius = 10;
  int rounds = 1;
  std::uint64_t seed = 0;
  // Perturbed channels in toggle order; empty means all, in waveform order.
  std::vector<std::string> channels;
  // Per-channel epsilon_max. Missing channels get 5% of the largest RF
  // amplitude (|omega1*| samples) of the initial waveform.
  std::map<std::string, double> epsilon_max;
  // Candidates with any |u| above the channel's limit are rejected.
  std::map<std::string, double> amplitude_limit;
  // Samples that never change; empty means {0, N}.
  std::vector<int> locked;
};

struct SearchLogRecord {
  int round = 0;
  std::string channel;
  int center = 0;
  int radius = 0;
  double epsilon = 0.0;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

struct SearchResult {
  Waveform waveform;
  std::vector<double> history;           // initial value, then each accept
  std::vector<double> round_objectives;  // objective after each round
  std::vector<SearchLogRecord> log;
  std::size_t evaluations = 0;
  std::size_t skipped = 0;  // candidates that could not raise the minimum
};

// Objective value (Q_n or Q_s) of a waveform; -inf if the required frame is
// not reachable. Throws DegenerateSpectrum if frame 1 is degenerate.
double search_objective(const ControlSystem& system, const Waveform& wf,
                        const SearchConfig& cfg);

// Accept-only-improving parabolic perturbation search. Every non-locked
// grid point serves once per round as the center; at each center the
// channels are visited in turn, and for each channel the radius runs from
// N/2 down to 2 until one of the trials_per_radius random amplitudes
// improves the objective (the best one is kept). Degenerate candidates are
// rejected. Deterministic for a fixed seed.
SearchResult evolutionary_search(const Waveform& initial,
                                 const ControlSystem& system,
                                 const SearchConfig& cfg);

void write_search_log_jsonl(const std::filesystem::path& path,
                            std::span<const SearchLogRecord> log);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  std::vector<double> values() const;  // linear spacing, min..max
};

struct GridSearchSpec {
  AxisRange A;          // rad/s
  AxisRange tan_kappa;  // tan(kappa)
  AxisRange xi;
  double omega1_max = 8.0e4;
  double tau = 120e-6;
  int n_steps = 512;
  int objective_frame = 1;  // 0 selects Q_s
  int n_max = kDefaultFrameCount;
  int jobs = 1;
};

struct GridSearchResult {
  TanhTanParams best{};
  double best_value = 0.0;
  // All objective values in scan order (A outer, xi inner); NaN where the
  // point could not be evaluated.
  std::vector<double> values;
};

// Exhaustive scan; ties keep the first point in scan order. Throws
// AllDegenerate if no point can be evaluated.
GridSearchResult grid_search_tanh_tan(const GridSearchSpec& spec);

struct GuessGrid {
  std::vector<double> dw_a0;  // initial offsets of qubit A, rad/s
  std::vector<double> dw_b0;  // initial offsets of qubit B, rad/s
  std::vector<double> q1;     // row-major [i_a][j_b]; NaN where degenerate
  std::size_t best_a = 0;
  std::size_t best_b = 0;
  double best_q1 = 0.0;
  bool any_valid = false;

  double at(std::size_t i, std::size_t j) const {
    return q1[i * dw_b0.size() + j];
  }
};

// Q1 of the linear two-qubit guess for every (dw_a0, dw_b0) pair.
GuessGrid guess_grid_scan(const ControlSystem& two_qubit_system,
                          std::span<const double> dw_a0,
                          std::span<const double> dw_b0, double A,
                          double tau = 10e-3, int n_steps = 200, int jobs = 1);

void write_guess_grid_csv(const std::filesystem::path& path,
                          const GuessGrid& grid);

}  // namespace superq
