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

// Experiment harness: fidelities, fidelity versus pulse length, robustness
// scans, eigenvalue tracks and the diabatic entangling reference.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superq/frames.hpp"
#include "superq/linalg.hpp"
#include "superq/waveform.hpp"

namespace superq {

struct Fidelity {
  double F = 0.0;           // |<target|psi>|
  double infidelity = 1.0;  // 1 - F^2
};

Fidelity fidelity(const StateVector& psi, const StateVector& target);

struct FidelityCurve {
  std::string pulse_id;
  std::string target_id;
  std::vector<double> taus;        // seconds
  std::vector<double> infidelity;  // 1 - F^2 per tau
  double max_norm_error = 0.0;
  double max_unitarity_error = 0.0;
};

// Propagates the fixed pulse shape time-rescaled to each tau (same samples,
// dt = tau/N). tau = 0 is the identity. Re-optimizing the shape per length
// is a separate, explicit step.
FidelityCurve fidelity_vs_length(const Waveform& shape,
                                 const ControlSystem& system,
                                 const StateVector& psi0,
                                 const StateVector& target,
                                 std::span<const double> taus,
                                 const std::string& pulse_id = {},
                                 int jobs = 1);

struct RobustnessGrid {
  std::vector<double> deltas;  // additive offsets on delta_omega, rad/s
  std::vector<double> sigmas;  // multiplicative factors on omega1
  std::vector<double> F;       // row-major, F[i * sigmas.size() + j]
  double max_norm_error = 0.0;
  double max_unitarity_error = 0.0;

  double at(std::size_t i_delta, std::size_t j_sigma) const {
    return F[i_delta * sigmas.size() + j_sigma];
  }
};

// F for every pulse [dw(t) + delta, sigma w1(t)]. Needs channels omega1 and
// delta_omega (ChannelMismatch otherwise).
RobustnessGrid robustness_scan(const Waveform& wf, const ControlSystem& system,
                               const StateVector& psi0,
                               const StateVector& target,
                               std::span<const double> deltas,
                               std::span<const double> sigmas, int jobs = 1);

// delta in [-140, 140] krad/s (141 points) and sigma in [0, 3] (151 points).
std::vector<double> default_robustness_deltas();
std::vector<double> default_robustness_sigmas();

struct EigenvalueTrack {
  std::vector<double> times;
  std::vector<std::vector<double>> traces;  // traces[k][m], continuity-matched
  double min_gap = 0.0;
  int initial_trace = -1;  // trace holding the initial state, if given

  // 1 = largest eigenvalue at grid point m.
  int descending_rank(int trace, std::size_t m) const;
};

// Throws DegenerateSpectrum when the levels touch.
EigenvalueTrack eigenvalue_tracks(
    const HamiltonianTrack& track,
    const std::optional<StateVector>& initial = std::nullopt);

// Ideal diabatic entangler on |00>: pi/2 about +y on both qubits, free
// evolution under (pi J/2) sz x sz for `delay`, then pi/2 about +x on
// qubit B. At delay = 1/(2J) this prepares (|00> + |11>)/sqrt(2).
StateVector diabatic_entangler(double coupling_hz, double delay);

StateVector bell_state();

void write_fidelity_curve_csv(const std::filesystem::path& path,
                              const FidelityCurve& curve);
void write_robustness_csv(const std::filesystem::path& path,
                          const RobustnessGrid& grid);
void write_eigenvalue_tracks_csv(const std::filesystem::path& path,
                                 const EigenvalueTrack& track);

}  // namespace superq
