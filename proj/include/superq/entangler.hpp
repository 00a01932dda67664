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

// Two coupled qubits driven by independent RF channels:
//
//   H(t) = (pi J/2) sz.sz + (w1A/2) sx.1 + (dwA/2) sz.1
//                         + (w1B/2) 1.sx + (dwB/2) 1.sz
//
// The adiabatic gate starts in |00>, the second-highest eigenstate of H(0)
// with controls (0, alpha, 0, -beta), and ends in the Bell state, the
// second-highest eigenstate of H(tau) with controls (-A, 0, A, 0).

#pragma once

#include <vector>

#include "superq/dynamics.hpp"
#include "superq/search.hpp"
#include "superq/waveform.hpp"

namespace superq {

struct TwoQubitBoundary {
  double alpha = 64e3;         // dw_A(0), rad/s
  double beta = 57e3;          // -dw_B(0), rad/s
  double amplitude = 78.5e3;   // |w1| at the end of the pulse, rad/s
  double coupling_hz = 209.4;  // J
};

// Throws InvalidCoupling unless J > 0.
ControlSystem two_qubit_system(double coupling_hz);

struct EigenstateCheck {
  double overlap = 0.0;     // |<v|psi>|^2 for the best-matching eigenvector
  double eigenvalue = 0.0;  // rad/s
  int rank = 0;             // 1 = largest eigenvalue
};

// |00> against H(0). Throws OrderingViolation if the rank is not 2 or the
// spectrum of H(0) is degenerate.
EigenstateCheck initial_state_check(const TwoQubitBoundary& b);

// Bell state against H(tau). Throws OrderingViolation unless the Bell state
// is an eigenvector (overlap >= 1 - 1e-10) of rank 2 in a non-degenerate
// spectrum.
EigenstateCheck target_state_check(const TwoQubitBoundary& b);

struct EntanglerSpec {
  TwoQubitBoundary boundary;
  double search_tau = 10e-3;  // Q1 scales linearly with tau
  int n_steps = 200;
  std::vector<double> taus;   // lengths for the fidelity curves
  SearchConfig search;        // objective_frame is forced to 1
  int jobs = 1;
};

struct EntanglerResult {
  Waveform guess;
  SearchResult search;  // search.waveform is the optimized pulse
  double guess_q1 = 0.0;
  double optimized_q1 = 0.0;
  FidelityCurve guess_curve;
  FidelityCurve optimized_curve;
  EigenvalueTrack tracks;  // of the optimized pulse, initial state |00>
};

EntanglerResult run_entangler(const EntanglerSpec& spec);

}  // namespace superq
