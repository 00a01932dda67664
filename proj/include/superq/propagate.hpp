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

#pragma once

#include <vector>

#include "superq/linalg.hpp"
#include "superq/waveform.hpp"

namespace superq {

struct StateTrajectory {
  std::vector<double> times;          // N+1 grid times
  std::vector<StateVector> states;    // psi(t_m)
  double max_norm_error = 0.0;        // max_m | ||psi(t_m)|| - 1 |
  double max_unitarity_error = 0.0;   // max_m ||U_m^dag U_m - I||_F

  const StateVector& final_state() const { return states.back(); }
};

// Piecewise-constant propagation: psi(t_{m+1}) = exp(-i H(t_m + dt/2) dt)
// psi(t_m), with the controls at the interval midpoint taken as the mean
// of the two neighbouring samples. Throws DimensionMismatch or
// ChannelMismatch.
StateTrajectory propagate(const ControlSystem& system, const Waveform& wf,
                          const StateVector& psi0);

struct PropagationResult {
  StateVector state;
  double max_norm_error = 0.0;
  double max_unitarity_error = 0.0;
};

// Final state only; skips storing the trajectory.
PropagationResult propagate_final(const ControlSystem& system, const Waveform& wf,
                            const StateVector& psi0);

}  // namespace superq
