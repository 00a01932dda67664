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

#include "superq/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "superq/errors.hpp"

namespace superq {

namespace {

template <typename Visit>
void run_steps(const ControlSystem& system, const Waveform& wf,
               const StateVector& psi0, Visit&& visit) {
  if (psi0.dim() != system.dim()) {
    throw DimensionMismatch("initial state dimension " +
                            std::to_string(psi0.dim()) + " != system " +
                            std::to_string(system.dim()));
  }
  const std::vector<std::size_t> map = system.bind(wf);
  const double dt = wf.dt();
  std::vector<double> mid(map.size());
  CVector psi = psi0.amplitudes();
  for (int m = 0; m < wf.n_steps(); ++m) {
    for (std::size_t k = 0; k < map.size(); ++k) {
      const std::vector<double>& u = wf.samples(map[k]);
      mid[k] = 0.5 * (u[m] + u[m + 1]);
    }
    const CMatrix u = expm_hermitian(
        HermitianOperator(system.evaluate(mid)), dt);
    psi = u * psi;
    visit(m + 1, u, psi);
  }
}

}  // namespace

StateTrajectory propagate(const ControlSystem& system, const Waveform& wf,
                          const StateVector& psi0) {
  StateTrajectory traj;
  traj.times.reserve(wf.n_steps() + 1);
  traj.states.reserve(wf.n_steps() + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(psi0);
  const int d = system.dim();
  run_steps(system, wf, psi0, [&](int m, const CMatrix& u, CVector& psi) {
    const double unit_err =
        (u.adjoint() * u - CMatrix::Identity(d, d)).norm();
    traj.max_unitarity_error = std::max(traj.max_unitarity_error, unit_err);
    const double norm_err = std::abs(psi.norm() - 1.0);
    traj.max_norm_error = std::max(traj.max_norm_error, norm_err);
    traj.times.push_back(wf.time(m));
    traj.states.emplace_back(psi);
  });
  return traj;
}

PropagationResult propagate_final(const ControlSystem& system,
                                  const Waveform& wf,
                                  const StateVector& psi0) {
  CVector last = psi0.amplitudes();
  PropagationResult out{psi0};
  const int d = system.dim();
  run_steps(system, wf, psi0, [&](int, const CMatrix& u, CVector& psi) {
    out.max_unitarity_error =
        std::max(out.max_unitarity_error,
                 (u.adjoint() * u - CMatrix::Identity(d, d)).norm());
    out.max_norm_error =
        std::max(out.max_norm_error, std::abs(psi.norm() - 1.0));
    last = psi;
  });
  out.state = StateVector(last);
  return out;
}

}  // namespace superq
