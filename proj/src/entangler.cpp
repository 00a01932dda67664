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

#include "superq/entangler.hpp"

#include <cmath>
#include <numbers>

#include "superq/errors.hpp"

namespace superq {

namespace {

EigenstateCheck check_eigenstate(const ControlSystem& system,
                                 const std::vector<double>& controls,
                                 const StateVector& psi, const char* what) {
  const EigenSystem es = eigh_trusted(system.evaluate(controls));
  const RVector& v = es.values;
  const auto d = v.size();
  const double tol = kGapTolRel * (v(d - 1) - v(0));
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    if (v(i + 1) - v(i) <= tol) {
      throw OrderingViolation(std::string(what) + ": degenerate spectrum");
    }
  }
  EigenstateCheck out;
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double o = std::norm(es.vectors.col(i).dot(psi.amplitudes()));
    if (o > out.overlap) {
      out.overlap = o;
      best = i;
    }
  }
  out.eigenvalue = v(best);
  out.rank = static_cast<int>(d - best);
  return out;
}

}  // namespace

ControlSystem two_qubit_system(double coupling_hz) {
  if (!(coupling_hz > 0.0) || !std::isfinite(coupling_hz)) {
    throw InvalidCoupling("J must be positive and finite");
  }
  using namespace pauli;
  const double zz = std::numbers::pi * coupling_hz / 2.0;
  return ControlSystem(
      HermitianOperator(zz * kron(z(), z())),
      {{std::string(channel::kOmega1A),
        HermitianOperator(0.5 * kron(x(), identity(2)))},
       {std::string(channel::kDeltaOmegaA),
        HermitianOperator(0.5 * kron(z(), identity(2)))},
       {std::string(channel::kOmega1B),
        HermitianOperator(0.5 * kron(identity(2), x()))},
       {std::string(channel::kDeltaOmegaB),
        HermitianOperator(0.5 * kron(identity(2), z()))}});
}

EigenstateCheck initial_state_check(const TwoQubitBoundary& b) {
  const ControlSystem system = two_qubit_system(b.coupling_hz);
  const EigenstateCheck c = check_eigenstate(
      system, {0.0, b.alpha, 0.0, -b.beta}, StateVector::basis(4, 0), "H(0)");
  if (c.rank != 2) {
    throw OrderingViolation("|00> has descending rank " +
                            std::to_string(c.rank) + " in H(0), expected 2");
  }
  return c;
}

EigenstateCheck target_state_check(const TwoQubitBoundary& b) {
  const ControlSystem system = two_qubit_system(b.coupling_hz);
  const EigenstateCheck c = check_eigenstate(
      system, {-b.amplitude, 0.0, b.amplitude, 0.0}, bell_state(), "H(tau)");
  if (c.overlap < 1.0 - 1e-10) {
    throw OrderingViolation("Bell state is not an eigenvector of H(tau)");
  }
  if (c.rank != 2) {
    throw OrderingViolation("Bell state has descending rank " +
                            std::to_string(c.rank) + " in H(tau), expected 2");
  }
  return c;
}

EntanglerResult run_entangler(const EntanglerSpec& spec) {
  const TwoQubitBoundary& b = spec.boundary;
  initial_state_check(b);
  target_state_check(b);
  const ControlSystem system = two_qubit_system(b.coupling_hz);
  const StateVector psi0 = StateVector::basis(4, 0);
  const StateVector bell = bell_state();

  SearchConfig cfg = spec.search;
  cfg.objective_frame = 1;

  Waveform guess =
      two_qubit_guess(b.alpha, b.beta, b.amplitude, spec.search_tau,
                      spec.n_steps);
  EntanglerResult out{guess, {guess, {}, {}, {}, 0, 0}, 0.0, 0.0, {}, {}, {}};
  out.guess_q1 = search_objective(system, guess, cfg);
  out.search = evolutionary_search(guess, system, cfg);
  out.optimized_q1 = out.search.history.back();
  out.guess_curve = fidelity_vs_length(guess, system, psi0, bell, spec.taus,
                                       "guess", spec.jobs);
  out.optimized_curve = fidelity_vs_length(
      out.search.waveform, system, psi0, bell, spec.taus, "optimized",
      spec.jobs);
  out.optimized_curve.target_id = out.guess_curve.target_id = "bell";
  out.tracks = eigenvalue_tracks(sample_hamiltonian(system, out.search.waveform),
                                 psi0);
  return out;
}

}  // namespace superq
