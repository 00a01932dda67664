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

#include "superq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "superq/errors.hpp"
#include "superq/parallel.hpp"
#include "superq/propagate.hpp"
#include "superq/text.hpp"

namespace superq {

Fidelity fidelity(const StateVector& psi, const StateVector& target) {
  if (psi.dim() != target.dim()) {
    throw DimensionMismatch("fidelity of states with different dimension");
  }
  const double f = std::min(
      1.0, std::abs(target.amplitudes().dot(psi.amplitudes())));
  return {f, 1.0 - f * f};
}

FidelityCurve fidelity_vs_length(const Waveform& shape,
                                 const ControlSystem& system,
                                 const StateVector& psi0,
                                 const StateVector& target,
                                 std::span<const double> taus,
                                 const std::string& pulse_id, int jobs) {
  if (psi0.dim() != target.dim() || psi0.dim() != system.dim()) {
    throw DimensionMismatch("state and system dimensions differ");
  }
  system.bind(shape);
  FidelityCurve curve;
  curve.pulse_id = pulse_id;
  curve.taus.assign(taus.begin(), taus.end());
  curve.infidelity.assign(taus.size(), 0.0);
  std::vector<double> norm_err(taus.size(), 0.0), unit_err(taus.size(), 0.0);
  parallel_for(taus.size(), jobs, [&](std::size_t i) {
    const double tau = taus[i];
    if (tau < 0.0) throw InvalidParams("negative pulse length");
    if (tau == 0.0) {
      curve.infidelity[i] = fidelity(psi0, target).infidelity;
      return;
    }
    const PropagationResult r =
        propagate_final(system, shape.with_tau(tau), psi0);
    curve.infidelity[i] = fidelity(r.state, target).infidelity;
    norm_err[i] = r.max_norm_error;
    unit_err[i] = r.max_unitarity_error;
  });
  for (std::size_t i = 0; i < taus.size(); ++i) {
    curve.max_norm_error = std::max(curve.max_norm_error, norm_err[i]);
    curve.max_unitarity_error = std::max(curve.max_unitarity_error, unit_err[i]);
  }
  return curve;
}

RobustnessGrid robustness_scan(const Waveform& wf, const ControlSystem& system,
                               const StateVector& psi0,
                               const StateVector& target,
                               std::span<const double> deltas,
                               std::span<const double> sigmas, int jobs) {
  const std::size_t k_w1 = wf.index_of(channel::kOmega1);
  const std::size_t k_dw = wf.index_of(channel::kDeltaOmega);
  system.bind(wf);
  RobustnessGrid grid;
  grid.deltas.assign(deltas.begin(), deltas.end());
  grid.sigmas.assign(sigmas.begin(), sigmas.end());
  const std::size_t cells = deltas.size() * sigmas.size();
  grid.F.assign(cells, 0.0);
  std::vector<double> norm_err(cells, 0.0), unit_err(cells, 0.0);
  parallel_for(cells, jobs, [&](std::size_t cell) {
    const std::size_t i = cell / sigmas.size();
    const std::size_t j = cell % sigmas.size();
    Waveform modified = wf;
    if (deltas[i] != 0.0) {
      for (double& v : modified.mutable_samples(k_dw)) v += deltas[i];
    }
    if (sigmas[j] != 1.0) {
      for (double& v : modified.mutable_samples(k_w1)) v *= sigmas[j];
    }
    const PropagationResult r = propagate_final(system, modified, psi0);
    grid.F[cell] = fidelity(r.state, target).F;
    norm_err[cell] = r.max_norm_error;
    unit_err[cell] = r.max_unitarity_error;
  });
  for (std::size_t c = 0; c < cells; ++c) {
    grid.max_norm_error = std::max(grid.max_norm_error, norm_err[c]);
    grid.max_unitarity_error = std::max(grid.max_unitarity_error, unit_err[c]);
  }
  return grid;
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return out;
}

}  // namespace

std::vector<double> default_robustness_deltas() {
  return linspace(-140e3, 140e3, 141);
}

std::vector<double> default_robustness_sigmas() {
  return linspace(0.0, 3.0, 151);
}

int EigenvalueTrack::descending_rank(int trace, std::size_t m) const {
  const double v = traces.at(trace).at(m);
  int rank = 1;
  for (const auto& other : traces) {
    if (other[m] > v) ++rank;
  }
  return rank;
}

EigenvalueTrack eigenvalue_tracks(const HamiltonianTrack& track,
                                  const std::optional<StateVector>& initial) {
  const FrameBasis basis = diagonalizing_frame(track);
  EigenvalueTrack out;
  const int d = track.dim();
  const std::size_t count = basis.values.size();
  out.times.resize(count);
  out.traces.assign(d, std::vector<double>(count));
  for (std::size_t m = 0; m < count; ++m) {
    out.times[m] = track.time(static_cast<int>(m));
    for (int k = 0; k < d; ++k) out.traces[k][m] = basis.values[m](k);
  }
  out.min_gap = basis.min_gap;
  if (initial) {
    if (initial->dim() != d) throw DimensionMismatch("initial state");
    double best = -1.0;
    for (int k = 0; k < d; ++k) {
      const double a =
          std::abs(basis.vectors[0].col(k).dot(initial->amplitudes()));
      if (a > best) {
        best = a;
        out.initial_trace = k;
      }
    }
  }
  return out;
}

StateVector bell_state() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return StateVector(v);
}

namespace {

// exp(-i (pi/4) sigma): a pi/2 rotation about the axis of sigma.
CMatrix half_pi_rotation(const CMatrix& sigma) {
  const double c = std::cos(std::numbers::pi / 4);
  return c * pauli::identity(2) - Complex(0.0, c) * sigma;
}

}  // namespace

StateVector diabatic_entangler(double coupling_hz, double delay) {
  if (!(coupling_hz > 0.0)) throw InvalidCoupling("J must be positive");
  if (!(delay >= 0.0)) throw InvalidParams("delay must be non-negative");
  const CMatrix ry = half_pi_rotation(pauli::y());
  const CMatrix rx = half_pi_rotation(pauli::x());
  CVector psi = StateVector::basis(4, 0).amplitudes();
  psi = pauli::kron(ry, ry) * psi;
  const double angle = std::numbers::pi * coupling_hz / 2.0 * delay;
  const double zz[4] = {1.0, -1.0, -1.0, 1.0};
  for (int i = 0; i < 4; ++i) psi(i) *= std::polar(1.0, -angle * zz[i]);
  psi = pauli::kron(pauli::identity(2), rx) * psi;
  return StateVector::normalized(psi);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_fidelity_curve_csv(const std::filesystem::path& path,
                              const FidelityCurve& curve) {
  std::ofstream out = open_out(path);
  out << "tau,infidelity\n";
  for (std::size_t i = 0; i < curve.taus.size(); ++i) {
    out << format_double(curve.taus[i]) << ','
        << format_double(curve.infidelity[i]) << '\n';
  }
}

void write_robustness_csv(const std::filesystem::path& path,
                          const RobustnessGrid& grid) {
  std::ofstream out = open_out(path);
  out << "delta,sigma,F\n";
  for (std::size_t i = 0; i < grid.deltas.size(); ++i) {
    for (std::size_t j = 0; j < grid.sigmas.size(); ++j) {
      out << format_double(grid.deltas[i]) << ','
          << format_double(grid.sigmas[j]) << ','
          << format_double(grid.at(i, j)) << '\n';
    }
  }
}

void write_eigenvalue_tracks_csv(const std::filesystem::path& path,
                                 const EigenvalueTrack& track) {
  std::ofstream out = open_out(path);
  out << 't';
  for (std::size_t k = 0; k < track.traces.size(); ++k) {
    out << ",lambda_" << k + 1;
  }
  out << '\n';
  for (std::size_t m = 0; m < track.times.size(); ++m) {
    out << format_double(track.times[m]);
    for (const auto& trace : track.traces) out << ',' << format_double(trace[m]);
    out << '\n';
  }
}

}  // namespace superq
