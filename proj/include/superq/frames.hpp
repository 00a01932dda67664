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

// Iterated superadiabatic frames of a sampled Hamiltonian.
//
// Frame n diagonalizes H_{n-1}(t) with a continuity-tracked eigenvector
// matrix W_n(t) and yields H_n = D_n + C_n, where D_n = W_n^dag H_{n-1} W_n
// is diagonal and C_n = -i W_n^dag dW_n/dt is the inertial term. The frame
// quality is Q_n(t) = ||D_n(t)||_F / ||C_n(t)||_F and Q_n = min_t Q_n(t)
// over interior grid points. Q_s = max_n Q_n, attained first at frame s.
//
// W_n is expressed in the eigenbasis of H_{n-1}(0), i.e. it differs from
// sum_k |l_k(t)><l_k(0)| by the constant unitary W_n(0). Norms and Bloch
// angles are invariant under that change of basis.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "superq/linalg.hpp"
#include "superq/propagate.hpp"
#include "superq/waveform.hpp"

namespace superq {

// Eigenvalue gaps at or below kGapTolRel times the largest spectral spread
// on the track count as degenerate.
inline constexpr double kGapTolRel = 1e-9;
// Q_n(t) is +inf where ||C|| < kCFloorRel ||D||.
inline constexpr double kCFloorRel = 1e-12;
inline constexpr int kDefaultFrameCount = 10;

struct HamiltonianTrack {
  double tau = 0.0;
  std::vector<HermitianOperator> samples;  // H(t_m), m = 0..N

  int n_steps() const { return static_cast<int>(samples.size()) - 1; }
  double dt() const { return tau / n_steps(); }
  double time(int m) const { return tau * m / n_steps(); }
  int dim() const { return samples.front().dim(); }
};

// H(t_m) = H0 + sum_k u_k(t_m) H_k. Throws ChannelMismatch.
HamiltonianTrack sample_hamiltonian(const ControlSystem& system,
                                    const Waveform& wf);

struct FrameBasis {
  std::vector<CMatrix> vectors;  // W(t_m), columns tracked by continuity
  std::vector<RVector> values;   // eigenvalues in the same column order
  double min_gap = 0.0;          // smallest adjacent eigenvalue gap
};

// Throws DegenerateSpectrum at the first grid point whose gap is at or
// below the tolerance.
FrameBasis diagonalizing_frame(const HamiltonianTrack& track);

struct FrameStep {
  FrameBasis basis;
  std::vector<CMatrix> diagonal;  // D(t_m)
  std::vector<CMatrix> inertial;  // C(t_m), Hermitized
  HamiltonianTrack next;          // D + C
};

FrameStep next_frame(const HamiltonianTrack& track);

struct QCurve {
  std::vector<double> values;  // Q(t_m) for all m; endpoints excluded from q
  double q = 0.0;              // min over interior points, +inf if none finite
  std::size_t argmin = 0;      // grid index of the minimum (0 if q = +inf)
};

QCurve q_curve(std::span<const CMatrix> diagonal,
               std::span<const CMatrix> inertial);

struct Frame {
  int index = 0;  // 1-based
  FrameBasis basis;
  std::vector<CMatrix> diagonal;
  std::vector<CMatrix> inertial;
  HamiltonianTrack hamiltonian;  // H_n = D_n + C_n
  QCurve q;
};

struct FrameSequence {
  double tau = 0.0;
  std::vector<Frame> frames;
  double q_s = 0.0;
  int s = 0;                  // 1-based frame index of Q_s
  bool truncated = false;     // a higher frame hit a degenerate spectrum
  std::string truncation_reason;

  std::vector<double> q_values() const;
  const Frame& frame(int n) const;
};

// Builds up to n_max frames. DegenerateSpectrum in frame 1 propagates; in a
// higher frame it stops the iteration and sets `truncated`.
FrameSequence superadiabatic_q(const HamiltonianTrack& track,
                               int n_max = kDefaultFrameCount);

// alpha_n(t_m) in radians for each requested frame (one row per frame):
// the angle between the Bloch vectors of H_n(t_m) and of the state carried
// into frame n. Qubits only (UnsupportedDimension otherwise); ZeroVector
// when H_n(t_m) has no traceless part.
std::vector<std::vector<double>> deviation_angles(
    const FrameSequence& seq, const StateTrajectory& traj,
    std::span<const int> frames);

// --- fast objective path ----------------------------------------------------

// Q_n for n = 1..n_frames without keeping the frame data. `first_frame_eigs`
// must hold eigh() of every H(t_m) sample; callers that re-evaluate after local
// changes keep it cached and refresh only the changed entries.
struct QProfile {
  std::vector<double> q;            // Q_1..Q_k, k <= n_frames
  std::vector<std::size_t> argmin;  // grid index of each minimum
  bool truncated = false;
};

QProfile q_profile(std::span<const EigenSystem> first_frame_eigs, double dt,
                   int n_frames);

// --- export -----------------------------------------------------------------

// One CSV per frame with columns t,Q_n(t) named frame_<n>.csv, plus
// summary.json {q, q_s, s, truncated}. Returns the written paths.
std::vector<std::filesystem::path> write_frame_sequence(
    const FrameSequence& seq, const std::filesystem::path& dir,
    const std::string& stem);

}  // namespace superq
