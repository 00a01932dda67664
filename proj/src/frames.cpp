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

#include "superq/frames.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "superq/errors.hpp"
#include "superq/text.hpp"

namespace superq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Returns the smallest adjacent gap; throws DegenerateSpectrum when any gap
// is at or below the tolerance.
double check_gaps(std::span<const EigenSystem> raw) {
  double spread = 0.0;
  for (const EigenSystem& es : raw) {
    const auto n = es.values.size();
    spread = std::max(spread, es.values(n - 1) - es.values(0));
  }
  const double tol = kGapTolRel * spread;
  double min_gap = kInf;
  for (std::size_t m = 0; m < raw.size(); ++m) {
    const RVector& v = raw[m].values;
    for (Eigen::Index i = 0; i + 1 < v.size(); ++i) {
      const double gap = v(i + 1) - v(i);
      if (gap <= tol) throw DegenerateSpectrum(m, gap);
      min_gap = std::min(min_gap, gap);
    }
  }
  return min_gap;
}

// Orders eigenvector columns by maximal overlap with the previous grid
// point and fixes each column's phase so that overlap is real positive.
void track(std::span<const EigenSystem> raw, FrameBasis& out) {
  const std::size_t count = raw.size();
  out.vectors.resize(count);
  out.values.resize(count);
  out.vectors[0] = raw[0].vectors;
  out.values[0] = raw[0].values;
  const int d = static_cast<int>(raw[0].values.size());
  for (std::size_t m = 1; m < count; ++m) {
    const CMatrix& prev = out.vectors[m - 1];
    const CMatrix& fresh = raw[m].vectors;
    const CMatrix overlap = prev.adjoint() * fresh;
    std::array<int, kMaxDim> assign{};
    std::array<bool, kMaxDim> prev_used{}, fresh_used{};
    for (int k = 0; k < d; ++k) {
      double best = -1.0;
      int bi = 0, bj = 0;
      for (int i = 0; i < d; ++i) {
        if (prev_used[i]) continue;
        for (int j = 0; j < d; ++j) {
          if (fresh_used[j]) continue;
          const double a = std::abs(overlap(i, j));
          if (a > best) {
            best = a;
            bi = i;
            bj = j;
          }
        }
      }
      prev_used[bi] = true;
      fresh_used[bj] = true;
      assign[bi] = bj;
    }
    CMatrix& w = out.vectors[m];
    RVector& lam = out.values[m];
    w.resize(d, d);
    lam.resize(d);
    for (int i = 0; i < d; ++i) {
      const int j = assign[i];
      const Complex p = overlap(i, j);
      const double mag = std::abs(p);
      const Complex phase = mag > 0.0 ? std::conj(p) / mag : Complex(1.0);
      w.col(i) = fresh.col(j) * phase;
      lam(i) = raw[m].values(j);
    }
  }
}

// C = -i W^dag dW/dt, central differences inside, one-sided second order
// at the ends, then Hermitized.
void inertial_terms(const std::vector<CMatrix>& w, double dt,
                    std::vector<CMatrix>& c) {
  const std::size_t count = w.size();
  const std::size_t last = count - 1;
  c.resize(count);
  const double inv = 1.0 / (2.0 * dt);
  const Complex minus_i(0.0, -1.0);
  for (std::size_t m = 0; m < count; ++m) {
    CMatrix deriv;
    if (m == 0) {
      deriv = (-3.0 * w[0] + 4.0 * w[1] - w[2]) * inv;
    } else if (m == last) {
      deriv = (3.0 * w[last] - 4.0 * w[last - 1] + w[last - 2]) * inv;
    } else {
      deriv = (w[m + 1] - w[m - 1]) * inv;
    }
    const CMatrix raw = minus_i * (w[m].adjoint() * deriv);
    c[m] = 0.5 * (raw + raw.adjoint());
  }
}

CMatrix diagonal_of(const RVector& values) {
  const auto d = values.size();
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) out(i, i) = values(i);
  return out;
}

std::vector<EigenSystem> eigensystems(std::span<const CMatrix> samples) {
  std::vector<EigenSystem> raw;
  raw.reserve(samples.size());
  for (const CMatrix& h : samples) raw.push_back(eigh_trusted(h));
  return raw;
}

void check_track(const HamiltonianTrack& track) {
  if (track.samples.size() < 3) {
    throw InvalidParams("Hamiltonian track needs N >= 2 intervals");
  }
  if (!(track.tau > 0.0)) throw InvalidParams("track tau must be positive");
  const int d = track.samples.front().dim();
  for (const HermitianOperator& h : track.samples) {
    if (h.dim() != d) throw DimensionMismatch("track samples differ in size");
  }
}

std::vector<CMatrix> matrices(const HamiltonianTrack& track) {
  std::vector<CMatrix> out;
  out.reserve(track.samples.size());
  for (const HermitianOperator& h : track.samples) out.push_back(h.matrix());
  return out;
}

// Single frame step from raw eigensystems of `samples`. Fills basis, D, C
// and the next-frame samples.
void frame_step(std::span<const EigenSystem> raw, double dt, FrameBasis& basis,
                std::vector<CMatrix>& diagonal, std::vector<CMatrix>& inertial,
                std::vector<CMatrix>& next) {
  basis.min_gap = check_gaps(raw);
  track(raw, basis);
  inertial_terms(basis.vectors, dt, inertial);
  const std::size_t count = raw.size();
  diagonal.resize(count);
  next.resize(count);
  for (std::size_t m = 0; m < count; ++m) {
    diagonal[m] = diagonal_of(basis.values[m]);
    next[m] = diagonal[m] + inertial[m];
  }
}

}  // namespace

HamiltonianTrack sample_hamiltonian(const ControlSystem& system,
                                    const Waveform& wf) {
  const std::vector<std::size_t> map = system.bind(wf);
  HamiltonianTrack track;
  track.tau = wf.tau();
  track.samples.reserve(wf.n_steps() + 1);
  std::vector<double> values(map.size());
  for (int m = 0; m <= wf.n_steps(); ++m) {
    for (std::size_t k = 0; k < map.size(); ++k) {
      values[k] = wf.samples(map[k])[m];
    }
    track.samples.emplace_back(system.evaluate(values));
  }
  return track;
}

FrameBasis diagonalizing_frame(const HamiltonianTrack& track) {
  check_track(track);
  const std::vector<CMatrix> h = matrices(track);
  const std::vector<EigenSystem> raw = eigensystems(h);
  FrameBasis basis;
  basis.min_gap = check_gaps(raw);
  superq::track(raw, basis);
  return basis;
}

FrameStep next_frame(const HamiltonianTrack& track) {
  check_track(track);
  const std::vector<CMatrix> h = matrices(track);
  const std::vector<EigenSystem> raw = eigensystems(h);
  FrameStep step;
  std::vector<CMatrix> next;
  frame_step(raw, track.dt(), step.basis, step.diagonal, step.inertial, next);
  step.next.tau = track.tau;
  step.next.samples.reserve(next.size());
  for (CMatrix& m : next) step.next.samples.emplace_back(std::move(m));
  return step;
}

QCurve q_curve(std::span<const CMatrix> diagonal,
               std::span<const CMatrix> inertial) {
  if (diagonal.size() != inertial.size()) {
    throw DimensionMismatch("D and C sample counts differ");
  }
  QCurve out;
  out.values.resize(diagonal.size());
  out.q = kInf;
  for (std::size_t m = 0; m < diagonal.size(); ++m) {
    const double nd = diagonal[m].norm();
    const double nc = inertial[m].norm();
    out.values[m] = nc < kCFloorRel * nd ? kInf : nd / nc;
  }
  for (std::size_t m = 1; m + 1 < diagonal.size(); ++m) {
    if (out.values[m] < out.q) {
      out.q = out.values[m];
      out.argmin = m;
    }
  }
  return out;
}

std::vector<double> FrameSequence::q_values() const {
  std::vector<double> q;
  q.reserve(frames.size());
  for (const Frame& f : frames) q.push_back(f.q.q);
  return q;
}

const Frame& FrameSequence::frame(int n) const {
  if (n < 1 || n > static_cast<int>(frames.size())) {
    throw InvalidParams("frame " + std::to_string(n) + " not computed");
  }
  return frames[n - 1];
}

FrameSequence superadiabatic_q(const HamiltonianTrack& track, int n_max) {
  check_track(track);
  if (n_max < 1) throw InvalidParams("n_max must be >= 1");
  FrameSequence seq;
  seq.tau = track.tau;
  const double dt = track.dt();
  std::vector<CMatrix> current = matrices(track);
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<EigenSystem> raw = eigensystems(current);
    Frame frame;
    frame.index = n;
    std::vector<CMatrix> next;
    try {
      frame_step(raw, dt, frame.basis, frame.diagonal, frame.inertial, next);
    } catch (const DegenerateSpectrum& e) {
      if (n == 1) throw;
      seq.truncated = true;
      seq.truncation_reason =
          "frame " + std::to_string(n) + ": " + std::string(e.what());
      break;
    }
    frame.q = q_curve(frame.diagonal, frame.inertial);
    frame.hamiltonian.tau = track.tau;
    frame.hamiltonian.samples.reserve(next.size());
    for (const CMatrix& m : next) frame.hamiltonian.samples.emplace_back(m);
    current = std::move(next);
    seq.frames.push_back(std::move(frame));
  }
  seq.q_s = -kInf;
  for (const Frame& f : seq.frames) {
    if (f.q.q > seq.q_s) {
      seq.q_s = f.q.q;
      seq.s = f.index;
    }
  }
  return seq;
}

std::vector<std::vector<double>> deviation_angles(
    const FrameSequence& seq, const StateTrajectory& traj,
    std::span<const int> frames) {
  if (seq.frames.empty()) throw InvalidParams("empty frame sequence");
  const std::size_t count = seq.frames.front().basis.vectors.size();
  if (traj.states.size() != count) {
    throw DimensionMismatch("trajectory has " +
                            std::to_string(traj.states.size()) +
                            " samples, frames have " + std::to_string(count));
  }
  if (traj.states.front().dim() != 2) {
    throw UnsupportedDimension("deviation angles are defined for qubits");
  }
  int deepest = 0;
  for (int n : frames) {
    seq.frame(n);
    deepest = std::max(deepest, n);
  }
  std::vector<std::vector<double>> out(frames.size(),
                                       std::vector<double>(count));
  for (std::size_t m = 0; m < count; ++m) {
    CVector psi = traj.states[m].amplitudes();
    for (int n = 1; n <= deepest; ++n) {
      const Frame& f = seq.frames[n - 1];
      psi = f.basis.vectors[m].adjoint() * psi;
      for (std::size_t r = 0; r < frames.size(); ++r) {
        if (frames[r] != n) continue;
        const CMatrix& h = f.hamiltonian.samples[m].matrix();
        const Vec3 hv = bloch_vector(h);
        if (!(hv.norm() > kCFloorRel * h.norm())) {
          throw ZeroVector("frame " + std::to_string(n) +
                           " Hamiltonian has no Bloch component at grid point " +
                           std::to_string(m));
        }
        const Vec3 sv = bloch_vector(StateVector::normalized(psi));
        const double c = hv.dot(sv) / (hv.norm() * sv.norm());
        out[r][m] = std::acos(std::clamp(c, -1.0, 1.0));
      }
    }
  }
  return out;
}

QProfile q_profile(std::span<const EigenSystem> first_frame_eigs, double dt,
                   int n_frames) {
  if (first_frame_eigs.size() < 3) {
    throw InvalidParams("Q profile needs N >= 2 intervals");
  }
  QProfile out;
  FrameBasis basis;
  std::vector<CMatrix> diagonal, inertial, next;
  std::vector<CMatrix> current;
  std::vector<EigenSystem> raw;
  for (int n = 1; n <= n_frames; ++n) {
    std::span<const EigenSystem> eigs = first_frame_eigs;
    if (n > 1) {
      raw = eigensystems(current);
      eigs = raw;
    }
    try {
      frame_step(eigs, dt, basis, diagonal, inertial, next);
    } catch (const DegenerateSpectrum&) {
      if (n == 1) throw;
      out.truncated = true;
      break;
    }
    const QCurve qc = q_curve(diagonal, inertial);
    out.q.push_back(qc.q);
    out.argmin.push_back(qc.argmin);
    current.swap(next);
  }
  return out;
}

std::vector<std::filesystem::path> write_frame_sequence(
    const FrameSequence& seq, const std::filesystem::path& dir,
    const std::string& stem) {
  std::vector<std::filesystem::path> written;
  for (const Frame& f : seq.frames) {
    const auto path =
        dir / (stem + "_frame_" + std::to_string(f.index) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string());
    out << "t,Q_" << f.index << '\n';
    const double tau = seq.tau;
    const std::size_t n = f.q.values.size() - 1;
    for (std::size_t m = 0; m <= n; ++m) {
      out << format_double(tau * static_cast<double>(m) / n) << ','
          << format_double(f.q.values[m]) << '\n';
    }
    written.push_back(path);
  }
  auto encode = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  nlohmann::json summary;
  summary["q"] = nlohmann::json::array();
  for (const Frame& f : seq.frames) summary["q"].push_back(encode(f.q.q));
  summary["q_s"] = encode(seq.q_s);
  summary["s"] = seq.s;
  summary["truncated"] = seq.truncated;
  if (seq.truncated) summary["truncation_reason"] = seq.truncation_reason;
  const auto path = dir / (stem + "_summary.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string());
  out << summary.dump(2) << '\n';
  written.push_back(path);
  return written;
}

}  // namespace superq
