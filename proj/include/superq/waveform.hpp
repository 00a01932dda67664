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

// Sampled control waveforms, control systems H(t) = H0 + sum_k u_k(t) H_k,
// and the analytic and guess pulse families built on them.
//
// All amplitudes are angular frequencies in rad/s and times in seconds.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superq/linalg.hpp"

namespace superq {

namespace channel {
inline constexpr std::string_view kOmega1 = "omega1";
inline constexpr std::string_view kDeltaOmega = "delta_omega";
inline constexpr std::string_view kOmega1A = "omega1_a";
inline constexpr std::string_view kDeltaOmegaA = "delta_omega_a";
inline constexpr std::string_view kOmega1B = "omega1_b";
inline constexpr std::string_view kDeltaOmegaB = "delta_omega_b";
}  // namespace channel

struct Channel {
  std::string name;
  std::vector<double> samples;

  bool operator==(const Channel&) const = default;
};

// Control amplitudes u_k(m dt), m = 0..N, on the uniform grid t_m = tau m/N.
class Waveform {
 public:
  // Throws InvalidParams (tau <= 0, N < 2, no channels, duplicate names) or
  // GridMismatch (channels with different sample counts).
  Waveform(double tau, std::vector<Channel> channels);

  double tau() const { return tau_; }
  int n_steps() const { return n_steps_; }
  double dt() const { return tau_ / n_steps_; }
  double time(int m) const { return tau_ * m / n_steps_; }

  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t channel_count() const { return channels_.size(); }
  // Index of the named channel; throws ChannelMismatch when absent.
  std::size_t index_of(std::string_view name) const;
  bool has_channel(std::string_view name) const;
  const std::vector<double>& samples(std::string_view name) const;
  const std::vector<double>& samples(std::size_t k) const {
    return channels_[k].samples;
  }
  std::span<double> mutable_samples(std::size_t k) {
    return channels_[k].samples;
  }

  // Same samples on a grid of length `tau` (the shape is time-rescaled).
  Waveform with_tau(double tau) const;

  bool operator==(const Waveform&) const = default;

 private:
  double tau_;
  int n_steps_;
  std::vector<Channel> channels_;
};

class ControlSystem {
 public:
  struct Control {
    std::string name;
    HermitianOperator op;
  };

  ControlSystem(HermitianOperator drift, std::vector<Control> controls);

  int dim() const { return drift_.dim(); }
  const HermitianOperator& drift() const { return drift_; }
  const std::vector<Control>& controls() const { return controls_; }

  // For each control, the index of the waveform channel driving it. Throws
  // ChannelMismatch unless controls and channels match one to one by name.
  std::vector<std::size_t> bind(const Waveform& wf) const;

  // H0 + sum_k values[k] H_k, values ordered like controls().
  CMatrix evaluate(std::span<const double> values) const;

 private:
  HermitianOperator drift_;
  std::vector<Control> controls_;
};

// H(t) = (w1/2) sx + (dw/2) sz, channels omega1 and delta_omega.
ControlSystem single_qubit_system();

struct TanhTanParams {
  double A;           // offset sweep amplitude, rad/s
  double kappa;       // radians, 0 < kappa < pi/2
  double xi;          // amplitude ramp rate
  double omega1_max;  // rad/s

  // The usual tabulated form quotes tan(kappa) rather than kappa.
  static TanhTanParams from_tan_kappa(double A, double tan_kappa, double xi,
                                      double omega1_max);
  double tan_kappa() const;
};

// Reference tanh/tan shapes (omega1_max = 80 krad/s) optimized for Q1, and
// for Q_s at 120 us and 50 us.
TanhTanParams table_q1_pulse();
TanhTanParams table_qs120_pulse();
TanhTanParams table_qs50_pulse();

// First half: w1 = w1max tanh(2 xi t/tau), dw = A tan(kappa(1 - 2t/tau)) /
// tan(kappa); second half mirrored so that w1 is even and dw is odd about
// tau/2 at every mirrored sample pair. Throws InvalidParams.
Waveform tanh_tan(const TanhTanParams& p, double tau, int n_steps);

// Parabolic w1 (zero at both ends, omega1_max at tau/2) and linear dw from
// dw_start > 0 to dw_end < 0. Throws InvalidBoundary / InvalidParams.
Waveform inversion_guess(double omega1_max, double dw_start, double dw_end,
                         double tau, int n_steps);

// Constant resonant drive of amplitude omega1 (dw = 0).
Waveform hard_pulse(double omega1, double tau, int n_steps);

// Linear two-qubit guess: omega1_a 0 -> -A, delta_omega_a dw_a0 -> 0,
// omega1_b 0 -> A, delta_omega_b dw_b0 -> 0. No ordering checks.
Waveform linear_two_qubit_guess(double dw_a0, double dw_b0, double A,
                                double tau, int n_steps);

// Validated form with dw_a0 = alpha and dw_b0 = -beta; requires
// alpha > beta > 0 and A > 0 (InvalidBoundary otherwise).
Waveform two_qubit_guess(double alpha, double beta, double A, double tau,
                         int n_steps);

}  // namespace superq
