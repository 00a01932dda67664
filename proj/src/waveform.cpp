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

#include "superq/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "superq/errors.hpp"

namespace superq {

Waveform::Waveform(double tau, std::vector<Channel> channels)
    : tau_(tau), n_steps_(0), channels_(std::move(channels)) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
    throw InvalidParams("waveform tau must be positive and finite");
  }
  if (channels_.empty()) throw InvalidParams("waveform has no channels");
  const std::size_t count = channels_.front().samples.size();
  std::set<std::string> names;
  for (const Channel& c : channels_) {
    if (c.samples.size() != count) {
      throw GridMismatch("channel '" + c.name + "' has " +
                         std::to_string(c.samples.size()) +
                         " samples, expected " + std::to_string(count));
    }
    if (!names.insert(c.name).second) {
      throw InvalidParams("duplicate channel '" + c.name + "'");
    }
  }
  if (count < 3) throw InvalidParams("waveform needs N >= 2 intervals");
  n_steps_ = static_cast<int>(count) - 1;
}

std::size_t Waveform::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < channels_.size(); ++k) {
    if (channels_[k].name == name) return k;
  }
  throw ChannelMismatch("waveform has no channel '" + std::string(name) + "'");
}

bool Waveform::has_channel(std::string_view name) const {
  return std::any_of(channels_.begin(), channels_.end(),
                     [&](const Channel& c) { return c.name == name; });
}

const std::vector<double>& Waveform::samples(std::string_view name) const {
  return channels_[index_of(name)].samples;
}

Waveform Waveform::with_tau(double tau) const {
  return Waveform(tau, channels_);
}

ControlSystem::ControlSystem(HermitianOperator drift,
                             std::vector<Control> controls)
    : drift_(std::move(drift)), controls_(std::move(controls)) {
  std::set<std::string> names;
  for (const Control& c : controls_) {
    if (c.op.dim() != drift_.dim()) {
      throw DimensionMismatch("control '" + c.name +
                              "' dimension differs from the drift");
    }
    if (!names.insert(c.name).second) {
      throw InvalidParams("duplicate control '" + c.name + "'");
    }
  }
}

std::vector<std::size_t> ControlSystem::bind(const Waveform& wf) const {
  if (wf.channel_count() != controls_.size()) {
    throw ChannelMismatch("waveform has " +
                          std::to_string(wf.channel_count()) +
                          " channels, system has " +
                          std::to_string(controls_.size()) + " controls");
  }
  std::vector<std::size_t> map;
  map.reserve(controls_.size());
  for (const Control& c : controls_) map.push_back(wf.index_of(c.name));
  return map;
}

CMatrix ControlSystem::evaluate(std::span<const double> values) const {
  CMatrix h = drift_.matrix();
  for (std::size_t k = 0; k < controls_.size(); ++k) {
    h += values[k] * controls_[k].op.matrix();
  }
  return h;
}

ControlSystem single_qubit_system() {
  return ControlSystem(
      HermitianOperator::zero(2),
      {{std::string(channel::kOmega1), HermitianOperator(0.5 * pauli::x())},
       {std::string(channel::kDeltaOmega),
        HermitianOperator(0.5 * pauli::z())}});
}

TanhTanParams TanhTanParams::from_tan_kappa(double A, double tan_kappa,
                                            double xi, double omega1_max) {
  return {A, std::atan(tan_kappa), xi, omega1_max};
}

double TanhTanParams::tan_kappa() const { return std::tan(kappa); }

TanhTanParams table_q1_pulse() {
  return TanhTanParams::from_tan_kappa(4.1e5, 6.9, 16.1, 8.0e4);
}

TanhTanParams table_qs120_pulse() {
  return TanhTanParams::from_tan_kappa(50.5e5, 65.8, 49.2, 8.0e4);
}

TanhTanParams table_qs50_pulse() {
  return TanhTanParams::from_tan_kappa(26.8e5, 36.3, 41.6, 8.0e4);
}

namespace {

void check_grid(double tau, int n_steps) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidParams("tau must be positive");
  }
  if (n_steps < 2) throw InvalidParams("n_steps must be >= 2");
}

}  // namespace

Waveform tanh_tan(const TanhTanParams& p, double tau, int n_steps) {
  check_grid(tau, n_steps);
  if (!(p.A > 0.0) || !(p.kappa > 0.0) || !(p.xi > 0.0) ||
      !(p.omega1_max > 0.0)) {
    throw InvalidParams("tanh/tan parameters must be strictly positive");
  }
  if (!(p.kappa < std::numbers::pi / 2)) {
    throw InvalidParams("kappa must be below pi/2 (tan has a pole inside "
                        "the pulse otherwise)");
  }
  const int n = n_steps;
  std::vector<double> w1(n + 1), dw(n + 1);
  const double tan_k = std::tan(p.kappa);
  for (int m = 0; 2 * m <= n; ++m) {
    const double x = static_cast<double>(m) / n;  // t / tau
    w1[m] = p.omega1_max * std::tanh(2.0 * p.xi * x);
    dw[m] = p.A * std::tan(p.kappa * (1.0 - 2.0 * x)) / tan_k;
  }
  for (int m = n; 2 * m > n; --m) {
    w1[m] = w1[n - m];
    dw[m] = -dw[n - m];
  }
  return Waveform(tau, {{std::string(channel::kOmega1), std::move(w1)},
                        {std::string(channel::kDeltaOmega), std::move(dw)}});
}

Waveform inversion_guess(double omega1_max, double dw_start, double dw_end,
                         double tau, int n_steps) {
  check_grid(tau, n_steps);
  if (!(omega1_max > 0.0)) throw InvalidParams("omega1_max must be positive");
  if (!(dw_start > 0.0 && dw_end < 0.0)) {
    throw InvalidBoundary("inversion guess needs dw_start > 0 > dw_end");
  }
  const int n = n_steps;
  std::vector<double> w1(n + 1), dw(n + 1);
  for (int m = 0; m <= n; ++m) {
    const double s = static_cast<double>(m) / n;
    w1[m] = omega1_max * 4.0 * s * (1.0 - s);
    dw[m] = (1.0 - s) * dw_start + s * dw_end;
  }
  return Waveform(tau, {{std::string(channel::kOmega1), std::move(w1)},
                        {std::string(channel::kDeltaOmega), std::move(dw)}});
}

Waveform hard_pulse(double omega1, double tau, int n_steps) {
  check_grid(tau, n_steps);
  return Waveform(tau, {{std::string(channel::kOmega1),
                         std::vector<double>(n_steps + 1, omega1)},
                        {std::string(channel::kDeltaOmega),
                         std::vector<double>(n_steps + 1, 0.0)}});
}

Waveform linear_two_qubit_guess(double dw_a0, double dw_b0, double A,
                                double tau, int n_steps) {
  check_grid(tau, n_steps);
  const int n = n_steps;
  std::vector<double> w1a(n + 1), dwa(n + 1), w1b(n + 1), dwb(n + 1);
  for (int m = 0; m <= n; ++m) {
    const double s = static_cast<double>(m) / n;
    w1a[m] = -A * s;
    dwa[m] = (1.0 - s) * dw_a0;
    w1b[m] = A * s;
    dwb[m] = (1.0 - s) * dw_b0;
  }
  return Waveform(tau, {{std::string(channel::kOmega1A), std::move(w1a)},
                        {std::string(channel::kDeltaOmegaA), std::move(dwa)},
                        {std::string(channel::kOmega1B), std::move(w1b)},
                        {std::string(channel::kDeltaOmegaB), std::move(dwb)}});
}

Waveform two_qubit_guess(double alpha, double beta, double A, double tau,
                         int n_steps) {
  if (!(beta > 0.0) || !(alpha > beta)) {
    throw InvalidBoundary("two-qubit guess needs alpha > beta > 0");
  }
  if (!(A > 0.0)) throw InvalidBoundary("two-qubit guess needs A > 0");
  return linear_two_qubit_guess(alpha, -beta, A, tau, n_steps);
}

}  // namespace superq
