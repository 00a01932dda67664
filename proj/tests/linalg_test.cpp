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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "superq/entangler.hpp"
#include "superq/errors.hpp"
#include "superq/linalg.hpp"
#include "superq/propagate.hpp"

namespace superq {
namespace {

CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

TEST(Eigh, PauliZHalf) {
  const EigenSystem es = eigh(HermitianOperator(0.5 * pauli::z()));
  EXPECT_DOUBLE_EQ(es.values(0), -0.5);
  EXPECT_DOUBLE_EQ(es.values(1), 0.5);
  EXPECT_NEAR(std::abs(es.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(0, 1)), 1.0, 1e-15);
}

TEST(Eigh, TwoQubitBoundaryIsDiagonal) {
  const double a = 64e3, b = 57e3, J = 209.4;
  const ControlSystem sys = two_qubit_system(J);
  const double controls[] = {0.0, a, 0.0, -b};
  const EigenSystem es = eigh(HermitianOperator(sys.evaluate(controls)));
  const double pj = std::numbers::pi * J / 2;
  std::vector<double> expect = {a / 2 - b / 2 + pj, a / 2 + b / 2 - pj,
                                -a / 2 - b / 2 - pj, -a / 2 + b / 2 + pj};
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(es.values(i), expect[i], 1e-9);
  EXPECT_NEAR((a - b) / 2 + pj, 3828.93, 0.01);
}

TEST(Eigh, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (int d : {2, 4}) {
    for (int k = 0; k < 1000; ++k) {
      const CMatrix h = random_hermitian(d, rng);
      const EigenSystem es = eigh(HermitianOperator(h));
      for (int i = 0; i + 1 < d; ++i) EXPECT_LE(es.values(i), es.values(i + 1));
      const CMatrix back = es.vectors * es.values.cast<Complex>().asDiagonal() *
                           es.vectors.adjoint();
      EXPECT_LT((back - h).norm() / h.norm(), 1e-10);
      const CMatrix gram = es.vectors.adjoint() * es.vectors;
      EXPECT_LT((gram - CMatrix::Identity(d, d)).norm(), 1e-10);
    }
  }
}

TEST(Eigh, Deterministic) {
  std::mt19937_64 rng(3);
  const CMatrix h = random_hermitian(4, rng);
  const EigenSystem a = eigh(HermitianOperator(h));
  const EigenSystem b = eigh(HermitianOperator(h));
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(HermitianOperator, RejectsNonHermitian) {
  CMatrix m = pauli::x();
  m(0, 1) = Complex(1.0, 1e-6);
  EXPECT_THROW(HermitianOperator{m}, NonHermitianInput);
  CMatrix r(2, 3);
  r.setZero();
  EXPECT_THROW(HermitianOperator{r}, UnsupportedDimension);
}

TEST(StateVector, NormInvariant) {
  CVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, NotNormalized);
  const StateVector s = StateVector::normalized(v);
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(CVector::Zero(2)), ZeroVector);
}

TEST(NormFrobenius, Examples) {
  EXPECT_DOUBLE_EQ(norm_frobenius(pauli::identity(2)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(norm_frobenius(pauli::x()), std::sqrt(2.0));
  const double w1 = 8e4, dw = 3e4;
  const CMatrix h = 0.5 * w1 * pauli::x() + 0.5 * dw * pauli::z();
  EXPECT_NEAR(norm_frobenius(h), std::sqrt((w1 * w1 + dw * dw) / 2), 1e-9);
  EXPECT_EQ(norm_frobenius(CMatrix::Zero(3, 3)), 0.0);
}

TEST(NormFrobenius, Homogeneous) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const CMatrix h = random_hermitian(4, rng);
    const double s = -3.7 + 0.1 * k;
    EXPECT_NEAR(norm_frobenius(s * h), std::abs(s) * norm_frobenius(h),
                1e-14 * std::abs(s) * norm_frobenius(h));
  }
}

TEST(Expm, UnitaryForRandomInputs) {
  std::mt19937_64 rng(5);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 200; ++k) {
      const CMatrix h = 1e5 * random_hermitian(d, rng);
      const CMatrix u = expm_hermitian(HermitianOperator(h), 1e-6 * (k + 1));
      EXPECT_LT((u.adjoint() * u - CMatrix::Identity(d, d)).norm(), 1e-10);
    }
  }
}

TEST(Expm, MatchesRabiRotation) {
  const double w = 8e4, t = 13e-6;
  const CMatrix u = expm_hermitian(HermitianOperator(0.5 * w * pauli::x()), t);
  EXPECT_NEAR(u(0, 0).real(), std::cos(w * t / 2), 1e-14);
  EXPECT_NEAR(u(1, 0).imag(), -std::sin(w * t / 2), 1e-14);
}

TEST(Propagate, ZeroHamiltonianIsIdentity) {
  const ControlSystem sys = single_qubit_system();
  const Waveform wf(1e-5, {{"omega1", std::vector<double>(9, 0.0)},
                           {"delta_omega", std::vector<double>(9, 0.0)}});
  CVector v(2);
  v << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const StateVector psi(v);
  const StateVector out = propagate_final(sys, wf, psi).state;
  EXPECT_LT((out.amplitudes() - v).norm(), 1e-15);
}

TEST(Propagate, HardPulseInverts) {
  const double w1 = 8e4;
  const double tau = std::numbers::pi / w1;
  EXPECT_NEAR(tau, 39.27e-6, 1e-8);
  const StateTrajectory traj = propagate(single_qubit_system(),
                                         hard_pulse(w1, tau, 64),
                                         StateVector::basis(2, 0));
  EXPECT_EQ(traj.states.size(), 65u);
  EXPECT_NEAR(std::abs(traj.final_state().amplitudes()(1)), 1.0, 1e-10);
  EXPECT_LT(traj.max_norm_error, 1e-10);
  EXPECT_LT(traj.max_unitarity_error, 1e-10);
}

TEST(Propagate, RandomConstantHamiltonianPreservesNorm) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 5e4);
  for (int k = 0; k < 50; ++k) {
    const double w1 = g(rng), dw = g(rng);
    const Waveform wf(2e-4, {{"omega1", std::vector<double>(33, w1)},
                             {"delta_omega", std::vector<double>(33, dw)}});
    const PropagationResult r =
        propagate_final(single_qubit_system(), wf, StateVector::basis(2, 0));
    EXPECT_NEAR(r.state.amplitudes().norm(), 1.0, 1e-10);
    EXPECT_LT(r.max_unitarity_error, 1e-10);
  }
}

TEST(Propagate, DimensionMismatch) {
  const Waveform wf = hard_pulse(1e4, 1e-4, 4);
  EXPECT_THROW(propagate(single_qubit_system(), wf, StateVector::basis(4, 0)),
               DimensionMismatch);
}

TEST(Bloch, States) {
  const Vec3 up = bloch_vector(StateVector::basis(2, 0));
  EXPECT_NEAR((up - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
  CVector v(2);
  v << 1.0, 1.0;
  const Vec3 plus = bloch_vector(StateVector::normalized(v));
  EXPECT_NEAR((plus - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(Bloch, SingleQubitHamiltonian) {
  const double w1 = 7e4, dw = -2e4;
  const HermitianOperator h(0.5 * w1 * pauli::x() + 0.5 * dw * pauli::z());
  const Vec3 b = bloch_vector(h);
  EXPECT_NEAR(b.x(), w1, 1e-9);
  EXPECT_NEAR(b.y(), 0.0, 1e-9);
  EXPECT_NEAR(b.z(), dw, 1e-9);
}

TEST(Bloch, RejectsLargerDimensions) {
  EXPECT_THROW(bloch_vector(StateVector::basis(4, 0)), UnsupportedDimension);
  EXPECT_THROW(bloch_vector(HermitianOperator::zero(4)), UnsupportedDimension);
}

}  // namespace
}  // namespace superq
