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

// Dense complex linear algebra for the small Hermitian systems used here
// (one and two qubits). Storage is fixed-capacity so nothing allocates in
// the inner loops of the frame construction and the search.

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace superq {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 4;

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                              Eigen::ColMajor, kMaxDim, kMaxDim>;
using CVector =
    Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RVector =
    Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Vec3 = Eigen::Vector3d;

// Relative tolerance (against the largest entry magnitude) for accepting a
// matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
// Absolute tolerance on the Euclidean norm of a state.
inline constexpr double kNormTol = 1e-10;

// Largest |M_ij - conj(M_ji)| divided by the largest |M_ij| (0 for M = 0).
double hermiticity_error(const CMatrix& m);

class HermitianOperator {
 public:
  HermitianOperator() = default;
  // Throws NonHermitianInput, or UnsupportedDimension for non-square or
  // oversized input.
  explicit HermitianOperator(CMatrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

  static HermitianOperator zero(int dim);

 private:
  CMatrix m_;
};

HermitianOperator operator+(const HermitianOperator& a,
                            const HermitianOperator& b);
HermitianOperator operator*(double s, const HermitianOperator& a);

class StateVector {
 public:
  StateVector() = default;
  // Throws NotNormalized when | ||v|| - 1 | > kNormTol.
  explicit StateVector(CVector v);

  // Normalizes first; throws ZeroVector for v = 0.
  static StateVector normalized(CVector v);
  // Computational basis state |index>.
  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(v_.size()); }
  const CVector& amplitudes() const { return v_; }

 private:
  CVector v_;
};

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

EigenSystem eigh(const HermitianOperator& h);
// Same as eigh() without the Hermiticity check, for matrices built inside
// the library from Hermitian parts.
EigenSystem eigh_trusted(const CMatrix& h);

double norm_frobenius(const CMatrix& m);

// exp(-i H dt) via the spectral decomposition of H.
CMatrix expm_hermitian(const HermitianOperator& h, double dt);

// (<sx>, <sy>, <sz>) of a qubit state.
Vec3 bloch_vector(const StateVector& psi);
// Twice the traceless Pauli components, so (w1/2) sx + (dw/2) sz maps to
// (w1, 0, dw).
Vec3 bloch_vector(const HermitianOperator& h);
Vec3 bloch_vector(const CMatrix& h);

namespace pauli {
CMatrix identity(int dim);
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix kron(const CMatrix& a, const CMatrix& b);
}  // namespace pauli

}  // namespace superq
