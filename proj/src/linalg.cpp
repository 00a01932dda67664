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

#include "superq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "superq/errors.hpp"

namespace superq {

double hermiticity_error(const CMatrix& m) {
  double scale = 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      scale = std::max(scale, std::abs(m(i, j)));
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

HermitianOperator::HermitianOperator(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw UnsupportedDimension("operator must be square and non-empty");
  }
  const double err = hermiticity_error(m_);
  if (!(err <= kHermitianTol)) {
    throw NonHermitianInput("matrix is not Hermitian (relative error " +
                            std::to_string(err) + ")");
  }
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim));
}

HermitianOperator operator+(const HermitianOperator& a,
                            const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator sum");
  return HermitianOperator(a.matrix() + b.matrix());
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.matrix());
}

StateVector::StateVector(CVector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw UnsupportedDimension("empty state");
  const double n = v_.norm();
  if (!(std::abs(n - 1.0) <= kNormTol)) {
    throw NotNormalized("state norm " + std::to_string(n) + " != 1");
  }
}

StateVector StateVector::normalized(CVector v) {
  const double n = v.norm();
  if (n == 0.0) throw ZeroVector("cannot normalize the zero vector");
  return StateVector(v / n);
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw DimensionMismatch("basis index");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(v);
}

EigenSystem eigh_trusted(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem eigh(const HermitianOperator& h) {
  return eigh_trusted(h.matrix());
}

double norm_frobenius(const CMatrix& m) { return m.norm(); }

CMatrix expm_hermitian(const HermitianOperator& h, double dt) {
  const CMatrix& m = h.matrix();
  if (h.dim() == 2) {
    // Closed-form spectral decomposition: H = h0 + r n.sigma with
    // eigenvalues h0 +- r.
    const double h0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double hz = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const Complex off = m(0, 1);
    const double r = std::sqrt(hz * hz + std::norm(off));
    const Complex phase = std::polar(1.0, -h0 * dt);
    const double c = std::cos(r * dt);
    const double s = r > 0.0 ? std::sin(r * dt) / r : dt;
    const Complex mi(0.0, -1.0);
    CMatrix u(2, 2);
    u(0, 0) = phase * (c + mi * s * hz);
    u(1, 1) = phase * (c - mi * s * hz);
    u(0, 1) = phase * (mi * s * off);
    u(1, 0) = phase * (mi * s * std::conj(off));
    return u;
  }
  const EigenSystem es = eigh(h);
  CVector phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    phases(i) = std::polar(1.0, -es.values(i) * dt);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Vec3 bloch_vector(const StateVector& psi) {
  if (psi.dim() != 2) throw UnsupportedDimension("Bloch vector needs d = 2");
  const CVector& a = psi.amplitudes();
  const Complex rho01 = a(0) * std::conj(a(1));
  return {2.0 * rho01.real(), -2.0 * rho01.imag(),
          std::norm(a(0)) - std::norm(a(1))};
}

Vec3 bloch_vector(const CMatrix& h) {
  if (h.rows() != 2 || h.cols() != 2) {
    throw UnsupportedDimension("Bloch vector needs d = 2");
  }
  return {2.0 * h(0, 1).real(), -2.0 * h(0, 1).imag(),
          (h(0, 0) - h(1, 1)).real()};
}

Vec3 bloch_vector(const HermitianOperator& h) {
  return bloch_vector(h.matrix());
}

namespace pauli {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix y() {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

CMatrix z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  if (ra * rb > kMaxDim || ca * cb > kMaxDim) {
    throw UnsupportedDimension("Kronecker product exceeds the 4x4 limit");
  }
  CMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace pauli

}  // namespace superq
