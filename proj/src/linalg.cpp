// Copyright 2026 The locckit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locckit/linalg.hpp"

#include <cmath>

#include "locckit/errors.hpp"

namespace locckit {

namespace {

Mat2 reshape(const Vec4& psi) {
  Mat2 m;
  m << psi(0), psi(1), psi(2), psi(3);
  return m;
}

Vec4 flatten(const Mat2& m) {
  Vec4 v;
  v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return v;
}

// Rotates v so that its first non-negligible entry is real positive and
// returns the phase that was removed.
Complex fix_phase(Vec2& v) {
  for (int i = 0; i < 2; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      const Complex p = v(i) / std::abs(v(i));
      v *= std::conj(p);
      return p;
    }
  }
  return 1.0;
}

}  // namespace

std::string_view side_label(Side s) { return s == Side::Alice ? "A" : "B"; }

Mat2 QubitBasis::matrix() const {
  Mat2 m;
  m.col(0) = v0;
  m.col(1) = v1;
  return m;
}

QubitBasis computational_basis() { return {Vec2(1, 0), Vec2(0, 1)}; }

double orthonormality_defect(const QubitBasis& basis) {
  const Mat2 b = basis.matrix();
  return (b.adjoint() * b - Mat2::Identity()).cwiseAbs().maxCoeff();
}

bool is_orthonormal(const QubitBasis& basis, double tol) {
  return orthonormality_defect(basis) <= tol;
}

Vec4 SchmidtForm::reconstruct() const {
  return std::sqrt(lambda0) * product_state(alice[0], bob[0]) +
         std::sqrt(lambda1) * product_state(alice[1], bob[1]);
}

Vec4 maximally_entangled() {
  const double r = 1.0 / std::sqrt(2.0);
  return Vec4(r, 0, 0, r);
}

Mat2 state_to_matrix(const Vec4& psi) { return std::sqrt(2.0) * reshape(psi); }

Vec4 matrix_to_state(const Mat2& x) { return flatten(x) / std::sqrt(2.0); }

SchmidtForm schmidt_decompose(const Vec4& psi, double tol) {
  if (!psi.allFinite()) throw InvalidInput("non-finite amplitudes");
  if (psi.norm() == 0.0) throw InvalidInput("degenerate input");
  Eigen::JacobiSVD<Mat2> svd(reshape(psi), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  SchmidtForm f;
  f.lambda0 = s(0) * s(0);
  f.lambda1 = s(1) * s(1);
  for (int k = 0; k < 2; ++k) {
    f.alice[k] = svd.matrixU().col(k);
    f.bob[k] = svd.matrixV().col(k).conjugate();
    const Complex p = fix_phase(f.alice[k]);
    f.bob[k] *= p;
  }
  f.degenerate = std::abs(f.lambda0 - f.lambda1) <= tol;
  return f;
}

Vec2 conjugate_in_basis(const Vec2& v, const QubitBasis& basis, double tol) {
  if (!is_orthonormal(basis, tol)) throw InvalidInput("basis is not orthonormal");
  const Complex c0 = basis.v0.dot(v);
  const Complex c1 = basis.v1.dot(v);
  return std::conj(c0) * basis.v0 + std::conj(c1) * basis.v1;
}

Vec4 apply_local(const Mat2& op, Side side, const Vec4& psi) {
  const Mat2 m = reshape(psi);
  return side == Side::Alice ? flatten(op * m) : flatten(m * op.transpose());
}

Vec4 product_state(const Vec2& a, const Vec2& b) {
  return Vec4(a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1));
}

Vec2 contract(const Vec4& psi, const Vec2& v, Side side) {
  const Mat2 m = reshape(psi);
  return side == Side::Alice ? Vec2(m.transpose() * v.conjugate())
                             : Vec2(m * v.conjugate());
}

Vec4 swap_parties(const Vec4& psi) { return Vec4(psi(0), psi(2), psi(1), psi(3)); }

bool is_parallel(const Vec2& x, const Vec2& y, double tol) {
  return std::abs(x.dot(y)) >= (1.0 - tol) * x.norm() * y.norm();
}

Vec2 orthogonal_complement(const Vec2& v) {
  const Vec2 w(-std::conj(v(1)), std::conj(v(0)));
  return w / w.norm();
}

double unitarity_defect(const Mat2& u) {
  return (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff();
}

Mat2 closest_unitary(const Mat2& m) {
  Eigen::JacobiSVD<Mat2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double minor_schmidt_coefficient(const Vec4& psi) {
  const double n = psi.norm();
  if (n == 0.0) return 0.0;
  Eigen::JacobiSVD<Mat2> svd(reshape(psi / n));
  const double s1 = svd.singularValues()(1);
  return s1 * s1;
}

double scalar_defect(const Mat2& m) {
  const double n = m.norm();
  if (n == 0.0) return 0.0;
  const Complex c = m.trace() / 2.0;
  return (m - c * Mat2::Identity()).norm() / n;
}

}  // namespace locckit
