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

#pragma once

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace locckit {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr Complex kI{0.0, 1.0};

enum class Side { Alice, Bob };

constexpr Side other(Side s) { return s == Side::Alice ? Side::Bob : Side::Alice; }
// "A" or "B".
std::string_view side_label(Side s);

// Ordered orthonormal pair of single-qubit vectors.
struct QubitBasis {
  Vec2 v0;
  Vec2 v1;

  const Vec2& operator[](int k) const { return k == 0 ? v0 : v1; }
  // Columns are v0, v1.
  Mat2 matrix() const;
};

QubitBasis computational_basis();
// Largest deviation of the Gram matrix from the identity.
double orthonormality_defect(const QubitBasis& basis);
bool is_orthonormal(const QubitBasis& basis, double tol = kDefaultTol);

// psi = sqrt(lambda0)|a0>|b0> + sqrt(lambda1)|a1>|b1>.
struct SchmidtForm {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::array<Vec2, 2> alice;
  std::array<Vec2, 2> bob;
  // lambda0 and lambda1 agree within tol; the bases are not unique.
  bool degenerate = false;

  int rank(double tol = kDefaultTol) const { return lambda1 > tol ? 2 : 1; }
  Vec4 reconstruct() const;
};

// Amplitudes (1, 0, 0, 1)/sqrt(2).
Vec4 maximally_entangled();

// X with (X (x) I)|Omega> = psi, i.e. sqrt(2) times the reshaped amplitudes.
Mat2 state_to_matrix(const Vec4& psi);
Vec4 matrix_to_state(const Mat2& x);

// Throws InvalidInput("degenerate input") on the zero vector.
SchmidtForm schmidt_decompose(const Vec4& psi, double tol = kDefaultTol);

// Complex-conjugates the coefficients of v in the given basis.
// Throws InvalidInput if the basis is not orthonormal.
Vec2 conjugate_in_basis(const Vec2& v, const QubitBasis& basis, double tol = kDefaultTol);

// (op (x) I)psi or (I (x) op)psi, unnormalized.
Vec4 apply_local(const Mat2& op, Side side, const Vec4& psi);

// |a>_A |b>_B.
Vec4 product_state(const Vec2& a, const Vec2& b);

// Partial inner product <v|_side psi, a vector on the other party.
Vec2 contract(const Vec4& psi, const Vec2& v, Side side);

// Exchanges the roles of Alice and Bob.
Vec4 swap_parties(const Vec4& psi);

// |<x|y>| >= (1 - tol)|x||y|.
bool is_parallel(const Vec2& x, const Vec2& y, double tol = kDefaultTol);

// Unit vector orthogonal to v (v need not be normalized).
Vec2 orthogonal_complement(const Vec2& v);

// max |U^dag U - I| entrywise.
double unitarity_defect(const Mat2& u);
// Unitary factor of the polar decomposition (closest unitary in Frobenius norm).
Mat2 closest_unitary(const Mat2& m);

// Smaller Schmidt coefficient of psi / |psi|.
double minor_schmidt_coefficient(const Vec4& psi);

// max |M - c I| over the best scalar c, relative to |M|.
double scalar_defect(const Mat2& m);

}  // namespace locckit
