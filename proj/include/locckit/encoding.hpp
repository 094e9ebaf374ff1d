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
#include <optional>
#include <string_view>

#include "locckit/linalg.hpp"
#include "locckit/random.hpp"

namespace locckit {

// Encoding parameters. psi0 and psi1 share Schmidt coefficients
// (lambda0, 1 - lambda0); theta, bigTheta and phi fix the controller-side
// vectors of psi1 relative to those of psi0.
struct ExtractionParams {
  double lambda0 = 1.0;
  double theta = 0.0;
  double bigTheta = 0.0;
  double phi = 0.0;
};

// |<psi0|psi1>| implied by the parameters (zero when they are admissible).
double orthogonality_residual(const ExtractionParams& p);
// Throws InvalidInput when lambda0 is outside [1/2, 1], a value is not finite,
// or the parameters violate orthogonality ("orthogonality violated").
void validate(const ExtractionParams& p, double tol = kDefaultTol);

// Orthonormal pair housing the logical qubit alpha|psi0> + beta|psi1>.
struct BasisPair {
  Vec4 psi0;
  Vec4 psi1;

  const Vec4& operator[](int k) const { return k == 0 ? psi0 : psi1; }
};

// max(| |psi0| - 1 |, | |psi1| - 1 |, |<psi0|psi1>|).
double pair_defect(const BasisPair& pair);
// Throws InvalidInput unless the pair is finite and orthonormal to tol.
void require_orthonormal(const BasisPair& pair, double tol = kDefaultTol);

BasisPair swap_parties(const BasisPair& pair);
BasisPair apply_local(const Mat2& op, Side side, const BasisPair& pair);
Vec4 encode(const BasisPair& pair, Complex alpha, Complex beta);

// Builds psi0 = sqrt(l0)|a0 b0> + sqrt(l1)|a1 b1> and
// psi1 = sqrt(l0)|a0' b1> + sqrt(l1)|a1' b0>, where a0', a1' are fixed by
// (theta, bigTheta, phi) in the alice basis {a0, a1}.
BasisPair make_basis_pair(const ExtractionParams& p,
                          const QubitBasis& alice = computational_basis(),
                          const QubitBasis& bob = computational_basis(),
                          double tol = kDefaultTol);

// Presets.
BasisPair bell_pair();
BasisPair extracted_pair();
ExtractionParams asymmetric_params();
// psi0 = sqrt(l0)|a0 b0> + sqrt(l1)|a1 b1>, psi1 = -sqrt(l0)|a1 b1> + sqrt(l1)|a0 b0>.
BasisPair symmetric_pair(double lambda0, const QubitBasis& alice = computational_basis(),
                         const QubitBasis& bob = computational_basis());
// psi0 = sqrt(l0)|a0 b0> + sqrt(l1)|a1 b1>, psi1 = sqrt(l0)|a1 b0'> + sqrt(l1)|a0 b1'>
// with b0' = p b0 - q b1, b1' = q b0 + r b1 where p = cos(g)e^{i x},
// q = sin(g)e^{i y}, r = cos(g)e^{i(2y - x)}. For lambda0 = 1 and g = 0 the
// Bob vectors of the two states are parallel.
BasisPair destructible_pair(double lambda0, double gamma, double x, double y,
                            const QubitBasis& alice = computational_basis(),
                            const QubitBasis& bob = computational_basis());

// Haar-random orthonormal pair.
BasisPair haar_pair(CounterRng& rng);
// Admissible parameters; a quarter of draws have bigTheta in {0, pi} with
// nonzero phi, and a small fraction are product (lambda0 = 1).
ExtractionParams random_params(CounterRng& rng);
QubitBasis random_basis(CounterRng& rng);

enum class Reason { None, CoefficientMismatch, BasisMismatch, RankMismatch, DegenerateOrthogonality };
std::string_view reason_label(Reason r);

enum class SchmidtRegime { Distinct, Equal, Product };
std::string_view regime_label(SchmidtRegime r);

// Schmidt data seen from the frame where the target party plays Bob; for an
// Alice target the pair is swapped before analysis.
struct ExtractionWitness {
  Side target = Side::Bob;
  SchmidtForm first;
  SchmidtForm second;
  SchmidtRegime regime = SchmidtRegime::Distinct;
  // second.bob[k] is matched with first.bob[bobMatch[k]].
  std::array<int, 2> bobMatch{1, 0};
  // |<second.bob[k] | first.bob[bobMatch[k]]>|.
  std::array<double, 2> matchOverlap{0.0, 0.0};
};

struct ExtractionCheck {
  bool ok = false;
  Reason reason = Reason::None;
  ExtractionWitness witness;

  explicit operator bool() const { return ok; }
};

ExtractionCheck check_extraction(const BasisPair& pair, Side target, double tol = kDefaultTol);

bool check_symmetric(const BasisPair& pair, double tol = kDefaultTol);

struct DestructionCheck {
  bool ok = false;
  Reason reason = Reason::None;
  // Verdict from the matrix route: normality of X1 X0^{-1} (or its inverse
  // when only psi1 has full rank), or orthogonal destroyer vectors for two
  // product states.
  bool matrixRoute = false;
  double normalityResidual = 0.0;
  bool routesAgree = true;
  ExtractionWitness witness;

  explicit operator bool() const { return ok; }
};

DestructionCheck check_destruction(const BasisPair& pair, Side destroyer, double tol = kDefaultTol);

struct ClassificationReport {
  bool extractAtAlice = false;
  bool extractAtBob = false;
  bool symmetric = false;
  bool destroyByAlice = false;
  bool destroyByBob = false;
  ExtractionCheck alice;
  ExtractionCheck bob;
  bool destructionRoutesAgree = true;
  bool psi0Degenerate = false;
  bool psi1Degenerate = false;
  bool psi0Product = false;
  bool psi1Product = false;
};

ClassificationReport classify(const BasisPair& pair, double tol = kDefaultTol);

// Projective basis for the controlling party that leaves both outcomes in
// extracted form at the target (Alice basis for a Bob target and vice versa).
// Requires check_extraction(pair, target).
QubitBasis controller_basis(const BasisPair& pair, Side target, double tol = kDefaultTol);

// alpha|psi0> + beta|psi1> = sum_k sqrt(p_k)|g_k>_A (x) u_k(alpha|e0> + beta|e1>)_B.
struct RandomUnitaryForm {
  std::array<double, 2> p{1.0, 0.0};
  std::array<Mat2, 2> u{Mat2::Identity(), Mat2::Identity()};
  QubitBasis environment;
};

// Throws PreconditionFailed("not extractable at Bob") when the pair does not
// admit extraction at Bob.
RandomUnitaryForm to_random_unitary_form(const BasisPair& pair, double tol = kDefaultTol);
Vec4 reconstruct(const RandomUnitaryForm& form, Complex alpha, Complex beta);

}  // namespace locckit
