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

#include <string_view>
#include <vector>

#include "locckit/encoding.hpp"
#include "locckit/linalg.hpp"

namespace locckit {

struct MeasurementSet {
  Side side = Side::Alice;
  std::vector<Mat2> operators;
};

// max |sum_i M_i^dag M_i - I| entrywise.
double completeness_defect(const MeasurementSet& m);
// Throws InvalidInput("incomplete measurement") when the defect exceeds tol.
void require_complete(const MeasurementSet& m, double tol = kDefaultTol);

enum class MeasurementKind { E, C, Neither };
std::string_view kind_label(MeasurementKind k);

// C: every M_i^dag M_i is a multiple of the identity. E: not C, and every
// outcome keeps the propagated basis states orthogonal with equal norms.
MeasurementKind classify_measurement(const MeasurementSet& m, const BasisPair& pair,
                                     double tol = kDefaultTol);

// psi0 = |0>|xi> + |1>|eta>, psi1 = |0>|xiPerp> + |1>|etaPerp>, where {|0>,|1>}
// is a basis of one party and the fibers live on the other.
struct FiberDecomposition {
  Vec2 xi;
  Vec2 eta;
  Vec2 xiPerp;
  Vec2 etaPerp;
};

struct DecoFlags {
  bool xiNorms = false;
  bool etaNorms = false;
  bool xiOrthogonal = false;
  bool etaOrthogonal = false;

  bool all() const { return xiNorms && etaNorms && xiOrthogonal && etaOrthogonal; }
};

struct Decomposition {
  FiberDecomposition fibers;
  DecoFlags flags;
  // Euclidean norm of (|xi|^2 - |xiPerp|^2, |eta|^2 - |etaPerp|^2,
  // |<xi|xiPerp>|, |<eta|etaPerp>|).
  double residual = 0.0;
};

// `basis` belongs to `side`. The pair is used as given (no renormalization).
Decomposition decompose(const BasisPair& pair, const QubitBasis& basis, Side side = Side::Alice,
                        double tol = kDefaultTol);
// Inverse of decompose.
BasisPair recompose(const FiberDecomposition& f, const QubitBasis& basis, Side side = Side::Alice);

// Residual of decompose() after rescaling the pair by its rms norm.
double deco_residual(const BasisPair& pair, const QubitBasis& basis, Side side = Side::Alice);

// Basis with Bloch vector (sin p cos a, sin p sin a, cos p) for v0.
QubitBasis sphere_basis(double polar, double azimuth);

struct SphereGrid {
  int azimuth = 360;
  int polar = 180;
};

struct SphereMinimum {
  double residual = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
  QubitBasis basis;
};

// Dense grid over the sphere followed by local refinement from the best cell
// (ties broken by lowest cell index).
SphereMinimum minimize_deco_residual(const BasisPair& pair, Side side, SphereGrid grid = {});

enum class FamilyStatus {
  Family,        // one-parameter family of bases
  Degenerate,    // every basis qualifies (extracted form at the other party)
  Empty,         // no basis qualifies
  Inconclusive,  // best residual between the accept and reject thresholds
};
std::string_view status_label(FamilyStatus s);

inline constexpr double kFamilyAccept = 1e-9;
inline constexpr double kFamilyReject = 1e-6;

struct SAFamily {
  Side side = Side::Alice;
  FamilyStatus status = FamilyStatus::Empty;
  QubitBasis seed;
  Complex zetaPhase{1.0, 0.0};
  double seedResidual = 0.0;
  bool seedFromSearch = false;

  // True for a one-parameter family; false when every basis qualifies or
  // none does.
  bool usable() const { return status == FamilyStatus::Family; }
  bool degenerate() const { return status == FamilyStatus::Degenerate; }
};

SAFamily compute_sa_family(const BasisPair& pair, Side side, double tol = kDefaultTol,
                           SphereGrid grid = {});

// {(|0> + t e^{iz}|1>), (-t e^{-iz}|0> + |1>)} / sqrt(1 + t^2) for any real t.
QubitBasis family_basis(const QubitBasis& seed, Complex zetaPhase, double t);
// Member t >= 0 of a non-degenerate family. Throws PreconditionFailed for a
// degenerate family and InvalidInput for negative t.
QubitBasis sa_basis(const SAFamily& family, double t);

// Fits M = u (sqrt(tau0)|e0><e0| + sqrt(tau1)|e1><e1|) via the polar
// decomposition; membership is the deco residual of {e0, e1}.
struct WeakFormFit {
  double tau0 = 0.0;
  double tau1 = 0.0;
  double t = 0.0;
  QubitBasis basis;
  Mat2 unitary = Mat2::Identity();
  double reconstruction = 0.0;
  double membership = 0.0;
};
WeakFormFit fit_weak_form(const Mat2& op, const SAFamily& family, const BasisPair& pair);

struct TwoSidedReport {
  std::vector<double> t;
  std::vector<double> normViolation;     // | |xi_t| - |eta_t| |
  std::vector<double> overlapViolation;  // |<xi_t|eta_t> + <xiPerp_t|etaPerp_t>|
  double maxViolation = 0.0;
};

// Throws PreconditionFailed("one side has no E-measurement") unless both
// parties have a non-degenerate family.
TwoSidedReport check_two_sided_identities(const BasisPair& pair, const std::vector<double>& tSamples,
                                          double tol = kDefaultTol);

struct SequentSearchReport {
  Side searcher = Side::Bob;
  std::vector<double> probability;
  // Per outcome: smallest deco residual over the searcher's bases. Outcomes
  // with zero weight are reported with residual 0 and skipped in the joint value.
  std::vector<SphereMinimum> best;
  // max over outcomes: a simultaneous E-measurement needs every outcome feasible.
  double jointResidual = 0.0;
  SphereGrid grid;
};

// Throws PreconditionFailed unless `first` is an E-measurement on the pair.
SequentSearchReport falsify_sequent_e(const BasisPair& pair, const MeasurementSet& first,
                                      double tol = kDefaultTol, SphereGrid grid = {});

}  // namespace locckit
