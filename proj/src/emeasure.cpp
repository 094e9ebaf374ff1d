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

#include "locckit/emeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "compass.hpp"
#include "locckit/errors.hpp"

namespace locckit {

namespace {

constexpr double kPi = std::numbers::pi;

BasisPair rms_normalized(const BasisPair& pair) {
  const double s = std::sqrt(0.5 * (pair.psi0.squaredNorm() + pair.psi1.squaredNorm()));
  if (s == 0.0) return pair;
  return {pair.psi0 / s, pair.psi1 / s};
}

double residual_of(const FiberDecomposition& f) {
  const double c0 = f.xi.squaredNorm() - f.xiPerp.squaredNorm();
  const double c1 = f.eta.squaredNorm() - f.etaPerp.squaredNorm();
  const double c2 = std::norm(f.xi.dot(f.xiPerp));
  const double c3 = std::norm(f.eta.dot(f.etaPerp));
  return std::sqrt(c0 * c0 + c1 * c1 + c2 + c3);
}

FiberDecomposition fibers_of(const BasisPair& pair, const QubitBasis& basis, Side side) {
  return {contract(pair.psi0, basis.v0, side), contract(pair.psi0, basis.v1, side),
          contract(pair.psi1, basis.v0, side), contract(pair.psi1, basis.v1, side)};
}

double sphere_objective(const BasisPair& unit, Side side, double polar, double azimuth) {
  const double r = residual_of(fibers_of(unit, sphere_basis(polar, azimuth), side));
  return r * r;
}

// Extracted form at the party opposite `side`: both states product with
// parallel vectors on `side`.
bool all_bases_qualify(const BasisPair& pair, Side side, double tol) {
  const BasisPair frame = side == Side::Alice ? pair : swap_parties(pair);
  const SchmidtForm f0 = schmidt_decompose(frame.psi0, tol);
  const SchmidtForm f1 = schmidt_decompose(frame.psi1, tol);
  return f0.rank(tol) == 1 && f1.rank(tol) == 1 && is_parallel(f0.alice[0], f1.alice[0], tol);
}

}  // namespace

double completeness_defect(const MeasurementSet& m) {
  Mat2 sum = Mat2::Zero();
  for (const Mat2& op : m.operators) sum += op.adjoint() * op;
  return (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
}

void require_complete(const MeasurementSet& m, double tol) {
  if (m.operators.empty()) throw InvalidInput("measurement has no operators");
  for (const Mat2& op : m.operators)
    if (!op.allFinite()) throw InvalidInput("measurement operator is not finite");
  if (completeness_defect(m) > tol) throw InvalidInput("incomplete measurement");
}

std::string_view kind_label(MeasurementKind k) {
  switch (k) {
    case MeasurementKind::E: return "E";
    case MeasurementKind::C: return "C";
    case MeasurementKind::Neither: return "neither";
  }
  return "neither";
}

MeasurementKind classify_measurement(const MeasurementSet& m, const BasisPair& pair, double tol) {
  require_complete(m, tol);
  bool scalar = true;
  bool preserving = true;
  for (const Mat2& op : m.operators) {
    const Mat2 pos = op.adjoint() * op;
    const Complex c = pos.trace() / 2.0;
    if ((pos - c * Mat2::Identity()).cwiseAbs().maxCoeff() > tol) scalar = false;
    const Vec4 v0 = apply_local(op, m.side, pair.psi0);
    const Vec4 v1 = apply_local(op, m.side, pair.psi1);
    if (std::abs(v0.dot(v1)) > tol || std::abs(v0.norm() - v1.norm()) > tol) preserving = false;
  }
  if (scalar) return MeasurementKind::C;
  return preserving ? MeasurementKind::E : MeasurementKind::Neither;
}

Decomposition decompose(const BasisPair& pair, const QubitBasis& basis, Side side, double tol) {
  Decomposition d;
  d.fibers = fibers_of(pair, basis, side);
  const FiberDecomposition& f = d.fibers;
  d.flags.xiNorms = std::abs(f.xi.norm() - f.xiPerp.norm()) <= tol;
  d.flags.etaNorms = std::abs(f.eta.norm() - f.etaPerp.norm()) <= tol;
  d.flags.xiOrthogonal = std::abs(f.xi.dot(f.xiPerp)) <= tol;
  d.flags.etaOrthogonal = std::abs(f.eta.dot(f.etaPerp)) <= tol;
  d.residual = residual_of(f);
  return d;
}

BasisPair recompose(const FiberDecomposition& f, const QubitBasis& basis, Side side) {
  const auto join = [&](const Vec2& on0, const Vec2& on1) -> Vec4 {
    if (side == Side::Alice) return product_state(basis.v0, on0) + product_state(basis.v1, on1);
    return product_state(on0, basis.v0) + product_state(on1, basis.v1);
  };
  return {join(f.xi, f.eta), join(f.xiPerp, f.etaPerp)};
}

double deco_residual(const BasisPair& pair, const QubitBasis& basis, Side side) {
  return residual_of(fibers_of(rms_normalized(pair), basis, side));
}

QubitBasis sphere_basis(double polar, double azimuth) {
  const double c = std::cos(polar / 2.0);
  const double s = std::sin(polar / 2.0);
  const Complex e = std::exp(kI * azimuth);
  return {Vec2(c, e * s), Vec2(-std::conj(e) * s, c)};
}

SphereMinimum minimize_deco_residual(const BasisPair& pair, Side side, SphereGrid grid) {
  if (grid.azimuth < 1 || grid.polar < 1) throw InvalidInput("grid must be positive");
  const BasisPair unit = rms_normalized(pair);
  const double dp = kPi / grid.polar;
  const double da = 2.0 * kPi / grid.azimuth;
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 2> x{0.0, 0.0};
  for (int i = 0; i < grid.polar; ++i) {
    const double p = (i + 0.5) * dp;
    for (int j = 0; j < grid.azimuth; ++j) {
      const double a = j * da;
      const double f = sphere_objective(unit, side, p, a);
      if (f < best) {
        best = f;
        x = {p, a};
      }
    }
  }
  const auto obj = [&](const std::array<double, 2>& y) {
    return sphere_objective(unit, side, y[0], y[1]);
  };
  best = detail::compass_minimize<2>(obj, x, std::max(dp, da), 1e-15);
  SphereMinimum out;
  out.residual = std::sqrt(best);
  out.polar = x[0];
  out.azimuth = x[1];
  out.basis = sphere_basis(x[0], x[1]);
  return out;
}

std::string_view status_label(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::Family: return "family";
    case FamilyStatus::Degenerate: return "degenerate";
    case FamilyStatus::Empty: return "empty";
    case FamilyStatus::Inconclusive: return "inconclusive";
  }
  return "empty";
}

SAFamily compute_sa_family(const BasisPair& pair, Side side, double tol, SphereGrid grid) {
  SAFamily fam;
  fam.side = side;
  fam.seed = computational_basis();
  if (all_bases_qualify(pair, side, tol)) {
    fam.status = FamilyStatus::Degenerate;
    fam.seedResidual = deco_residual(pair, fam.seed, side);
    return fam;
  }

  // The target is the party opposite `side`.
  const Side target = other(side);
  bool seeded = false;
  if (check_extraction(pair, target, tol).ok) {
    const QubitBasis b = controller_basis(pair, target, tol);
    const double r = deco_residual(pair, b, side);
    if (r <= kFamilyAccept) {
      fam.seed = b;
      fam.seedResidual = r;
      seeded = true;
    }
  }
  if (!seeded) {
    const SphereMinimum m = minimize_deco_residual(pair, side, grid);
    fam.seed = m.basis;
    fam.seedResidual = m.residual;
    fam.seedFromSearch = true;
    if (m.residual > kFamilyReject) {
      fam.status = FamilyStatus::Empty;
      return fam;
    }
    if (m.residual > kFamilyAccept) {
      fam.status = FamilyStatus::Inconclusive;
      return fam;
    }
  }
  fam.status = FamilyStatus::Family;

  const BasisPair unit = rms_normalized(pair);
  const FiberDecomposition f = fibers_of(unit, fam.seed, side);
  const BasisPair frame = side == Side::Alice ? unit : swap_parties(unit);
  const SchmidtForm s0 = schmidt_decompose(frame.psi0, tol);
  Complex num;
  Complex den;
  if (s0.lambda1 > tol) {
    num = -f.xi.dot(f.etaPerp);
    den = f.eta.dot(f.xiPerp);
  } else {
    num = -(f.xi.dot(f.eta) - f.xiPerp.dot(f.etaPerp));
    den = f.eta.dot(f.xi) - f.etaPerp.dot(f.xiPerp);
  }
  if (std::abs(num) > 0.0 && std::abs(den) > 0.0) {
    Complex e2 = num / den;
    e2 /= std::abs(e2);
    fam.zetaPhase = std::sqrt(e2);
  }
  return fam;
}

QubitBasis family_basis(const QubitBasis& seed, Complex zetaPhase, double t) {
  const double n = std::sqrt(1.0 + t * t);
  return {(seed.v0 + t * zetaPhase * seed.v1) / n,
          (-t * std::conj(zetaPhase) * seed.v0 + seed.v1) / n};
}

QubitBasis sa_basis(const SAFamily& family, double t) {
  if (!family.usable()) throw PreconditionFailed("no one-parameter family");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("t must be a finite non-negative number");
  return family_basis(family.seed, family.zetaPhase, t);
}

WeakFormFit fit_weak_form(const Mat2& op, const SAFamily& family, const BasisPair& pair) {
  Eigen::JacobiSVD<Mat2> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Mat2& v = svd.matrixV();
  WeakFormFit fit;
  fit.tau0 = s(0) * s(0);
  fit.tau1 = s(1) * s(1);
  fit.unitary = svd.matrixU() * v.adjoint();
  fit.basis = {v.col(0), v.col(1)};
  const Mat2 h = v * s.cast<Complex>().asDiagonal() * v.adjoint();
  fit.reconstruction = (fit.unitary * h - op).norm();
  if (std::abs(s(0) - s(1)) <= 1e-12) {
    // Scalar multiple of a unitary: every basis of the family fits.
    fit.basis = family.usable() ? family.seed : computational_basis();
    fit.membership = 0.0;
    fit.t = 0.0;
    return fit;
  }
  fit.membership = deco_residual(pair, fit.basis, family.side);
  const Complex c0 = family.seed.v0.dot(fit.basis.v0);
  const Complex c1 = family.seed.v1.dot(fit.basis.v0);
  fit.t = std::abs(c0) > 0.0 ? std::abs(c1) / std::abs(c0) : std::numeric_limits<double>::infinity();
  return fit;
}

TwoSidedReport check_two_sided_identities(const BasisPair& pair, const std::vector<double>& tSamples,
                                          double tol) {
  const SAFamily fa = compute_sa_family(pair, Side::Alice, tol);
  const SAFamily fb = compute_sa_family(pair, Side::Bob, tol);
  if (!fa.usable() || !fb.usable())
    throw PreconditionFailed("one side has no E-measurement");
  TwoSidedReport rep;
  for (double t : tSamples) {
    const FiberDecomposition f = fibers_of(pair, sa_basis(fa, t), Side::Alice);
    const double nv = std::abs(f.xi.norm() - f.eta.norm());
    const double ov = std::abs(f.xi.dot(f.eta) + f.xiPerp.dot(f.etaPerp));
    rep.t.push_back(t);
    rep.normViolation.push_back(nv);
    rep.overlapViolation.push_back(ov);
    rep.maxViolation = std::max({rep.maxViolation, nv, ov});
  }
  return rep;
}

SequentSearchReport falsify_sequent_e(const BasisPair& pair, const MeasurementSet& first,
                                      double tol, SphereGrid grid) {
  if (classify_measurement(first, pair, tol) != MeasurementKind::E)
    throw PreconditionFailed("first measurement is not an E-measurement");
  SequentSearchReport rep;
  rep.searcher = other(first.side);
  rep.grid = grid;
  for (const Mat2& op : first.operators) {
    const BasisPair post = apply_local(op, first.side, pair);
    const double prob = 0.5 * (post.psi0.squaredNorm() + post.psi1.squaredNorm());
    rep.probability.push_back(prob);
    if (prob <= 1e-14) {
      rep.best.push_back(SphereMinimum{});
      continue;
    }
    const SphereMinimum m = minimize_deco_residual(post, rep.searcher, grid);
    rep.jointResidual = std::max(rep.jointResidual, m.residual);
    rep.best.push_back(m);
  }
  return rep;
}

}  // namespace locckit
