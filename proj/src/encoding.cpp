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

#include "locckit/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "locckit/emeasure.hpp"
#include "locckit/errors.hpp"

namespace locckit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_basis(const QubitBasis& b, double tol, const char* what) {
  if (!b.v0.allFinite() || !b.v1.allFinite() || !is_orthonormal(b, tol))
    throw InvalidInput(std::string(what) + " basis is not orthonormal");
}

void require_lambda(double lambda0) {
  if (!std::isfinite(lambda0) || lambda0 < 0.5 || lambda0 > 1.0)
    throw InvalidInput("lambda0 must lie in [1/2, 1]");
}

double arg_or_zero(Complex z) { return std::abs(z) > 0.0 ? std::arg(z) : 0.0; }

}  // namespace

double orthogonality_residual(const ExtractionParams& p) {
  const double l1 = std::max(0.0, 1.0 - p.lambda0);
  return std::sqrt(p.lambda0 * l1) * std::abs(std::sin(p.bigTheta)) *
         std::abs(1.0 - std::exp(kI * (p.phi / 2.0)));
}

void validate(const ExtractionParams& p, double tol) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.bigTheta) || !std::isfinite(p.phi))
    throw InvalidInput("parameters must be finite");
  require_lambda(p.lambda0);
  const double l1 = 1.0 - p.lambda0;
  if (l1 > tol &&
      std::abs(std::sin(p.bigTheta)) * std::abs(1.0 - std::exp(kI * (p.phi / 2.0))) > tol)
    throw InvalidInput("orthogonality violated");
}

double pair_defect(const BasisPair& pair) {
  return std::max({std::abs(pair.psi0.norm() - 1.0), std::abs(pair.psi1.norm() - 1.0),
                   std::abs(pair.psi0.dot(pair.psi1))});
}

void require_orthonormal(const BasisPair& pair, double tol) {
  if (!pair.psi0.allFinite() || !pair.psi1.allFinite())
    throw InvalidInput("basis pair has non-finite amplitudes");
  if (pair_defect(pair) > tol) throw InvalidInput("basis pair is not orthonormal");
}

BasisPair swap_parties(const BasisPair& pair) {
  return {swap_parties(pair.psi0), swap_parties(pair.psi1)};
}

BasisPair apply_local(const Mat2& op, Side side, const BasisPair& pair) {
  return {apply_local(op, side, pair.psi0), apply_local(op, side, pair.psi1)};
}

Vec4 encode(const BasisPair& pair, Complex alpha, Complex beta) {
  return alpha * pair.psi0 + beta * pair.psi1;
}

BasisPair make_basis_pair(const ExtractionParams& p, const QubitBasis& alice, const QubitBasis& bob,
                          double tol) {
  validate(p, tol);
  require_basis(alice, tol, "alice");
  require_basis(bob, tol, "bob");
  const double l0 = p.lambda0;
  const double l1 = 1.0 - l0;
  const Vec2& a0 = alice.v0;
  const Vec2& a1 = alice.v1;
  const Vec2 a0p = std::exp(-kI * p.theta) * std::cos(p.bigTheta) * a0 + std::sin(p.bigTheta) * a1;
  const Vec2 a1p = std::exp(kI * (p.phi / 2.0)) *
                   (-std::sin(p.bigTheta) * a0 + std::exp(kI * p.theta) * std::cos(p.bigTheta) * a1);
  BasisPair out;
  out.psi0 = std::sqrt(l0) * product_state(a0, bob.v0) + std::sqrt(l1) * product_state(a1, bob.v1);
  out.psi1 = std::sqrt(l0) * product_state(a0p, bob.v1) + std::sqrt(l1) * product_state(a1p, bob.v0);
  return out;
}

BasisPair bell_pair() { return make_basis_pair({0.5, 0.0, 0.0, 0.0}); }

BasisPair extracted_pair() { return make_basis_pair({1.0, 0.0, 0.0, 0.0}); }

ExtractionParams asymmetric_params() { return {0.8, 0.3, 0.0, 0.0}; }

BasisPair symmetric_pair(double lambda0, const QubitBasis& alice, const QubitBasis& bob) {
  require_lambda(lambda0);
  require_basis(alice, kDefaultTol, "alice");
  require_basis(bob, kDefaultTol, "bob");
  const double s0 = std::sqrt(lambda0);
  const double s1 = std::sqrt(1.0 - lambda0);
  const Vec4 p00 = product_state(alice.v0, bob.v0);
  const Vec4 p11 = product_state(alice.v1, bob.v1);
  return {s0 * p00 + s1 * p11, -s0 * p11 + s1 * p00};
}

BasisPair destructible_pair(double lambda0, double gamma, double x, double y,
                            const QubitBasis& alice, const QubitBasis& bob) {
  require_lambda(lambda0);
  require_basis(alice, kDefaultTol, "alice");
  require_basis(bob, kDefaultTol, "bob");
  const Complex p = std::cos(gamma) * std::exp(kI * x);
  const Complex q = std::sin(gamma) * std::exp(kI * y);
  const Complex r = std::cos(gamma) * std::exp(kI * (2.0 * y - x));
  const Vec2 b0p = p * bob.v0 - q * bob.v1;
  const Vec2 b1p = q * bob.v0 + r * bob.v1;
  const double s0 = std::sqrt(lambda0);
  const double s1 = std::sqrt(1.0 - lambda0);
  return {s0 * product_state(alice.v0, bob.v0) + s1 * product_state(alice.v1, bob.v1),
          s0 * product_state(alice.v1, b0p) + s1 * product_state(alice.v0, b1p)};
}

BasisPair haar_pair(CounterRng& rng) {
  const Vec4 psi0 = random_unit_vec4(rng);
  Vec4 v = random_unit_vec4(rng);
  for (int pass = 0; pass < 2; ++pass) v -= psi0.dot(v) * psi0;
  return {psi0, v.normalized()};
}

ExtractionParams random_params(CounterRng& rng) {
  ExtractionParams p;
  p.lambda0 = rng.uniform() < 0.05 ? 1.0 : rng.uniform(0.5, 1.0);
  p.theta = rng.uniform(0.0, 2.0 * kPi);
  if (p.lambda0 == 1.0) {
    p.bigTheta = rng.uniform(0.0, 2.0 * kPi);
    p.phi = rng.uniform(0.0, 4.0 * kPi);
  } else if (rng.uniform() < 0.25) {
    p.bigTheta = rng.uniform() < 0.5 ? 0.0 : kPi;
    p.phi = rng.uniform(0.0, 4.0 * kPi);
  } else {
    p.bigTheta = rng.uniform(0.0, 2.0 * kPi);
    p.phi = 0.0;
  }
  return p;
}

QubitBasis random_basis(CounterRng& rng) {
  const Mat2 u = haar_unitary(rng);
  return {u.col(0), u.col(1)};
}

std::string_view reason_label(Reason r) {
  switch (r) {
    case Reason::None: return "none";
    case Reason::CoefficientMismatch: return "coefficient-mismatch";
    case Reason::BasisMismatch: return "basis-mismatch";
    case Reason::RankMismatch: return "rank-mismatch";
    case Reason::DegenerateOrthogonality: return "degenerate-orthogonality";
  }
  return "none";
}

std::string_view regime_label(SchmidtRegime r) {
  switch (r) {
    case SchmidtRegime::Distinct: return "distinct";
    case SchmidtRegime::Equal: return "equal";
    case SchmidtRegime::Product: return "product";
  }
  return "distinct";
}

ExtractionCheck check_extraction(const BasisPair& pair, Side target, double tol) {
  const BasisPair frame = target == Side::Bob ? pair : swap_parties(pair);
  ExtractionCheck out;
  ExtractionWitness& w = out.witness;
  w.target = target;
  w.first = schmidt_decompose(frame.psi0, tol);
  w.second = schmidt_decompose(frame.psi1, tol);
  for (int k = 0; k < 2; ++k) {
    const Vec2& s = w.second.bob[k];
    const double o0 = std::abs(s.dot(w.first.bob[0]));
    const double o1 = std::abs(s.dot(w.first.bob[1]));
    w.bobMatch[k] = o0 > o1 ? 0 : 1;
    w.matchOverlap[k] = std::max(o0, o1);
  }
  const auto fail = [&](Reason r) {
    out.ok = false;
    out.reason = r;
    return out;
  };

  const int r0 = w.first.rank(tol);
  const int r1 = w.second.rank(tol);
  if (r0 != r1) return fail(Reason::RankMismatch);
  if (std::abs(w.first.lambda0 - w.second.lambda0) > tol) return fail(Reason::CoefficientMismatch);

  if (r0 == 1) {
    w.regime = SchmidtRegime::Product;
    w.bobMatch = {1, 0};
    w.matchOverlap = {std::abs(w.second.bob[0].dot(w.first.bob[1])),
                      std::abs(w.second.bob[1].dot(w.first.bob[0]))};
    if (!is_parallel(w.second.bob[0], w.first.bob[1], tol)) return fail(Reason::BasisMismatch);
    out.ok = true;
    return out;
  }

  const double gap0 = std::abs(w.first.lambda0 - w.first.lambda1);
  const double gap1 = std::abs(w.second.lambda0 - w.second.lambda1);
  if (gap0 < 10.0 * tol || gap1 < 10.0 * tol) {
    w.regime = SchmidtRegime::Equal;
    if (gap0 >= 10.0 * tol || gap1 >= 10.0 * tol) return fail(Reason::CoefficientMismatch);
    if (std::abs(frame.psi0.dot(frame.psi1)) > tol) return fail(Reason::DegenerateOrthogonality);
    out.ok = true;
    return out;
  }

  w.regime = SchmidtRegime::Distinct;
  w.bobMatch = {1, 0};
  w.matchOverlap = {std::abs(w.second.bob[0].dot(w.first.bob[1])),
                    std::abs(w.second.bob[1].dot(w.first.bob[0]))};
  if (!is_parallel(w.second.bob[0], w.first.bob[1], tol) ||
      !is_parallel(w.second.bob[1], w.first.bob[0], tol))
    return fail(Reason::BasisMismatch);
  out.ok = true;
  return out;
}

bool check_symmetric(const BasisPair& pair, double tol) {
  return check_extraction(pair, Side::Alice, tol).ok && check_extraction(pair, Side::Bob, tol).ok;
}

DestructionCheck check_destruction(const BasisPair& pair, Side destroyer, double tol) {
  DestructionCheck out;
  const ExtractionCheck ext = check_extraction(pair, destroyer, tol);
  out.ok = ext.ok;
  out.reason = ext.reason;
  out.witness = ext.witness;

  // Matrix route in the frame where the destroyer is Alice.
  const BasisPair frame = destroyer == Side::Alice ? pair : swap_parties(pair);
  const Mat2 x0 = state_to_matrix(frame.psi0);
  const Mat2 x1 = state_to_matrix(frame.psi1);
  const SchmidtForm f0 = schmidt_decompose(frame.psi0, tol);
  const SchmidtForm f1 = schmidt_decompose(frame.psi1, tol);
  if (f0.rank(tol) == 2 || f1.rank(tol) == 2) {
    const Mat2 z = f0.rank(tol) == 2 ? Mat2(x1 * x0.inverse()) : Mat2(x0 * x1.inverse());
    const double n2 = z.squaredNorm();
    out.normalityResidual = n2 > 0.0 ? (z.adjoint() * z - z * z.adjoint()).norm() / n2 : 0.0;
    // A rank-deficient Z cannot be normal for an orthogonal pair; the rank
    // condition makes this explicit when the residual alone is inconclusive.
    const bool fullRank = f0.rank(tol) == 2 && f1.rank(tol) == 2;
    out.matrixRoute = fullRank && out.normalityResidual <= tol;
  } else {
    out.normalityResidual = 0.0;
    out.matrixRoute = std::abs(f0.alice[0].dot(f1.alice[0])) <= tol;
  }
  out.routesAgree = out.matrixRoute == out.ok;
  return out;
}

ClassificationReport classify(const BasisPair& pair, double tol) {
  ClassificationReport r;
  r.alice = check_extraction(pair, Side::Alice, tol);
  r.bob = check_extraction(pair, Side::Bob, tol);
  r.extractAtAlice = r.alice.ok;
  r.extractAtBob = r.bob.ok;
  r.symmetric = check_symmetric(pair, tol);
  const DestructionCheck da = check_destruction(pair, Side::Alice, tol);
  const DestructionCheck db = check_destruction(pair, Side::Bob, tol);
  r.destroyByAlice = da.ok;
  r.destroyByBob = db.ok;
  r.destructionRoutesAgree = da.routesAgree && db.routesAgree;
  const SchmidtForm& f0 = r.bob.witness.first;
  const SchmidtForm& f1 = r.bob.witness.second;
  r.psi0Degenerate = f0.degenerate;
  r.psi1Degenerate = f1.degenerate;
  r.psi0Product = f0.rank(tol) == 1;
  r.psi1Product = f1.rank(tol) == 1;
  return r;
}

QubitBasis controller_basis(const BasisPair& pair, Side target, double tol) {
  const ExtractionCheck chk = check_extraction(pair, target, tol);
  if (!chk.ok) throw PreconditionFailed("extraction conditions not met");
  const BasisPair frame = target == Side::Bob ? pair : swap_parties(pair);
  const SchmidtForm& f = chk.witness.first;
  const Vec2& a0 = f.alice[0];
  const Vec2& a1 = f.alice[1];
  const bool full = chk.witness.regime != SchmidtRegime::Product;

  // Controller-side vectors of psi1 relative to the Schmidt basis of psi0.
  const Vec2 a0p = contract(frame.psi1, f.bob[1], Side::Bob) / std::sqrt(f.lambda0);
  const Complex c0 = a0.dot(a0p);
  const Complex c1 = a1.dot(a0p);

  std::vector<double> candidates;
  if (std::abs(c0) > 0.0 && std::abs(c1) > 0.0) candidates.push_back(std::arg(c1) - std::arg(c0));
  if (full) {
    const Vec2 a1p = contract(frame.psi1, f.bob[0], Side::Bob) / std::sqrt(f.lambda1);
    const Complex d1 = a1.dot(a1p);
    if (std::abs(c0) > 0.0 && std::abs(d1) > 0.0)
      candidates.push_back(0.5 * (arg_or_zero(d1) - arg_or_zero(c0)));
  }
  candidates.push_back(0.0);

  const double r = 1.0 / std::sqrt(2.0);
  QubitBasis best;
  double bestResidual = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    const Complex ph = std::exp(kI * theta);
    const QubitBasis b{r * (a0 - kI * ph * a1), r * (-kI * std::conj(ph) * a0 + a1)};
    const double res = deco_residual(frame, b, Side::Alice);
    if (res < bestResidual) {
      bestResidual = res;
      best = b;
    }
  }
  return best;
}

RandomUnitaryForm to_random_unitary_form(const BasisPair& pair, double tol) {
  const ExtractionCheck chk = check_extraction(pair, Side::Bob, tol);
  if (!chk.ok) throw PreconditionFailed("not extractable at Bob");
  const SchmidtForm& f = chk.witness.first;
  QubitBasis env{f.alice[0], f.alice[1]};
  if (deco_residual(pair, env, Side::Alice) > 1e-12) env = controller_basis(pair, Side::Bob, tol);

  RandomUnitaryForm out;
  std::array<int, 2> order{0, 1};
  std::array<double, 2> p{};
  std::array<Mat2, 2> u;
  for (int k = 0; k < 2; ++k) {
    const Vec2 v0 = contract(pair.psi0, env[k], Side::Alice);
    const Vec2 v1 = contract(pair.psi1, env[k], Side::Alice);
    p[k] = 0.5 * (v0.squaredNorm() + v1.squaredNorm());
    if (v0.norm() < 1e-12 || v1.norm() < 1e-12) {
      u[k] = Mat2::Identity();
      continue;
    }
    Mat2 raw;
    raw.col(0) = v0 / v0.norm();
    raw.col(1) = v1 / v1.norm();
    u[k] = closest_unitary(raw);
  }
  if (p[1] > p[0]) order = {1, 0};
  const double total = p[0] + p[1];
  for (int k = 0; k < 2; ++k) {
    out.p[k] = p[order[k]] / total;
    out.u[k] = u[order[k]];
  }
  out.environment = {env[order[0]], env[order[1]]};
  return out;
}

Vec4 reconstruct(const RandomUnitaryForm& form, Complex alpha, Complex beta) {
  const Vec2 phi(alpha, beta);
  Vec4 out = Vec4::Zero();
  for (int k = 0; k < 2; ++k)
    out += std::sqrt(form.p[k]) * product_state(form.environment[k], form.u[k] * phi);
  return out;
}

}  // namespace locckit
