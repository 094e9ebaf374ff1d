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

#include "locckit/protocols.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "locckit/errors.hpp"

namespace locckit {

namespace {

Mat2 projector(const Vec2& v) { return v * v.adjoint(); }

}  // namespace

LoccProtocol leaf_node() { return LoccProtocol{}; }

LoccProtocol identity_protocol(Side actor) {
  LoccProtocol p;
  p.actor = actor;
  p.operators = {Mat2::Identity()};
  p.children = {leaf_node()};
  return p;
}

std::size_t leaf_count(const LoccProtocol& p) {
  if (p.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : p.children) n += leaf_count(c);
  return n;
}

std::size_t depth(const LoccProtocol& p) {
  if (p.is_leaf()) return 0;
  std::size_t d = 0;
  for (const auto& c : p.children) d = std::max(d, depth(c));
  return d + 1;
}

void require_well_formed(const LoccProtocol& p, double tol) {
  if (p.is_leaf()) {
    if (!p.children.empty()) throw InvalidInput("leaf node has children");
    return;
  }
  if (p.children.size() != p.operators.size())
    throw InvalidInput("protocol node needs one child per operator");
  require_complete(p.measurement(), tol);
  for (const auto& c : p.children) require_well_formed(c, tol);
}

double max_completeness_defect(const LoccProtocol& p) {
  if (p.is_leaf()) return 0.0;
  double d = completeness_defect(p.measurement());
  for (const auto& c : p.children) d = std::max(d, max_completeness_defect(c));
  return d;
}

LoccProtocol swap_actors(const LoccProtocol& p) {
  LoccProtocol out = p;
  out.actor = other(p.actor);
  for (auto& c : out.children) c = swap_actors(c);
  return out;
}

LoccProtocol synth_extraction(const BasisPair& pair, Side target, double tol) {
  if (!check_extraction(pair, target, tol).ok)
    throw PreconditionFailed("extraction conditions not met");
  const Side controller = other(target);
  const QubitBasis g = controller_basis(pair, target, tol);

  LoccProtocol root;
  root.actor = controller;
  for (int k = 0; k < 2; ++k) {
    root.operators.push_back(projector(g[k]));
    const Vec2 b0 = contract(pair.psi0, g[k], controller);
    const Vec2 b1 = contract(pair.psi1, g[k], controller);
    Mat2 v = Mat2::Identity();
    if (b0.norm() > 1e-14 && b1.norm() > 1e-14) {
      const Vec2 u0 = b0.normalized();
      const Vec2 u1 = b1.normalized();
      if (std::abs(u0.dot(u1)) > tol)
        throw InternalError("post-measurement target vectors are not orthogonal");
      v.row(0) = u0.adjoint();
      v.row(1) = u1.adjoint();
      v = closest_unitary(v);
    }
    LoccProtocol fix;
    fix.actor = target;
    fix.operators = {v};
    fix.children = {leaf_node()};
    root.children.push_back(std::move(fix));
  }
  return root;
}

WeakRound synth_weak_round(const BasisPair& pair, double t, double tau0, double tau1, Side target,
                           double tol) {
  for (double tau : {tau0, tau1})
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidInput("weights must lie in [0, 1]");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("t must be a finite non-negative number");
  if (!check_extraction(pair, target, tol).ok)
    throw PreconditionFailed("extraction conditions not met");
  const Side controller = other(target);
  const SAFamily fam = compute_sa_family(pair, controller, tol);
  if (!fam.usable()) throw PreconditionFailed("no one-parameter family");
  const QubitBasis b = sa_basis(fam, t);
  const Mat2 p0 = projector(b.v0);
  const Mat2 p1 = projector(b.v1);

  WeakRound out;
  out.measurement.side = controller;
  out.measurement.operators = {std::sqrt(tau0) * p0 + std::sqrt(tau1) * p1,
                               std::sqrt(1.0 - tau0) * p0 + std::sqrt(1.0 - tau1) * p1};
  for (int i = 0; i < 2; ++i) {
    const BasisPair post = apply_local(out.measurement.operators[i], controller, pair);
    const double prob = 0.5 * (post.psi0.squaredNorm() + post.psi1.squaredNorm());
    out.probability[i] = prob;
    out.outcomes[i] = prob > 0.0 ? BasisPair{post.psi0 / std::sqrt(prob), post.psi1 / std::sqrt(prob)}
                                 : post;
  }
  return out;
}

namespace {

LoccProtocol build_rounds(const BasisPair& pair, const std::vector<RoundSpec>& schedule,
                          std::size_t level, Side target, double tol) {
  if (level == schedule.size()) return synth_extraction(pair, target, tol);
  // A branch already in the extracted form has no weak rounds left to make.
  const Side controller = other(target);
  if (compute_sa_family(pair, controller, tol).status == FamilyStatus::Degenerate)
    return synth_extraction(pair, target, tol);
  const RoundSpec& s = schedule[level];
  const WeakRound wr = synth_weak_round(pair, s.t, s.tau0, s.tau1, target, tol);
  LoccProtocol node;
  node.actor = wr.measurement.side;
  node.operators = wr.measurement.operators;
  for (int i = 0; i < 2; ++i) {
    if (wr.probability[i] <= 1e-14) {
      // Unreachable branch: kept so the tree stays exhaustive.
      node.children.push_back(leaf_node());
      continue;
    }
    node.children.push_back(build_rounds(wr.outcomes[i], schedule, level + 1, target, tol));
  }
  return node;
}

}  // namespace

LoccProtocol synth_multiround(const BasisPair& pair, int depth, const std::vector<RoundSpec>& schedule,
                              Side target, double tol) {
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  if (schedule.size() != static_cast<std::size_t>(depth - 1))
    throw InvalidInput("schedule length must equal depth - 1");
  if (!check_extraction(pair, target, tol).ok)
    throw PreconditionFailed("extraction conditions not met");
  return build_rounds(pair, schedule, 0, target, tol);
}

DestructionMeasurement synth_destruction(const BasisPair& pair, Side destroyer, double tol) {
  const DestructionCheck chk = check_destruction(pair, destroyer, tol);
  if (!chk.ok) throw PreconditionFailed("destruction conditions not met");
  const BasisPair frame = destroyer == Side::Alice ? pair : swap_parties(pair);
  const SchmidtForm f0 = schmidt_decompose(frame.psi0, tol);
  const SchmidtForm f1 = schmidt_decompose(frame.psi1, tol);

  DestructionMeasurement out;
  out.side = destroyer;
  if (f0.rank(tol) == 2 || f1.rank(tol) == 2) {
    const Mat2 x0 = state_to_matrix(frame.psi0);
    const Mat2 x1 = state_to_matrix(frame.psi1);
    const Mat2 z = f0.rank(tol) == 2 ? Mat2(x1 * x0.inverse()) : Mat2(x0 * x1.inverse());
    out.normalityResidual = (z.adjoint() * z - z * z.adjoint()).norm() / z.squaredNorm();
    if (!(out.normalityResidual <= tol)) throw InternalError("Z is not normal");
    // For a normal matrix the Schur form is diagonal and the Schur vectors
    // are an orthonormal eigenbasis.
    Eigen::ComplexSchur<Mat2> schur(z);
    const Mat2& u = schur.matrixU();
    const Mat2& t = schur.matrixT();
    out.eigenbasis = {u.col(0), u.col(1)};
    out.eigenvalues = std::array<Complex, 2>{std::conj(t(0, 0)), std::conj(t(1, 1))};
  } else {
    const Vec2 a0 = f0.alice[0];
    out.eigenbasis = {a0, orthogonal_complement(a0)};
    out.anyBasis = is_parallel(f0.bob[0], f1.bob[0], tol);
  }
  out.operators = {projector(out.eigenbasis.v0), projector(out.eigenbasis.v1)};
  return out;
}

}  // namespace locckit
