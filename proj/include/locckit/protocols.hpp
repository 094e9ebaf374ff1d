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
#include <cstddef>
#include <optional>
#include <vector>

#include "locckit/emeasure.hpp"
#include "locckit/encoding.hpp"
#include "locckit/linalg.hpp"

namespace locckit {

// One measurement round. A node without operators is a leaf; otherwise
// children[i] continues the protocol after outcome i.
struct LoccProtocol {
  Side actor = Side::Alice;
  std::vector<Mat2> operators;
  std::vector<LoccProtocol> children;

  bool is_leaf() const { return operators.empty(); }
  MeasurementSet measurement() const { return {actor, operators}; }
};

LoccProtocol leaf_node();
// Single node {I} followed by a leaf.
LoccProtocol identity_protocol(Side actor = Side::Alice);

std::size_t leaf_count(const LoccProtocol& p);
std::size_t depth(const LoccProtocol& p);
// Throws InvalidInput if a node is incomplete or its child count does not
// match its operator count.
void require_well_formed(const LoccProtocol& p, double tol = kDefaultTol);
// Largest completeness defect over all nodes.
double max_completeness_defect(const LoccProtocol& p);
// Exchanges the roles of Alice and Bob in every node.
LoccProtocol swap_actors(const LoccProtocol& p);

// Controller measures projectively in controller_basis(); per outcome the
// target applies the unitary sending the normalized branch vectors to
// |e0>, |e1>. Throws PreconditionFailed("extraction conditions not met").
LoccProtocol synth_extraction(const BasisPair& pair, Side target, double tol = kDefaultTol);

struct WeakRound {
  MeasurementSet measurement;
  std::array<BasisPair, 2> outcomes;  // renormalized per branch
  std::array<double, 2> probability{0.0, 0.0};
};

// Two-outcome measurement by the party opposite `target`:
// M1 = sqrt(tau0) P0 + sqrt(tau1) P1, M2 = sqrt(1 - tau0) P0 + sqrt(1 - tau1) P1
// with P_k projectors onto the family basis at t.
WeakRound synth_weak_round(const BasisPair& pair, double t, double tau0, double tau1,
                           Side target = Side::Bob, double tol = kDefaultTol);

struct RoundSpec {
  double t = 0.0;
  double tau0 = 0.5;
  double tau1 = 0.5;
};

// depth - 1 weak rounds followed by the one-round extraction on every branch.
LoccProtocol synth_multiround(const BasisPair& pair, int depth, const std::vector<RoundSpec>& schedule,
                              Side target = Side::Bob, double tol = kDefaultTol);

struct DestructionMeasurement {
  Side side = Side::Alice;
  std::vector<Mat2> operators;
  QubitBasis eigenbasis;
  // Eigenvalues of Z for the full-rank case; empty for two product states.
  std::optional<std::array<Complex, 2>> eigenvalues;
  double normalityResidual = 0.0;
  // Two product states whose other-party vectors are parallel: any
  // projective basis destroys the information.
  bool anyBasis = false;

  MeasurementSet measurement() const { return {side, operators}; }
};

// Throws PreconditionFailed("destruction conditions not met") and
// InternalError when the pair passes the checker but Z is not normal.
DestructionMeasurement synth_destruction(const BasisPair& pair, Side destroyer,
                                         double tol = kDefaultTol);

}  // namespace locckit
