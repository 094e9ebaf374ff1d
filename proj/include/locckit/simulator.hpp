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
#include <cstdint>
#include <string>
#include <vector>

#include "locckit/encoding.hpp"
#include "locckit/linalg.hpp"
#include "locckit/protocols.hpp"

namespace locckit {

struct PathStep {
  Side actor = Side::Alice;
  int outcome = 0;
};

struct BranchOutcome {
  std::vector<PathStep> path;
  double probability = 0.0;
  Vec4 state = Vec4::Zero();  // normalized unless `normalized` is false
  Vec4 raw = Vec4::Zero();    // unnormalized branch vector
  Complex scalarPhase{1.0, 0.0};
  bool normalized = true;
};

// Exhaustive enumeration of every leaf (no pruning). Zero-weight branches are
// emitted with probability 0 and `normalized` false.
std::vector<BranchOutcome> run(const LoccProtocol& protocol, const Vec4& input);

struct DriftRow {
  std::vector<PathStep> path;  // ends with the outcome of this round
  Side actor = Side::Alice;
  std::size_t depth = 0;
  double overlap = 0.0;  // |<psi0'|psi1'>|
  double normGap = 0.0;  // | |psi0'| - |psi1'| |
};

// Propagates both basis states through every node and outcome.
std::vector<DriftRow> drift_audit(const LoccProtocol& protocol, const BasisPair& pair);
double max_drift(const std::vector<DriftRow>& rows);

struct Amplitudes {
  Complex alpha;
  Complex beta;
};

// (1,0), (0,1), (1,1)/sqrt2, (1,i)/sqrt2.
std::array<Amplitudes, 4> canonical_probes();
// Uniform on the unit 3-sphere of (Re a, Im a, Re b, Im b).
Amplitudes random_amplitudes(CounterRng& rng);
// The canonical probes followed by `samples` seeded draws.
std::vector<Amplitudes> probe_inputs(std::size_t samples, std::uint64_t seed);

struct BranchDiagnostic {
  std::vector<PathStep> path;
  double maxInfidelity = 0.0;
  double minProbability = 1.0;
  double maxProbability = 0.0;
};

inline constexpr double kInfidelityThreshold = 1e-9;
inline constexpr double kDriftThreshold = 1e-10;
inline constexpr double kParallelThreshold = 1e-10;
inline constexpr double kProductThreshold = 1e-10;
inline constexpr double kNormalizationThreshold = 1e-10;

struct VerificationReport {
  std::string task;  // "extract" or "destroy"
  Side side = Side::Bob;
  std::size_t inputs = 0;
  std::uint64_t seed = 0;
  // Extraction: 1 - <phi|rho_target|phi>. Destruction: 1 - fidelity with the
  // per-outcome reference output.
  double maxInfidelity = 0.0;
  double maxDrift = 0.0;
  double maxProbabilityDefect = 0.0;
  double maxProductLambda = 0.0;
  double maxNormalizationDefect = 0.0;
  double infidelityThreshold = kInfidelityThreshold;
  double driftThreshold = kDriftThreshold;
  double productThreshold = kProductThreshold;
  double normalizationThreshold = kNormalizationThreshold;
  bool pass = false;
  std::vector<BranchDiagnostic> perBranch;
};

VerificationReport verify_extraction(const BasisPair& pair, const LoccProtocol& protocol, Side target,
                                     std::size_t samples = 100, std::uint64_t seed = 0);

VerificationReport verify_destruction(const BasisPair& pair, const DestructionMeasurement& m,
                                      std::size_t samples = 100, std::uint64_t seed = 0);

struct SearchGrid {
  int polar = 180;
  int azimuth = 90;
  int phase = 90;
};

// Parses "PxAxF", e.g. "180x90x90". Throws InvalidInput.
SearchGrid parse_grid(const std::string& text);
std::string format_grid(const SearchGrid& g);

struct RefinementStep {
  std::string stage;
  double fidelity = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
  double spacing = 0.0;
};

struct SearchReport {
  Side target = Side::Bob;
  double bestWorstCaseFidelity = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
  double phase = 0.0;
  QubitBasis basis;
  std::array<Mat2, 2> corrections{Mat2::Identity(), Mat2::Identity()};
  SearchGrid grid;
  std::vector<RefinementStep> trace;
};

// Worst-case leaf fidelity of the one-round protocol "controller measures in
// `basis`, target applies the closest unitary to sum_j |e_j><b_j|".
double one_round_fidelity(const BasisPair& pair, Side target, const QubitBasis& basis,
                          std::array<Mat2, 2>* corrections = nullptr);

SearchReport brute_force_search(const BasisPair& pair, Side target, SearchGrid grid = {});

}  // namespace locckit
