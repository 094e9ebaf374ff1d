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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "locckit/emeasure.hpp"
#include "locckit/encoding.hpp"
#include "locckit/errors.hpp"
#include "locckit/protocols.hpp"
#include "locckit/random.hpp"
#include "locckit/simulator.hpp"
#include "oracles.hpp"

namespace locckit {
namespace {

BasisPair random_extractable(CounterRng& rng) {
  return make_basis_pair(random_params(rng), random_basis(rng), random_basis(rng));
}

double total_probability(const std::vector<BranchOutcome>& leaves) {
  return std::accumulate(leaves.begin(), leaves.end(), 0.0,
                         [](double s, const BranchOutcome& b) { return s + b.probability; });
}

// Alice node measuring unequal weights in a basis unrelated to the pair.
LoccProtocol weak_random_node(const QubitBasis& b) {
  LoccProtocol p;
  p.actor = Side::Alice;
  const Mat2 p0 = b.v0 * b.v0.adjoint();
  const Mat2 p1 = b.v1 * b.v1.adjoint();
  p.operators = {std::sqrt(0.3) * p0 + std::sqrt(0.7) * p1, std::sqrt(0.7) * p0 + std::sqrt(0.3) * p1};
  p.children = {leaf_node(), leaf_node()};
  return p;
}

TEST(Simulator, IdentityRun) {
  CounterRng rng(71);
  const Vec4 psi = random_unit_vec4(rng);
  const auto leaves = run(identity_protocol(), psi);
  ASSERT_EQ(leaves.size(), 1u);
  EXPECT_NEAR(leaves[0].probability, 1.0, 1e-15);
  EXPECT_LT((leaves[0].state - psi).norm(), 1e-15);
}

TEST(Simulator, BellRunIsEquiprobable) {
  const BasisPair pair = bell_pair();
  const auto leaves = run(synth_extraction(pair, Side::Bob), pair.psi0);
  ASSERT_EQ(leaves.size(), 2u);
  EXPECT_NEAR(leaves[0].probability, 0.5, 1e-12);
  EXPECT_NEAR(leaves[1].probability, 0.5, 1e-12);
  EXPECT_EQ(leaves[0].path.size(), 2u);
  EXPECT_EQ(leaves[0].path[0].actor, Side::Alice);
}

TEST(Simulator, DepthThreeProbabilitiesSumToOne) {
  const BasisPair pair = make_basis_pair(asymmetric_params());
  const LoccProtocol p = synth_multiround(pair, 3, {{0.0, 0.3, 0.7}, {1.5, 0.6, 0.4}});
  CounterRng rng(72);
  for (int i = 0; i < 100; ++i) {
    const Amplitudes a = random_amplitudes(rng);
    const auto leaves = run(p, encode(pair, a.alpha, a.beta));
    ASSERT_EQ(leaves.size(), 8u);
    EXPECT_NEAR(total_probability(leaves), 1.0, 1e-10);
  }
}

TEST(Simulator, ProbabilityConservationProperty) {
  CounterRng rng(73);
  for (int i = 0; i < 200; ++i) {
    const BasisPair pair = random_extractable(rng);
    const LoccProtocol p = synth_extraction(pair, Side::Bob);
    EXPECT_NEAR(total_probability(run(p, random_unit_vec4(rng))), 1.0, 1e-10);
    EXPECT_NEAR(total_probability(run(weak_random_node(random_basis(rng)), random_unit_vec4(rng))), 1.0, 1e-10);
  }
}

TEST(Simulator, LinearityProperty) {
  CounterRng rng(74);
  for (int i = 0; i < 200; ++i) {
    const BasisPair pair = random_extractable(rng);
    const LoccProtocol p = i % 2 ? synth_extraction(pair, Side::Bob) : weak_random_node(random_basis(rng));
    const Amplitudes a = random_amplitudes(rng);
    const auto mixed = run(p, encode(pair, a.alpha, a.beta));
    const auto r0 = run(p, pair.psi0);
    const auto r1 = run(p, pair.psi1);
    ASSERT_EQ(mixed.size(), r0.size());
    for (std::size_t k = 0; k < mixed.size(); ++k)
      EXPECT_LT((mixed[k].raw - (a.alpha * r0[k].raw + a.beta * r1[k].raw)).norm(), 1e-12);
  }
}

TEST(Simulator, AmplitudesAreUnit) {
  CounterRng rng(75);
  for (int i = 0; i < 100; ++i) {
    const Amplitudes a = random_amplitudes(rng);
    EXPECT_NEAR(std::norm(a.alpha) + std::norm(a.beta), 1.0, 1e-14);
  }
  const auto in = probe_inputs(10, 3);
  ASSERT_EQ(in.size(), 14u);
  EXPECT_EQ(in[0].alpha, canonical_probes()[0].alpha);
}

TEST(Simulator, VerifyExtractionPassesOnOwnPair) {
  CounterRng rng(76);
  for (int i = 0; i < 100; ++i) {
    const BasisPair pair = random_extractable(rng);
    const VerificationReport r = verify_extraction(pair, synth_extraction(pair, Side::Bob), Side::Bob, 100, i);
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.maxInfidelity, 1e-9);
    EXPECT_LE(r.maxDrift, 1e-10);
    EXPECT_EQ(r.inputs, 104u);
  }
}

TEST(Simulator, VerifyExtractionFailures) {
  CounterRng rng(77);
  const BasisPair asym = make_basis_pair(asymmetric_params());
  const VerificationReport id = verify_extraction(asym, identity_protocol(), Side::Bob, 50, 1);
  EXPECT_FALSE(id.pass);
  EXPECT_GE(id.maxInfidelity, 0.01);
  for (int i = 0; i < 20; ++i) {
    const BasisPair p = random_extractable(rng);
    const BasisPair q = random_extractable(rng);
    EXPECT_FALSE(verify_extraction(q, synth_extraction(p, Side::Bob), Side::Bob, 50, i).pass) << i;
  }
}

TEST(Simulator, VerifyDestruction) {
  CounterRng rng(78);
  const BasisPair destructible = destructible_pair(0.6, 0.4, 0.3, 1.1);
  const DestructionMeasurement m = synth_destruction(destructible, Side::Alice);
  const VerificationReport ok = verify_destruction(destructible, m, 100, 2);
  EXPECT_TRUE(ok.pass);
  EXPECT_LE(ok.maxNormalizationDefect, 1e-10);

  // Same measurement on a pair extractable at Bob only.
  const BasisPair asym = make_basis_pair(asymmetric_params());
  EXPECT_FALSE(verify_destruction(asym, m, 50, 3).pass);

  for (int i = 0; i < 20; ++i) {
    const QubitBasis b = random_basis(rng);
    DestructionMeasurement r = m;
    r.operators = {b.v0 * b.v0.adjoint(), b.v1 * b.v1.adjoint()};
    EXPECT_FALSE(verify_destruction(destructible, r, 50, i).pass) << i;
  }
}

TEST(Simulator, DriftAudit) {
  const BasisPair asym = make_basis_pair(asymmetric_params());
  const auto ok = drift_audit(synth_multiround(asym, 3, {{0.0, 0.3, 0.7}, {1.5, 0.6, 0.4}}), asym);
  EXPECT_LE(max_drift(ok), 1e-10);
  EXPECT_FALSE(ok.empty());

  const auto id = drift_audit(identity_protocol(), asym);
  EXPECT_EQ(max_drift(id), 0.0);

  CounterRng rng(79);
  const LoccProtocol bad = weak_random_node(random_basis(rng));
  EXPECT_NE(classify_measurement(bad.measurement(), asym), MeasurementKind::E);
  EXPECT_GE(max_drift(drift_audit(bad, asym)), 1e-3);
}

TEST(Simulator, DriftRowsMatchDirectComputation) {
  const BasisPair asym = make_basis_pair(asymmetric_params());
  CounterRng rng(80);
  const LoccProtocol bad = weak_random_node(random_basis(rng));
  const auto rows = drift_audit(bad, asym);
  ASSERT_EQ(rows.size(), 2u);
  for (int k = 0; k < 2; ++k) {
    const Vec4 a = apply_local(bad.operators[k], Side::Alice, asym.psi0);
    const Vec4 b = apply_local(bad.operators[k], Side::Alice, asym.psi1);
    EXPECT_NEAR(rows[k].normGap, std::abs(a.norm() - b.norm()), 1e-14);
  }
}

TEST(Simulator, Determinism) {
  const BasisPair asym = make_basis_pair(asymmetric_params());
  const LoccProtocol p = synth_extraction(asym, Side::Bob);
  const VerificationReport a = verify_extraction(asym, p, Side::Bob, 100, 99);
  const VerificationReport b = verify_extraction(asym, p, Side::Bob, 100, 99);
  EXPECT_EQ(a.maxInfidelity, b.maxInfidelity);
  EXPECT_EQ(a.maxDrift, b.maxDrift);
  const auto x = probe_inputs(50, 17);
  const auto y = probe_inputs(50, 17);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].alpha, y[i].alpha);
    EXPECT_EQ(x[i].beta, y[i].beta);
  }
  const SearchReport s = brute_force_search(asym, Side::Alice);
  const SearchReport t = brute_force_search(asym, Side::Alice);
  EXPECT_EQ(s.bestWorstCaseFidelity, t.bestWorstCaseFidelity);
}

TEST(Simulator, GridParsing) {
  const SearchGrid g = parse_grid("40x20x10");
  EXPECT_EQ(g.polar, 40);
  EXPECT_EQ(g.azimuth, 20);
  EXPECT_EQ(g.phase, 10);
  EXPECT_EQ(format_grid(g), "40x20x10");
  EXPECT_THROW(parse_grid("40x20"), InvalidInput);
  EXPECT_THROW(parse_grid("0x20x10"), InvalidInput);
  EXPECT_THROW(parse_grid("axbxc"), InvalidInput);
}

TEST(Simulator, SearchExamples) {
  const BasisPair asym = make_basis_pair(asymmetric_params());
  const SearchReport a = brute_force_search(asym, Side::Alice);
  EXPECT_LE(a.bestWorstCaseFidelity, 1.0 - 1e-3);
  const SearchReport b = brute_force_search(asym, Side::Bob);
  EXPECT_GE(b.bestWorstCaseFidelity, 1.0 - 1e-6);
  EXPECT_FALSE(b.trace.empty());
  for (const Mat2& u : b.corrections) EXPECT_LT(unitarity_defect(u), 1e-12);
}

TEST(Simulator, OneRoundFidelityAtControllerBasis) {
  CounterRng rng(81);
  for (int i = 0; i < 100; ++i) {
    const BasisPair pair = random_extractable(rng);
    EXPECT_GE(one_round_fidelity(pair, Side::Bob, controller_basis(pair, Side::Bob)), 1.0 - 1e-12);
    const double f = one_round_fidelity(pair, Side::Bob, random_basis(rng));
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(Simulator, SearchOracleConsistency) {
  CounterRng rng(82);
  for (int i = 0; i < 10; ++i) {
    BasisPair pair;
    SAFamily fam;
    do {
      pair = random_extractable(rng);
      fam = compute_sa_family(pair, Side::Alice);
    } while (!fam.usable());
    const SearchReport r = brute_force_search(pair, Side::Bob);
    EXPECT_GE(r.bestWorstCaseFidelity, 1.0 - 1e-6);
    // The argmax basis belongs to the family of qualifying bases.
    EXPECT_LE(deco_residual(pair, r.basis, Side::Alice), 1e-6) << i;
  }
}

TEST(Simulator, HaarPairsStayBelowOne) {
  CounterRng rng(83);
  double sum = 0.0;
  for (int i = 0; i < 10; ++i) {
    const BasisPair pair = haar_pair(rng);
    const double f = brute_force_search(pair, Side::Bob).bestWorstCaseFidelity;
    EXPECT_LT(f, 1.0 - 1e-6);
    sum += f;
  }
  EXPECT_LT(sum / 10.0, 0.99);
}

}  // namespace
}  // namespace locckit
