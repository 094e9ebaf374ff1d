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
#include <numbers>

#include "locckit/encoding.hpp"
#include "locckit/errors.hpp"
#include "locckit/random.hpp"
#include "locckit/simulator.hpp"
#include "oracles.hpp"

namespace locckit {
namespace {

constexpr double kPi = std::numbers::pi;

double phase_free_distance(const Vec4& a, const Vec4& b) { return std::sqrt(std::max(0.0, 1.0 - std::norm(a.dot(b)))); }

BasisPair random_extractable(CounterRng& rng) {
  return make_basis_pair(random_params(rng), random_basis(rng), random_basis(rng));
}

BasisPair destructible(double l0, CounterRng& rng) {
  return destructible_pair(l0, rng.uniform(0, kPi), rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi),
                           random_basis(rng), random_basis(rng));
}

TEST(Encoding, ExtractedFormExample) {
  const BasisPair p = make_basis_pair({1.0, 0.0, 0.0, 0.0});
  EXPECT_LT(phase_free_distance(p.psi0, Vec4(1, 0, 0, 0)), 1e-12);
  EXPECT_LT(phase_free_distance(p.psi1, Vec4(0, 1, 0, 0)), 1e-12);
  EXPECT_TRUE(check_extraction(p, Side::Bob).ok);
}

TEST(Encoding, MaximallyEntangledExample) {
  const double s = 1.0 / std::sqrt(2.0);
  const BasisPair p = make_basis_pair({0.5, 0.0, 0.0, 0.0});
  EXPECT_LT(phase_free_distance(p.psi0, Vec4(s, 0, 0, s)), 1e-12);
  EXPECT_LT(phase_free_distance(p.psi1, Vec4(0, s, s, 0)), 1e-12);
}

TEST(Encoding, AsymmetricExample) {
  const BasisPair p = make_basis_pair(asymmetric_params());
  EXPECT_LT(pair_defect(p), 1e-12);
  EXPECT_TRUE(check_extraction(p, Side::Bob).ok);
}

TEST(Encoding, ValidationErrors) {
  try {
    make_basis_pair({0.8, 0.0, 1.0, 1.0});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("orthogonality violated"), std::string::npos);
  }
  EXPECT_THROW(make_basis_pair({0.4, 0.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(make_basis_pair({1.1, 0.0, 0.0, 0.0}), InvalidInput);
  EXPECT_THROW(make_basis_pair({0.8, std::nan(""), 0.0, 0.0}), InvalidInput);
  // phi is free at rank 1 and at bigTheta in {0, pi}.
  EXPECT_NO_THROW(make_basis_pair({1.0, 0.2, 1.0, 1.0}));
  EXPECT_NO_THROW(make_basis_pair({0.7, 0.2, kPi, 1.3}));
  EXPECT_THROW(make_basis_pair({0.8, 0.0, 0.0, 0.0}, computational_basis(), QubitBasis{Vec2(1, 0), Vec2(1, 1)}),
               InvalidInput);
}

TEST(Encoding, RandomParamsAreExtractableAtBob) {
  CounterRng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const ExtractionParams params = random_params(rng);
    const BasisPair p = make_basis_pair(params, random_basis(rng), random_basis(rng));
    ASSERT_LT(pair_defect(p), 1e-12) << i;
    const ExtractionCheck c = check_extraction(p, Side::Bob);
    ASSERT_TRUE(c.ok) << i << " " << reason_label(c.reason);
  }
}

TEST(Encoding, CheckExtractionExamples) {
  const BasisPair ext{oracle::kron(Vec2(0.6, 0.8), Vec2(1, 0)), oracle::kron(Vec2(0.6, 0.8), Vec2(0, 1))};
  EXPECT_TRUE(check_extraction(ext, Side::Bob).ok);
  EXPECT_TRUE(check_extraction(bell_pair(), Side::Alice).ok);
  EXPECT_TRUE(check_extraction(bell_pair(), Side::Bob).ok);
  const BasisPair asym = make_basis_pair(asymmetric_params());
  EXPECT_FALSE(check_extraction(asym, Side::Alice).ok);
  EXPECT_TRUE(check_extraction(asym, Side::Bob).ok);
}

TEST(Encoding, ReasonCodes) {
  CounterRng rng(22);
  // Product state paired with an entangled one.
  const double s = 1.0 / std::sqrt(2.0);
  const BasisPair rank{Vec4(1, 0, 0, 0), Vec4(0, s, s, 0)};
  EXPECT_EQ(check_extraction(rank, Side::Bob).reason, Reason::RankMismatch);
  // Different Schmidt coefficients.
  const BasisPair coeff{Vec4(std::sqrt(0.8), 0, 0, std::sqrt(0.2)), Vec4(0, std::sqrt(0.7), -std::sqrt(0.3), 0)};
  EXPECT_EQ(check_extraction(coeff, Side::Bob).reason, Reason::CoefficientMismatch);
  // Same coefficients, Bob vectors not swapped.
  const BasisPair basis{Vec4(std::sqrt(0.8), 0, 0, std::sqrt(0.2)), Vec4(0, -std::sqrt(0.2), std::sqrt(0.8), 0)};
  EXPECT_EQ(check_extraction(basis, Side::Bob).reason, Reason::BasisMismatch);
  // Two maximally entangled states that are not locally distinguishable.
  EXPECT_FALSE(check_extraction(haar_pair(rng), Side::Bob).ok);
  EXPECT_EQ(reason_label(Reason::DegenerateOrthogonality), "degenerate-orthogonality");
}

TEST(Encoding, WitnessReportsBobMatch) {
  const ExtractionCheck c = check_extraction(make_basis_pair(asymmetric_params()), Side::Bob);
  EXPECT_EQ(c.witness.target, Side::Bob);
  EXPECT_EQ(c.witness.regime, SchmidtRegime::Distinct);
  EXPECT_EQ(c.witness.bobMatch[0], 1);
  EXPECT_EQ(c.witness.bobMatch[1], 0);
  EXPECT_GT(c.witness.matchOverlap[0], 1.0 - 1e-9);
}

TEST(Encoding, CheckSymmetricExamples) {
  EXPECT_TRUE(check_symmetric(symmetric_pair(0.7)));
  EXPECT_FALSE(check_symmetric(make_basis_pair(asymmetric_params())));
  EXPECT_FALSE(check_symmetric(extracted_pair()));
  EXPECT_TRUE(check_extraction(extracted_pair(), Side::Bob).ok);
}

TEST(Encoding, CheckDestructionExamples) {
  EXPECT_TRUE(check_destruction(destructible_pair(0.6, 0.4, 0.3, 1.1), Side::Alice).ok);
  EXPECT_TRUE(check_destruction(bell_pair(), Side::Alice).ok);
  EXPECT_FALSE(check_destruction(make_basis_pair(asymmetric_params()), Side::Alice).ok);
  EXPECT_TRUE(check_destruction(make_basis_pair(asymmetric_params()), Side::Bob).ok);
}

TEST(Encoding, ClassifyExamples) {
  const ClassificationReport b = classify(bell_pair());
  EXPECT_TRUE(b.extractAtAlice && b.extractAtBob && b.symmetric && b.destroyByAlice && b.destroyByBob);
  const ClassificationReport a = classify(make_basis_pair(asymmetric_params()));
  EXPECT_TRUE(a.extractAtBob);
  EXPECT_TRUE(a.destroyByBob);
  EXPECT_FALSE(a.extractAtAlice || a.symmetric || a.destroyByAlice);
  CounterRng rng(23);
  for (int i = 0; i < 100; ++i) {
    const ClassificationReport r = classify(haar_pair(rng));
    EXPECT_FALSE(r.extractAtAlice || r.extractAtBob || r.symmetric || r.destroyByAlice || r.destroyByBob);
  }
}

// Mixture of structured and random pairs for the property tests.
std::vector<BasisPair> mixed_pairs(std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<BasisPair> out;
  for (int i = 0; i < 1000; ++i) out.push_back(haar_pair(rng));
  for (int i = 0; i < 400; ++i) out.push_back(random_extractable(rng));
  for (int i = 0; i < 300; ++i) out.push_back(symmetric_pair(rng.uniform(0.5, 1.0), random_basis(rng), random_basis(rng)));
  for (int i = 0; i < 300; ++i) out.push_back(destructible(i % 5 == 0 ? 1.0 : rng.uniform(0.5, 1.0), rng));
  return out;
}

TEST(Encoding, DestroyEqualsExtract) {
  for (const BasisPair& p : mixed_pairs(24)) {
    for (Side s : {Side::Alice, Side::Bob}) {
      const bool ext = check_extraction(p, s).ok;
      const DestructionCheck d = check_destruction(p, s);
      ASSERT_EQ(d.ok, ext);
      ASSERT_EQ(d.matrixRoute, ext);
      ASSERT_TRUE(d.routesAgree);
    }
  }
}

TEST(Encoding, SymmetricIsConjunction) {
  for (const BasisPair& p : mixed_pairs(25)) {
    const ClassificationReport r = classify(p);
    ASSERT_EQ(r.symmetric, r.extractAtAlice && r.extractAtBob);
    ASSERT_EQ(check_symmetric(p), check_extraction(p, Side::Alice).ok && check_extraction(p, Side::Bob).ok);
    ASSERT_EQ(r.destroyByAlice, r.extractAtAlice);
    ASSERT_EQ(r.destroyByBob, r.extractAtBob);
  }
}

TEST(Encoding, VerdictsInvariantUnderLocalUnitaries) {
  CounterRng rng(26);
  const auto pairs = mixed_pairs(27);
  for (std::size_t i = 0; i < pairs.size(); i += 3) {
    const BasisPair& p = pairs[i];
    const BasisPair q = apply_local(haar_unitary(rng), Side::Bob, apply_local(haar_unitary(rng), Side::Alice, p));
    const ClassificationReport a = classify(p);
    const ClassificationReport b = classify(q);
    ASSERT_EQ(a.extractAtAlice, b.extractAtAlice) << i;
    ASSERT_EQ(a.extractAtBob, b.extractAtBob) << i;
    ASSERT_EQ(a.symmetric, b.symmetric) << i;
    ASSERT_EQ(a.destroyByAlice, b.destroyByAlice) << i;
    ASSERT_EQ(a.destroyByBob, b.destroyByBob) << i;
  }
}

TEST(Encoding, SwapPartiesExchangesSides) {
  CounterRng rng(28);
  for (int i = 0; i < 100; ++i) {
    const BasisPair p = random_extractable(rng);
    const BasisPair q = swap_parties(p);
    EXPECT_EQ(check_extraction(p, Side::Bob).ok, check_extraction(q, Side::Alice).ok);
    EXPECT_EQ(check_extraction(p, Side::Alice).ok, check_extraction(q, Side::Bob).ok);
  }
}

TEST(Encoding, ControllerBasisQualifies) {
  CounterRng rng(29);
  for (int i = 0; i < 300; ++i) {
    const BasisPair p = random_extractable(rng);
    const QubitBasis b = controller_basis(p, Side::Bob);
    ASSERT_LT(orthonormality_defect(b), 1e-12);
    ASSERT_LT(oracle::deco_violation(p, b, Side::Alice), 1e-10) << i;
  }
  EXPECT_THROW(controller_basis(make_basis_pair(asymmetric_params()), Side::Alice), PreconditionFailed);
}

TEST(Encoding, RandomUnitaryFormExamples) {
  const RandomUnitaryForm e = to_random_unitary_form(extracted_pair());
  EXPECT_NEAR(e.p[0], 1.0, 1e-12);
  EXPECT_NEAR(e.p[1], 0.0, 1e-12);
  EXPECT_LT(unitarity_defect(e.u[0]), 1e-12);

  const RandomUnitaryForm b = to_random_unitary_form(bell_pair());
  EXPECT_NEAR(b.p[0], 0.5, 1e-12);
  EXPECT_NEAR(b.p[1], 0.5, 1e-12);

  const RandomUnitaryForm a = to_random_unitary_form(make_basis_pair(asymmetric_params()));
  EXPECT_NEAR(a.p[0], 0.8, 1e-12);
  EXPECT_NEAR(a.p[1], 0.2, 1e-12);

  EXPECT_THROW(to_random_unitary_form(swap_parties(make_basis_pair(asymmetric_params()))), PreconditionFailed);
}

TEST(Encoding, RandomUnitaryFormReconstructs) {
  CounterRng rng(30);
  for (int i = 0; i < 500; ++i) {
    const BasisPair p = random_extractable(rng);
    const RandomUnitaryForm f = to_random_unitary_form(p);
    ASSERT_GE(f.p[1], 0.0);
    ASSERT_NEAR(f.p[0] + f.p[1], 1.0, 1e-12);
    ASSERT_LT(orthonormality_defect(f.environment), 1e-12);
    for (const Mat2& u : f.u) ASSERT_LT(unitarity_defect(u), 1e-10);
    for (const Amplitudes& a : canonical_probes())
      ASSERT_LT((reconstruct(f, a.alpha, a.beta) - encode(p, a.alpha, a.beta)).norm(), 1e-10) << i;
  }
}

TEST(Encoding, GeneratorsProduceOrthonormalPairs) {
  CounterRng rng(31);
  for (int i = 0; i < 200; ++i) {
    EXPECT_LT(pair_defect(haar_pair(rng)), 1e-12);
    EXPECT_LT(pair_defect(destructible(rng.uniform(0.5, 1.0), rng)), 1e-12);
    EXPECT_LT(pair_defect(symmetric_pair(rng.uniform(0.5, 1.0), random_basis(rng), random_basis(rng))), 1e-12);
  }
}

}  // namespace
}  // namespace locckit
