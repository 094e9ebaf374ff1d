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

#include "locckit/encoding.hpp"
#include "locckit/errors.hpp"
#include "locckit/json_io.hpp"
#include "locckit/protocols.hpp"
#include "locckit/random.hpp"
#include "locckit/simulator.hpp"

namespace locckit {
namespace {

TEST(JsonIo, ScalarsRoundTrip) {
  const Complex z(0.25, -1.5);
  EXPECT_EQ(complex_from_json(to_json(z)), z);
  const Vec2 v(Complex(1, 2), Complex(3, 4));
  EXPECT_EQ(vec2_from_json(to_json(v)), v);
  CounterRng rng(91);
  const Vec4 w = random_unit_vec4(rng);
  EXPECT_EQ(vec4_from_json(to_json(w)), w);
  const Mat2 m = random_matrix(rng);
  EXPECT_EQ(mat2_from_json(to_json(m)), m);
  EXPECT_EQ(side_from_json("A"), Side::Alice);
  EXPECT_EQ(side_from_json("B"), Side::Bob);
}

TEST(JsonIo, MatrixIsRowMajor) {
  Mat2 m;
  m << 1, 2, 3, 4;
  const json j = to_json(m);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[1][0].get<double>(), 2.0);
  EXPECT_EQ(j[2][0].get<double>(), 3.0);
}

TEST(JsonIo, PairAndParamsRoundTrip) {
  CounterRng rng(92);
  for (int i = 0; i < 50; ++i) {
    const ExtractionParams p = random_params(rng);
    const ExtractionParams q = params_from_json(to_json(p));
    EXPECT_EQ(p.lambda0, q.lambda0);
    EXPECT_EQ(p.theta, q.theta);
    EXPECT_EQ(p.bigTheta, q.bigTheta);
    EXPECT_EQ(p.phi, q.phi);
    const BasisPair a = haar_pair(rng);
    const BasisPair b = pair_from_json(to_json(a));
    EXPECT_EQ(a.psi0, b.psi0);
    EXPECT_EQ(a.psi1, b.psi1);
    const QubitBasis c = random_basis(rng);
    EXPECT_EQ(basis_from_json(to_json(c)).v1, c.v1);
  }
}

TEST(JsonIo, ProtocolRoundTrip) {
  const BasisPair pair = make_basis_pair(asymmetric_params());
  const LoccProtocol p = synth_multiround(pair, 3, {{0.0, 0.3, 0.7}, {1.5, 0.6, 0.4}});
  const LoccProtocol q = protocol_from_json(to_json(p));
  EXPECT_EQ(leaf_count(q), leaf_count(p));
  EXPECT_EQ(depth(q), depth(p));
  EXPECT_EQ(to_json(q), to_json(p));
  EXPECT_TRUE(verify_extraction(pair, q, Side::Bob, 20, 1).pass);
  EXPECT_TRUE(to_json(leaf_node()).at("leaf").get<bool>());
}

TEST(JsonIo, MeasurementRoundTrip) {
  const BasisPair pair = destructible_pair(0.6, 0.4, 0.3, 1.1);
  const DestructionMeasurement m = synth_destruction(pair, Side::Alice);
  const DestructionMeasurement n = destruction_from_json(to_json(m));
  ASSERT_EQ(n.operators.size(), 2u);
  EXPECT_EQ(n.operators[1], m.operators[1]);
  EXPECT_EQ(n.side, Side::Alice);
  EXPECT_TRUE(verify_destruction(pair, n, 20, 1).pass);
  const MeasurementSet s{Side::Bob, {Mat2::Identity()}};
  EXPECT_EQ(measurement_from_json(to_json(s)).side, Side::Bob);
}

TEST(JsonIo, MalformedInputsRejected) {
  EXPECT_THROW(parse_json("{not json"), InvalidInput);
  EXPECT_THROW(complex_from_json(json::array({1.0})), InvalidInput);
  EXPECT_THROW(complex_from_json(json("x")), InvalidInput);
  EXPECT_THROW(vec4_from_json(json::array({json::array({1.0, 0.0})})), InvalidInput);
  EXPECT_THROW(pair_from_json(json::object({{"psi0", to_json(Vec4(1, 0, 0, 0))}})), InvalidInput);
  EXPECT_THROW(side_from_json("C"), InvalidInput);
  EXPECT_THROW(params_from_json(json::object({{"theta", 1.0}, {"lambda0", "big"}})), InvalidInput);
  EXPECT_THROW(protocol_from_json(json::object({{"actor", "A"}})), InvalidInput);
}

TEST(JsonIo, ReportsSerialize) {
  const BasisPair pair = make_basis_pair(asymmetric_params());
  const json c = to_json(classify(pair));
  EXPECT_TRUE(c.at("extractAtBob").get<bool>());
  EXPECT_EQ(c.at("reasons").at("A").get<std::string>(), "basis-mismatch");
  const json v = to_json(verify_extraction(pair, synth_extraction(pair, Side::Bob), Side::Bob, 10, 1));
  EXPECT_TRUE(v.at("pass").get<bool>());
  EXPECT_EQ(v.at("thresholds").at("infidelity").get<double>(), kInfidelityThreshold);
  const json s = to_json(brute_force_search(pair, Side::Alice, parse_grid("20x20x1")));
  EXPECT_EQ(s.at("grid").get<std::string>(), "20x20x1");
  EXPECT_LT(s.at("bestWorstCaseFidelity").get<double>(), 0.999);
}

}  // namespace
}  // namespace locckit
