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

#include <json.hpp>

#include "locckit/emeasure.hpp"
#include "locckit/encoding.hpp"
#include "locckit/linalg.hpp"
#include "locckit/protocols.hpp"
#include "locckit/simulator.hpp"

// JSON encodings. Complex numbers are [re, im]; two-qubit vectors are four
// complex entries in A-major order; matrices are four entries row-major.
// Parsing throws InvalidInput on malformed documents.
namespace locckit {

using nlohmann::json;

json to_json(Complex z);
json to_json(const Vec2& v);
json to_json(const Vec4& v);
json to_json(const Mat2& m);
json to_json(const QubitBasis& b);
json to_json(const BasisPair& p);
json to_json(const ExtractionParams& p);
json to_json(const SchmidtForm& f);
json to_json(const ExtractionWitness& w);
json to_json(const ExtractionCheck& c);
json to_json(const DestructionCheck& c);
json to_json(const ClassificationReport& r);
json to_json(const RandomUnitaryForm& f);
json to_json(const MeasurementSet& m);
json to_json(const SAFamily& f);
json to_json(const Decomposition& d);
json to_json(const TwoSidedReport& r);
json to_json(const SphereMinimum& m);
json to_json(const SequentSearchReport& r);
json to_json(const LoccProtocol& p);
json to_json(const DestructionMeasurement& m);
json to_json(const std::vector<PathStep>& path);
json to_json(const std::vector<DriftRow>& rows);
json to_json(const VerificationReport& r);
json to_json(const SearchReport& r);

Side side_from_json(const json& j);
Complex complex_from_json(const json& j);
Vec2 vec2_from_json(const json& j);
Vec4 vec4_from_json(const json& j);
Mat2 mat2_from_json(const json& j);
QubitBasis basis_from_json(const json& j);
BasisPair pair_from_json(const json& j);
ExtractionParams params_from_json(const json& j);
MeasurementSet measurement_from_json(const json& j);
LoccProtocol protocol_from_json(const json& j);
DestructionMeasurement destruction_from_json(const json& j);

// Parses text, mapping syntax errors to InvalidInput.
json parse_json(const std::string& text);

}  // namespace locckit
