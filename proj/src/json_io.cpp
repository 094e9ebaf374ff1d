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

#include "locckit/json_io.hpp"

#include <cmath>
#include <string>

#include "locckit/errors.hpp"

namespace locckit {

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite");
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class V>
V vec_from_json(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InvalidInput(std::string(what) + " must have " + std::to_string(n) + " complex entries");
  V v;
  for (int i = 0; i < n; ++i) v(i) = complex_from_json(j[i]);
  return v;
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Vec2& v) { return json::array({to_json(v(0)), to_json(v(1))}); }

json to_json(const Vec4& v) {
  json a = json::array();
  for (int i = 0; i < 4; ++i) a.push_back(to_json(v(i)));
  return a;
}

json to_json(const Mat2& m) {
  return json::array({to_json(m(0, 0)), to_json(m(0, 1)), to_json(m(1, 0)), to_json(m(1, 1))});
}

json to_json(const QubitBasis& b) { return json::array({to_json(b.v0), to_json(b.v1)}); }

json to_json(const BasisPair& p) { return {{"psi0", to_json(p.psi0)}, {"psi1", to_json(p.psi1)}}; }

json to_json(const ExtractionParams& p) {
  return {{"lambda0", p.lambda0}, {"theta", p.theta}, {"bigTheta", p.bigTheta}, {"phi", p.phi}};
}

json to_json(const SchmidtForm& f) {
  return {{"lambda0", f.lambda0},
          {"lambda1", f.lambda1},
          {"aliceVecs", json::array({to_json(f.alice[0]), to_json(f.alice[1])})},
          {"bobVecs", json::array({to_json(f.bob[0]), to_json(f.bob[1])})},
          {"degenerate", f.degenerate}};
}

json to_json(const ExtractionWitness& w) {
  return {{"target", side_label(w.target)},
          {"regime", regime_label(w.regime)},
          {"psi0", to_json(w.first)},
          {"psi1", to_json(w.second)},
          {"bobMatch", {w.bobMatch[0], w.bobMatch[1]}},
          {"matchOverlap", {w.matchOverlap[0], w.matchOverlap[1]}}};
}

json to_json(const ExtractionCheck& c) {
  return {{"ok", c.ok}, {"reason", reason_label(c.reason)}, {"witness", to_json(c.witness)}};
}

json to_json(const DestructionCheck& c) {
  return {{"ok", c.ok},
          {"reason", reason_label(c.reason)},
          {"matrixRoute", c.matrixRoute},
          {"normalityResidual", c.normalityResidual},
          {"routesAgree", c.routesAgree},
          {"witness", to_json(c.witness)}};
}

json to_json(const ClassificationReport& r) {
  return {{"extractAtAlice", r.extractAtAlice},
          {"extractAtBob", r.extractAtBob},
          {"symmetric", r.symmetric},
          {"destroyByAlice", r.destroyByAlice},
          {"destroyByBob", r.destroyByBob},
          {"reasons", {{"A", reason_label(r.alice.reason)}, {"B", reason_label(r.bob.reason)}}},
          {"witnesses", {{"A", to_json(r.alice.witness)}, {"B", to_json(r.bob.witness)}}},
          {"destructionRoutesAgree", r.destructionRoutesAgree},
          {"degeneracyFlags",
           {{"psi0Degenerate", r.psi0Degenerate},
            {"psi1Degenerate", r.psi1Degenerate},
            {"psi0Product", r.psi0Product},
            {"psi1Product", r.psi1Product}}}};
}

json to_json(const RandomUnitaryForm& f) {
  return {{"p", {f.p[0], f.p[1]}},
          {"u", json::array({to_json(f.u[0]), to_json(f.u[1])})},
          {"environment", to_json(f.environment)}};
}

json to_json(const MeasurementSet& m) {
  json ops = json::array();
  for (const auto& op : m.operators) ops.push_back(to_json(op));
  return {{"side", side_label(m.side)}, {"operators", ops}};
}

json to_json(const SAFamily& f) {
  return {{"side", side_label(f.side)},
          {"status", status_label(f.status)},
          {"degenerate", f.degenerate()},
          {"usable", f.usable()},
          {"seedBasis", to_json(f.seed)},
          {"zetaPhase", to_json(f.zetaPhase)},
          {"seedResidual", f.seedResidual},
          {"seedFromSearch", f.seedFromSearch},
          {"acceptThreshold", kFamilyAccept},
          {"rejectThreshold", kFamilyReject}};
}

json to_json(const Decomposition& d) {
  return {{"xi", to_json(d.fibers.xi)},
          {"eta", to_json(d.fibers.eta)},
          {"xiPerp", to_json(d.fibers.xiPerp)},
          {"etaPerp", to_json(d.fibers.etaPerp)},
          {"flags",
           {{"xiNorms", d.flags.xiNorms},
            {"etaNorms", d.flags.etaNorms},
            {"xiOrthogonal", d.flags.xiOrthogonal},
            {"etaOrthogonal", d.flags.etaOrthogonal}}},
          {"residual", d.residual}};
}

json to_json(const TwoSidedReport& r) {
  return {{"t", r.t},
          {"normViolation", r.normViolation},
          {"overlapViolation", r.overlapViolation},
          {"maxViolation", r.maxViolation}};
}

json to_json(const SphereMinimum& m) {
  return {{"residual", m.residual}, {"polar", m.polar}, {"azimuth", m.azimuth}, {"basis", to_json(m.basis)}};
}

json to_json(const SequentSearchReport& r) {
  json best = json::array();
  for (const auto& b : r.best) best.push_back(to_json(b));
  return {{"searcher", side_label(r.searcher)},
          {"probability", r.probability},
          {"outcomes", best},
          {"jointResidual", r.jointResidual},
          {"grid", {r.grid.azimuth, r.grid.polar}}};
}

json to_json(const LoccProtocol& p) {
  if (p.is_leaf()) return {{"leaf", true}};
  json ops = json::array();
  for (const auto& op : p.operators) ops.push_back(to_json(op));
  json kids = json::array();
  for (const auto& c : p.children) kids.push_back(to_json(c));
  return {{"actor", side_label(p.actor)}, {"operators", ops}, {"children", kids}};
}

json to_json(const DestructionMeasurement& m) {
  json ops = json::array();
  for (const auto& op : m.operators) ops.push_back(to_json(op));
  json ev = nullptr;
  if (m.eigenvalues) ev = json::array({to_json((*m.eigenvalues)[0]), to_json((*m.eigenvalues)[1])});
  return {{"side", side_label(m.side)},
          {"operators", ops},
          {"eigenbasis", to_json(m.eigenbasis)},
          {"eigenvalues", ev},
          {"normalityResidual", m.normalityResidual},
          {"anyBasis", m.anyBasis}};
}

json to_json(const std::vector<PathStep>& path) {
  json a = json::array();
  for (const auto& s : path) a.push_back({side_label(s.actor), s.outcome});
  return a;
}

json to_json(const std::vector<DriftRow>& rows) {
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"path", to_json(r.path)},
                 {"actor", side_label(r.actor)},
                 {"depth", r.depth},
                 {"overlap", r.overlap},
                 {"normGap", r.normGap}});
  return a;
}

json to_json(const VerificationReport& r) {
  json branches = json::array();
  for (const auto& b : r.perBranch)
    branches.push_back({{"path", to_json(b.path)},
                        {"maxInfidelity", b.maxInfidelity},
                        {"minProbability", b.minProbability},
                        {"maxProbability", b.maxProbability}});
  json j = {{"task", r.task},
            {"side", side_label(r.side)},
            {"inputs", r.inputs},
            {"seed", r.seed},
            {"maxInfidelity", r.maxInfidelity},
            {"pass", r.pass},
            {"perBranch", branches}};
  if (r.task == "extract") {
    j["maxDrift"] = r.maxDrift;
    j["maxProbabilityDefect"] = r.maxProbabilityDefect;
    j["thresholds"] = {{"infidelity", r.infidelityThreshold}, {"drift", r.driftThreshold}};
  } else {
    j["maxProductLambda"] = r.maxProductLambda;
    j["maxNormalizationDefect"] = r.maxNormalizationDefect;
    j["thresholds"] = {{"parallel", r.infidelityThreshold},
                       {"product", r.productThreshold},
                       {"normalization", r.normalizationThreshold}};
  }
  return j;
}

json to_json(const SearchReport& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"stage", s.stage},
                     {"fidelity", s.fidelity},
                     {"polar", s.polar},
                     {"azimuth", s.azimuth},
                     {"spacing", s.spacing}});
  return {{"target", side_label(r.target)},
          {"bestWorstCaseFidelity", r.bestWorstCaseFidelity},
          {"argmax",
           {{"polar", r.polar},
            {"azimuth", r.azimuth},
            {"phase", r.phase},
            {"basis", to_json(r.basis)},
            {"corrections", json::array({to_json(r.corrections[0]), to_json(r.corrections[1])})}}},
          {"grid", format_grid(r.grid)},
          {"trace", trace}};
}

Side side_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "A" || s == "alice" || s == "Alice") return Side::Alice;
    if (s == "B" || s == "bob" || s == "Bob") return Side::Bob;
  }
  throw InvalidInput("side must be \"A\" or \"B\"");
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {number(j, "complex entry"), 0.0};
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex entries must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Vec2 vec2_from_json(const json& j) { return vec_from_json<Vec2>(j, 2, "qubit vector"); }

Vec4 vec4_from_json(const json& j) { return vec_from_json<Vec4>(j, 4, "two-qubit vector"); }

Mat2 mat2_from_json(const json& j) {
  const Vec4 v = vec_from_json<Vec4>(j, 4, "operator");
  Mat2 m;
  m << v(0), v(1), v(2), v(3);
  return m;
}

QubitBasis basis_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("basis must have two vectors");
  return {vec2_from_json(j[0]), vec2_from_json(j[1])};
}

BasisPair pair_from_json(const json& j) {
  return {vec4_from_json(field(j, "psi0")), vec4_from_json(field(j, "psi1"))};
}

ExtractionParams params_from_json(const json& j) {
  return {number(field(j, "lambda0"), "lambda0"), number(field(j, "theta"), "theta"),
          number(field(j, "bigTheta"), "bigTheta"), number(field(j, "phi"), "phi")};
}

MeasurementSet measurement_from_json(const json& j) {
  MeasurementSet m;
  m.side = side_from_json(field(j, "side"));
  const json& ops = field(j, "operators");
  if (!ops.is_array()) throw InvalidInput("operators must be an array");
  for (const auto& op : ops) m.operators.push_back(mat2_from_json(op));
  return m;
}

LoccProtocol protocol_from_json(const json& j) {
  if (j.is_object() && j.contains("leaf")) {
    if (j.at("leaf") != true) throw InvalidInput("leaf marker must be true");
    return leaf_node();
  }
  LoccProtocol p;
  p.actor = side_from_json(field(j, "actor"));
  const json& ops = field(j, "operators");
  const json& kids = field(j, "children");
  if (!ops.is_array() || !kids.is_array()) throw InvalidInput("operators and children must be arrays");
  if (ops.empty()) throw InvalidInput("protocol node needs at least one operator");
  for (const auto& op : ops) p.operators.push_back(mat2_from_json(op));
  for (const auto& k : kids) p.children.push_back(protocol_from_json(k));
  return p;
}

DestructionMeasurement destruction_from_json(const json& j) {
  DestructionMeasurement m;
  m.side = side_from_json(field(j, "side"));
  const json& ops = field(j, "operators");
  if (!ops.is_array()) throw InvalidInput("operators must be an array");
  for (const auto& op : ops) m.operators.push_back(mat2_from_json(op));
  if (j.contains("eigenbasis")) m.eigenbasis = basis_from_json(j.at("eigenbasis"));
  if (j.contains("eigenvalues") && !j.at("eigenvalues").is_null()) {
    const json& ev = j.at("eigenvalues");
    if (!ev.is_array() || ev.size() != 2) throw InvalidInput("eigenvalues must have two entries");
    m.eigenvalues = std::array<Complex, 2>{complex_from_json(ev[0]), complex_from_json(ev[1])};
  }
  if (j.contains("normalityResidual") && j.at("normalityResidual").is_number())
    m.normalityResidual = j.at("normalityResidual").get<double>();
  if (j.contains("anyBasis") && j.at("anyBasis").is_boolean()) m.anyBasis = j.at("anyBasis").get<bool>();
  return m;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace locckit
