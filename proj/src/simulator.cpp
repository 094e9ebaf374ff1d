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

#include "locckit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "compass.hpp"
#include "locckit/emeasure.hpp"
#include "locckit/errors.hpp"

namespace locckit {

namespace {

constexpr double kPi = std::numbers::pi;

Complex dominant_phase(const Vec4& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  const Complex c = v(idx);
  return std::abs(c) > 0.0 ? c / std::abs(c) : Complex(1.0, 0.0);
}

void run_node(const LoccProtocol& node, const Vec4& v, std::vector<PathStep>& path,
              std::vector<BranchOutcome>& out) {
  if (node.is_leaf()) {
    BranchOutcome b;
    b.path = path;
    b.raw = v;
    b.probability = v.squaredNorm();
    if (b.probability > 0.0) {
      b.state = v / std::sqrt(b.probability);
      b.scalarPhase = dominant_phase(b.state);
    } else {
      b.state = v;
      b.normalized = false;
    }
    out.push_back(std::move(b));
    return;
  }
  for (std::size_t i = 0; i < node.operators.size(); ++i) {
    path.push_back({node.actor, static_cast<int>(i)});
    const LoccProtocol& child = i < node.children.size() ? node.children[i] : LoccProtocol{};
    run_node(child, apply_local(node.operators[i], node.actor, v), path, out);
    path.pop_back();
  }
}

void audit_node(const LoccProtocol& node, const BasisPair& state, std::vector<PathStep>& path,
                std::vector<DriftRow>& rows) {
  if (node.is_leaf()) return;
  for (std::size_t i = 0; i < node.operators.size(); ++i) {
    const BasisPair next = apply_local(node.operators[i], node.actor, state);
    path.push_back({node.actor, static_cast<int>(i)});
    DriftRow r;
    r.path = path;
    r.actor = node.actor;
    r.depth = path.size();
    r.overlap = std::abs(next.psi0.dot(next.psi1));
    r.normGap = std::abs(next.psi0.norm() - next.psi1.norm());
    rows.push_back(std::move(r));
    if (i < node.children.size()) audit_node(node.children[i], next, path, rows);
    path.pop_back();
  }
}

std::string path_key(const std::vector<PathStep>& path) {
  std::string k;
  for (const auto& s : path) {
    k += side_label(s.actor);
    k += std::to_string(s.outcome);
    k += '/';
  }
  return k;
}

}  // namespace

std::vector<BranchOutcome> run(const LoccProtocol& protocol, const Vec4& input) {
  std::vector<BranchOutcome> out;
  std::vector<PathStep> path;
  run_node(protocol, input, path, out);
  return out;
}

std::vector<DriftRow> drift_audit(const LoccProtocol& protocol, const BasisPair& pair) {
  std::vector<DriftRow> rows;
  std::vector<PathStep> path;
  audit_node(protocol, pair, path, rows);
  return rows;
}

double max_drift(const std::vector<DriftRow>& rows) {
  double d = 0.0;
  for (const auto& r : rows) d = std::max({d, r.overlap, r.normGap});
  return d;
}

std::array<Amplitudes, 4> canonical_probes() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Amplitudes{1.0, 0.0}, Amplitudes{0.0, 1.0}, Amplitudes{r, r}, Amplitudes{r, kI * r}};
}

Amplitudes random_amplitudes(CounterRng& rng) {
  double x[4];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& xi : x) {
      xi = rng.normal();
      n += xi * xi;
    }
  } while (n == 0.0);
  n = std::sqrt(n);
  return {Complex(x[0], x[1]) / n, Complex(x[2], x[3]) / n};
}

std::vector<Amplitudes> probe_inputs(std::size_t samples, std::uint64_t seed) {
  const auto probes = canonical_probes();
  std::vector<Amplitudes> in(probes.begin(), probes.end());
  CounterRng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) in.push_back(random_amplitudes(rng));
  return in;
}

VerificationReport verify_extraction(const BasisPair& pair, const LoccProtocol& protocol, Side target,
                                     std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.task = "extract";
  rep.side = target;
  rep.seed = seed;
  const auto inputs = probe_inputs(samples, seed);
  rep.inputs = inputs.size();
  std::map<std::string, std::size_t> index;
  for (const auto& in : inputs) {
    const auto leaves = run(protocol, encode(pair, in.alpha, in.beta));
    const Vec2 phi(in.alpha, in.beta);
    double total = 0.0;
    for (const auto& leaf : leaves) {
      total += leaf.probability;
      const std::string key = path_key(leaf.path);
      auto [it, inserted] = index.try_emplace(key, rep.perBranch.size());
      if (inserted) rep.perBranch.push_back(BranchDiagnostic{leaf.path});
      BranchDiagnostic& diag = rep.perBranch[it->second];
      diag.minProbability = std::min(diag.minProbability, leaf.probability);
      diag.maxProbability = std::max(diag.maxProbability, leaf.probability);
      if (leaf.probability <= 1e-14) continue;
      const double overlap = contract(leaf.state, phi, target).squaredNorm();
      const double inf = std::max(0.0, 1.0 - overlap);
      diag.maxInfidelity = std::max(diag.maxInfidelity, inf);
      rep.maxInfidelity = std::max(rep.maxInfidelity, inf);
    }
    rep.maxProbabilityDefect = std::max(rep.maxProbabilityDefect, std::abs(total - 1.0));
  }
  rep.maxDrift = max_drift(drift_audit(protocol, pair));
  rep.pass = rep.maxInfidelity <= rep.infidelityThreshold && rep.maxDrift <= rep.driftThreshold;
  return rep;
}

VerificationReport verify_destruction(const BasisPair& pair, const DestructionMeasurement& m,
                                      std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.task = "destroy";
  rep.side = m.side;
  rep.seed = seed;
  const auto inputs = probe_inputs(samples, seed);
  rep.inputs = inputs.size();
  const std::size_t n = m.operators.size();

  // raw[i][j]: outcome i on input j.
  std::vector<std::vector<Vec4>> raw(n, std::vector<Vec4>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const Vec4 v = encode(pair, inputs[j].alpha, inputs[j].beta);
    for (std::size_t i = 0; i < n; ++i) raw[i][j] = apply_local(m.operators[i], m.side, v);
  }
  std::vector<double> cnorm(inputs.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    BranchDiagnostic diag;
    diag.path = {{m.side, static_cast<int>(i)}};
    std::size_t refIdx = 0;
    for (std::size_t j = 1; j < inputs.size(); ++j)
      if (raw[i][j].squaredNorm() > raw[i][refIdx].squaredNorm()) refIdx = j;
    const double refNorm = raw[i][refIdx].norm();
    const Vec4 ref = refNorm > 0.0 ? Vec4(raw[i][refIdx] / refNorm) : Vec4::Zero();
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      const Vec4& r = raw[i][j];
      const double p = r.squaredNorm();
      const Complex c = ref.dot(r);
      cnorm[j] += std::norm(c);
      diag.minProbability = std::min(diag.minProbability, p);
      diag.maxProbability = std::max(diag.maxProbability, p);
      if (p < 1e-12) continue;
      const double inf = std::max(0.0, 1.0 - std::norm(c) / p);
      diag.maxInfidelity = std::max(diag.maxInfidelity, inf);
      rep.maxInfidelity = std::max(rep.maxInfidelity, inf);
      rep.maxProductLambda = std::max(rep.maxProductLambda, minor_schmidt_coefficient(r));
    }
    rep.perBranch.push_back(std::move(diag));
  }
  for (double c : cnorm) rep.maxNormalizationDefect = std::max(rep.maxNormalizationDefect, std::abs(c - 1.0));
  rep.infidelityThreshold = kParallelThreshold;
  rep.pass = rep.maxInfidelity <= rep.infidelityThreshold &&
             rep.maxProductLambda <= rep.productThreshold &&
             rep.maxNormalizationDefect <= rep.normalizationThreshold;
  return rep;
}

SearchGrid parse_grid(const std::string& text) {
  SearchGrid g;
  char x1 = 0;
  char x2 = 0;
  std::istringstream in(text);
  if (!(in >> g.polar >> x1 >> g.azimuth >> x2 >> g.phase) || x1 != 'x' || x2 != 'x' ||
      g.polar < 1 || g.azimuth < 1 || g.phase < 1)
    throw InvalidInput("grid must look like 180x90x90");
  in >> std::ws;
  if (!in.eof()) throw InvalidInput("grid must look like 180x90x90");
  return g;
}

std::string format_grid(const SearchGrid& g) {
  return std::to_string(g.polar) + "x" + std::to_string(g.azimuth) + "x" + std::to_string(g.phase);
}

double one_round_fidelity(const BasisPair& pair, Side target, const QubitBasis& basis,
                          std::array<Mat2, 2>* corrections) {
  const Side controller = other(target);
  const auto probes = canonical_probes();
  double worst = 1.0;
  for (int k = 0; k < 2; ++k) {
    const Vec2 b0 = contract(pair.psi0, basis[k], controller);
    const Vec2 b1 = contract(pair.psi1, basis[k], controller);
    Mat2 m;
    m.row(0) = (b0.norm() > 0.0 ? Vec2(b0.normalized()) : b0).adjoint();
    m.row(1) = (b1.norm() > 0.0 ? Vec2(b1.normalized()) : b1).adjoint();
    const Mat2 v = closest_unitary(m);
    if (corrections) (*corrections)[k] = v;
    for (const auto& pr : probes) {
      const Vec2 w = v * (pr.alpha * b0 + pr.beta * b1);
      const double p = w.squaredNorm();
      if (p <= 1e-14) continue;
      const Complex ov = std::conj(pr.alpha) * w(0) + std::conj(pr.beta) * w(1);
      worst = std::min(worst, std::norm(ov) / p);
    }
  }
  return worst;
}

SearchReport brute_force_search(const BasisPair& pair, Side target, SearchGrid grid) {
  if (grid.polar < 1 || grid.azimuth < 1 || grid.phase < 1) throw InvalidInput("grid must be positive");
  SearchReport rep;
  rep.target = target;
  rep.grid = grid;
  const auto fid = [&](double p, double a) {
    return one_round_fidelity(pair, target, sphere_basis(p, a));
  };

  // Projectors do not depend on the relative phase between basis vectors,
  // so the third grid axis is constant and evaluated once.
  const double dp = kPi / grid.polar;
  const double da = 2.0 * kPi / grid.azimuth;
  double best = -1.0;
  double bp = 0.0;
  double ba = 0.0;
  for (int i = 0; i <= grid.polar; ++i) {
    const double p = i * dp;
    for (int j = 0; j < grid.azimuth; ++j) {
      const double a = j * da;
      const double f = fid(p, a);
      if (f > best) {
        best = f;
        bp = p;
        ba = a;
      }
    }
  }
  rep.trace.push_back({"grid", best, bp, ba, std::max(dp, da)});

  double sp = dp;
  double sa = da;
  for (int pass = 1; pass <= 2; ++pass) {
    sp /= 10.0;
    sa /= 10.0;
    const double cp = bp;
    const double ca = ba;
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double p = cp + i * sp;
        const double a = ca + j * sa;
        const double f = fid(p, a);
        if (f > best) {
          best = f;
          bp = p;
          ba = a;
        }
      }
    }
    rep.trace.push_back({"refine" + std::to_string(pass), best, bp, ba, std::max(sp, sa)});
  }

  std::array<double, 2> x{bp, ba};
  const auto obj = [&](const std::array<double, 2>& y) { return -fid(y[0], y[1]); };
  const double polished = -detail::compass_minimize<2>(obj, x, std::max(sp, sa), 1e-13);
  if (polished > best) {
    best = polished;
    bp = x[0];
    ba = x[1];
  }
  rep.trace.push_back({"polish", best, bp, ba, 1e-13});

  rep.bestWorstCaseFidelity = std::clamp(best, 0.0, 1.0);
  rep.polar = bp;
  rep.azimuth = ba;
  rep.basis = sphere_basis(bp, ba);
  one_round_fidelity(pair, target, rep.basis, &rep.corrections);
  return rep;
}

}  // namespace locckit
