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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "locckit/emeasure.hpp"
#include "locckit/encoding.hpp"
#include "locckit/errors.hpp"
#include "locckit/json_io.hpp"
#include "locckit/protocols.hpp"
#include "locckit/random.hpp"
#include "locckit/simulator.hpp"

namespace locckit {

namespace {

struct Config {
  std::string input = "-";
  std::string output;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::string grid = "180x90x90";
};

double default_tol() {
  if (const char* env = std::getenv("LOCCKIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw InvalidInput("LOCCKIT_TOL must be a positive number");
    return v;
  }
  return kDefaultTol;
}

Side parse_side(const std::string& s) { return side_from_json(json(s)); }

json read_input(const Config& cfg, std::istream& in) {
  const std::string& src = cfg.input;
  const auto first = src.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) return parse_json(src);
  std::stringstream buf;
  if (src.empty() || src == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(src);
    if (!f) throw InvalidInput("cannot read input file " + src);
    buf << f.rdbuf();
  }
  return parse_json(buf.str());
}

// Accepts a bare pair or a document with a "pair" member.
BasisPair input_pair(const json& doc, double tol) {
  const json& p = doc.is_object() && doc.contains("pair") ? doc.at("pair") : doc;
  BasisPair pair = pair_from_json(p);
  require_orthonormal(pair, std::max(tol, 1e-9));
  return pair;
}

void emit(const Config& cfg, const json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw InvalidInput("cannot write output file " + cfg.output);
  f << text;
}

// "1.5", "pi", "pi/36", "3*pi/4", "-0.25".
double parse_scalar(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InvalidInput("empty number");
  const auto num = [](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: " + t);
    }
    if (used != t.size() || !std::isfinite(v)) throw InvalidInput("not a number: " + t);
    return v;
  };
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return num(s);
  double factor = 1.0;
  std::string head = s.substr(0, pos);
  if (head == "-") factor = -1.0;
  else if (!head.empty()) {
    if (head.back() != '*') throw InvalidInput("cannot parse " + raw);
    factor = num(head.substr(0, head.size() - 1));
  }
  std::string tail = s.substr(pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw InvalidInput("cannot parse " + raw);
    divisor = num(tail.substr(1));
    if (divisor == 0.0) throw InvalidInput("division by zero in " + raw);
  }
  return factor * std::numbers::pi / divisor;
}

// "start:stop:step" or a single value.
std::vector<double> parse_range(const std::string& text, const char* what) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return {parse_scalar(parts[0])};
  if (parts.size() != 3) throw InvalidInput(std::string(what) + " range must be start:stop:step");
  const double lo = parse_scalar(parts[0]);
  const double hi = parse_scalar(parts[1]);
  const double step = parse_scalar(parts[2]);
  if (!(step > 0.0) || hi < lo) throw InvalidInput(std::string(what) + " range must have step > 0 and stop >= start");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 100000) throw InvalidInput(std::string(what) + " range has too many points");
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

std::vector<RoundSpec> parse_schedule(const std::string& text) {
  std::vector<RoundSpec> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string round;
  while (std::getline(ss, round, ';')) {
    std::stringstream rs(round);
    std::string v;
    std::vector<double> vals;
    while (std::getline(rs, v, ',')) vals.push_back(parse_scalar(v));
    if (vals.size() != 3) throw InvalidInput("schedule rounds must be t,tau0,tau1");
    out.push_back({vals[0], vals[1], vals[2]});
  }
  return out;
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json cmd_gen(const Config& cfg, const std::string& preset, const std::optional<double>& lambda0,
             double theta, double bigTheta, double phi) {
  BasisPair pair;
  if (!preset.empty() && lambda0) throw InvalidInput("use either --preset or explicit parameters");
  if (preset == "bell") {
    pair = bell_pair();
  } else if (preset == "extracted") {
    pair = extracted_pair();
  } else if (preset == "asymmetric") {
    pair = make_basis_pair(asymmetric_params(), computational_basis(), computational_basis(), cfg.tol);
  } else if (preset == "symmetric") {
    pair = symmetric_pair(0.7);
  } else if (preset == "destructible") {
    pair = destructible_pair(0.6, 0.4, 0.3, 1.1);
  } else if (preset == "random") {
    CounterRng rng(cfg.seed);
    pair = haar_pair(rng);
  } else if (preset.empty()) {
    if (!lambda0) throw InvalidInput("gen needs --preset or --lambda0");
    pair = make_basis_pair({*lambda0, theta, bigTheta, phi}, computational_basis(), computational_basis(),
                           cfg.tol);
  } else {
    throw InvalidInput("unknown preset " + preset);
  }
  return to_json(pair);
}

json cmd_synthesize(const Config& cfg, const json& doc, const std::string& task, Side side, int depth,
                    const std::string& schedule) {
  const BasisPair pair = input_pair(doc, cfg.tol);
  json res = {{"task", task}, {"side", side_label(side)}, {"pair", to_json(pair)}};
  if (task == "extract") {
    const auto rounds = parse_schedule(schedule);
    if (depth < 1) throw InvalidInput("depth must be at least 1");
    res["protocol"] = to_json(synth_multiround(pair, depth, rounds, side, cfg.tol));
    return res;
  }
  if (task == "destroy") {
    res["measurement"] = to_json(synth_destruction(pair, side, cfg.tol));
    return res;
  }
  throw InvalidInput("task must be extract or destroy");
}

// Task and side recorded in a synthesize document apply unless given on the
// command line.
std::string doc_task(const json& doc, const std::string& fallback, bool explicitFlag) {
  if (explicitFlag || !doc.is_object()) return fallback;
  if (doc.contains("task") && doc.at("task").is_string()) return doc.at("task").get<std::string>();
  if (doc.contains("measurement")) return "destroy";
  return fallback;
}

Side doc_side(const json& doc, Side fallback, bool explicitFlag) {
  if (explicitFlag || !doc.is_object() || !doc.contains("side")) return fallback;
  return side_from_json(doc.at("side"));
}

json cmd_verify(const Config& cfg, const json& doc, const std::string& task, Side side) {
  const BasisPair pair = input_pair(doc, cfg.tol);
  if (task == "extract") {
    LoccProtocol proto;
    if (doc.is_object() && doc.contains("protocol")) {
      proto = protocol_from_json(doc.at("protocol"));
      require_well_formed(proto, std::max(cfg.tol, 1e-9));
    } else {
      proto = synth_extraction(pair, side, cfg.tol);
    }
    return to_json(verify_extraction(pair, proto, side, cfg.samples, cfg.seed));
  }
  if (task == "destroy") {
    DestructionMeasurement m;
    if (doc.is_object() && doc.contains("measurement")) {
      m = destruction_from_json(doc.at("measurement"));
      require_complete(m.measurement(), std::max(cfg.tol, 1e-9));
    } else {
      m = synth_destruction(pair, side, cfg.tol);
    }
    return to_json(verify_destruction(pair, m, cfg.samples, cfg.seed));
  }
  throw InvalidInput("task must be extract or destroy");
}

json cmd_audit(const Config& cfg, const json& doc, Side side) {
  const BasisPair pair = input_pair(doc, cfg.tol);
  LoccProtocol proto;
  if (doc.is_object() && doc.contains("protocol")) {
    proto = protocol_from_json(doc.at("protocol"));
    require_well_formed(proto, std::max(cfg.tol, 1e-9));
  } else {
    proto = synth_extraction(pair, side, cfg.tol);
  }
  const auto rows = drift_audit(proto, pair);
  const double d = max_drift(rows);
  return {{"rows", to_json(rows)}, {"maxDrift", d}, {"threshold", kDriftThreshold}, {"pass", d <= kDriftThreshold}};
}

struct SweepOptions {
  std::string lambda0 = "0.5:1:0.05";
  std::string theta = "0";
  std::string bigTheta = "0:pi/2:pi/36";
  std::string phi = "0";
  std::string csv;
  bool search = true;
  bool randomBases = false;
  unsigned threads = 0;
};

json cmd_sweep(const Config& cfg, const SweepOptions& so) {
  const auto l0s = parse_range(so.lambda0, "lambda0");
  const auto ths = parse_range(so.theta, "theta");
  const auto bts = parse_range(so.bigTheta, "bigTheta");
  const auto phs = parse_range(so.phi, "phi");
  for (double l : l0s)
    if (l < 0.5 - 1e-12 || l > 1.0 + 1e-12) throw InvalidInput("lambda0 range must lie in [1/2, 1]");
  const SearchGrid grid = parse_grid(cfg.grid);

  struct Cell {
    ExtractionParams p;
  };
  std::vector<Cell> cells;
  for (double l : l0s)
    for (double t : ths)
      for (double b : bts)
        for (double f : phs) cells.push_back({{std::clamp(l, 0.5, 1.0), t, b, f}});

  std::vector<json> records(cells.size());
  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const ExtractionParams& p = cells[i].p;
      const std::uint64_t cellSeed = derive_seed(cfg.seed, i);
      json rec = {{"index", i}, {"seed", cellSeed}, {"lambda0", p.lambda0}, {"theta", p.theta},
                  {"bigTheta", p.bigTheta}, {"phi", p.phi}};
      std::string row;
      try {
        QubitBasis a = computational_basis();
        QubitBasis b = computational_basis();
        if (so.randomBases) {
          CounterRng rng(cellSeed);
          a = random_basis(rng);
          b = random_basis(rng);
        }
        const BasisPair pair = make_basis_pair(p, a, b, cfg.tol);
        const ClassificationReport r = classify(pair, cfg.tol);
        rec["valid"] = true;
        rec["extractAtAlice"] = r.extractAtAlice;
        rec["extractAtBob"] = r.extractAtBob;
        rec["symmetric"] = r.symmetric;
        rec["destroyByAlice"] = r.destroyByAlice;
        rec["destroyByBob"] = r.destroyByBob;
        double fa = NAN;
        double fb = NAN;
        if (so.search) {
          fa = brute_force_search(pair, Side::Alice, grid).bestWorstCaseFidelity;
          fb = brute_force_search(pair, Side::Bob, grid).bestWorstCaseFidelity;
        }
        rec["fidelityAlice"] = so.search ? json(fa) : json(nullptr);
        rec["fidelityBob"] = so.search ? json(fb) : json(nullptr);
        row = csv_number(p.lambda0) + "," + csv_number(p.theta) + "," + csv_number(p.bigTheta) + "," +
              csv_number(p.phi) + ",1," + std::to_string(r.extractAtAlice) + "," +
              std::to_string(r.extractAtBob) + "," + std::to_string(r.symmetric) + "," +
              std::to_string(r.destroyByAlice) + "," + std::to_string(r.destroyByBob) + "," +
              csv_number(fa) + "," + csv_number(fb);
      } catch (const InvalidInput& e) {
        rec["valid"] = false;
        rec["error"] = e.what();
        row = csv_number(p.lambda0) + "," + csv_number(p.theta) + "," + csv_number(p.bigTheta) + "," +
              csv_number(p.phi) + ",0,,,,,,,";
      }
      records[i] = std::move(rec);
      rows[i] = std::to_string(i) + "," + std::to_string(cellSeed) + "," + row;
    }
  };
  unsigned nthreads = so.threads ? so.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::string csvPath = so.csv;
  if (csvPath.empty() && !cfg.output.empty()) {
    csvPath = cfg.output;
    const auto dot = csvPath.rfind('.');
    if (dot != std::string::npos && csvPath.find('/', dot) == std::string::npos) csvPath.resize(dot);
    csvPath += ".csv";
  }
  if (!csvPath.empty()) {
    std::ofstream f(csvPath);
    if (!f) throw InvalidInput("cannot write CSV file " + csvPath);
    f << "index,seed,lambda0,theta,bigTheta,phi,valid,extractAtAlice,extractAtBob,symmetric,"
         "destroyByAlice,destroyByBob,fidelityAlice,fidelityBob\n";
    for (const auto& r : rows) f << r << "\n";
  }
  json cellsJson = json::array();
  for (auto& r : records) cellsJson.push_back(std::move(r));
  return {{"spec",
           {{"lambda0", so.lambda0},
            {"theta", so.theta},
            {"bigTheta", so.bigTheta},
            {"phi", so.phi},
            {"masterSeed", cfg.seed},
            {"grid", format_grid(grid)},
            {"search", so.search},
            {"randomBases", so.randomBases}}},
          {"csv", csvPath.empty() ? json(nullptr) : json(csvPath)},
          {"cells", cellsJson}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extraction and destruction of qubit information spread over two parties"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  try {
    cfg.tol = default_tol();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  app.add_option("--in", cfg.input, "Input JSON: file path, inline document, or - for stdin");
  app.add_option("--out", cfg.output, "Write the JSON document to this path instead of stdout");
  app.add_option("--tol", cfg.tol, "Numerical tolerance (default 1e-9 or LOCCKIT_TOL)");
  app.add_option("--seed", cfg.seed, "Random seed (unsigned 64-bit)");
  app.add_option("--samples", cfg.samples, "Random (alpha, beta) inputs per verification");
  app.add_option("--grid", cfg.grid, "Search grid polar x azimuth x phase");

  std::string preset;
  std::optional<double> lambda0;
  double theta = 0.0;
  double bigTheta = 0.0;
  double phi = 0.0;
  auto* gen = app.add_subcommand("gen", "Emit a basis pair");
  gen->add_option("--preset", preset, "bell | extracted | asymmetric | symmetric | destructible | random");
  gen->add_option("--lambda0", lambda0, "Larger Schmidt coefficient in [1/2, 1]");
  gen->add_option("--theta", theta);
  gen->add_option("--bigTheta", bigTheta);
  gen->add_option("--phi", phi);

  auto* cls = app.add_subcommand("classify", "Decide extraction and destruction at each party");

  std::string task = "extract";
  std::string sideText = "B";
  int depthArg = 1;
  std::string schedule;
  auto* syn = app.add_subcommand("synthesize", "Build an extraction protocol or destruction measurement");
  syn->add_option("--task", task, "extract | destroy");
  syn->add_option("--side", sideText, "Target (extract) or destroying party (destroy): A | B");
  syn->add_option("--depth", depthArg, "Rounds of the extraction protocol");
  syn->add_option("--schedule", schedule, "Weak rounds as t,tau0,tau1;...");

  auto* ver = app.add_subcommand("verify", "Simulate a protocol or measurement against its contract");
  auto* verTask = ver->add_option("--task", task, "extract | destroy");
  auto* verSide = ver->add_option("--side", sideText, "A | B");

  auto* sea = app.add_subcommand("search", "Brute-force one-round extraction search");
  sea->add_option("--side", sideText, "Target party: A | B");

  SweepOptions so;
  bool noSearch = false;
  auto* swp = app.add_subcommand("sweep", "Classify and search over a parameter grid");
  swp->add_option("--lambda0-range", so.lambda0, "start:stop:step");
  swp->add_option("--theta-range", so.theta, "start:stop:step or a value");
  swp->add_option("--bigTheta-range", so.bigTheta, "start:stop:step or a value");
  swp->add_option("--phi-range", so.phi, "start:stop:step or a value");
  swp->add_option("--csv", so.csv, "CSV output path");
  swp->add_option("--threads", so.threads, "Worker threads (default: hardware concurrency)");
  swp->add_flag("--no-search", noSearch, "Skip the brute-force fidelity columns");
  swp->add_flag("--random-bases", so.randomBases, "Apply per-cell random local bases");

  auto* aud = app.add_subcommand("audit", "Per-round orthogonality and norm drift of a protocol");
  auto* audSide = aud->add_option("--side", sideText, "Target party: A | B");

  std::vector<std::string> argvStore = {"locckit"};
  argvStore.insert(argvStore.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argvStore) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw InvalidInput("--tol must be positive");
    if (cfg.samples < 1) throw InvalidInput("--samples must be at least 1");
    const Side side = parse_side(sideText);
    if (gen->parsed()) {
      emit(cfg, cmd_gen(cfg, preset, lambda0, theta, bigTheta, phi), out);
    } else if (cls->parsed()) {
      emit(cfg, to_json(classify(input_pair(read_input(cfg, in), cfg.tol), cfg.tol)), out);
    } else if (syn->parsed()) {
      emit(cfg, cmd_synthesize(cfg, read_input(cfg, in), task, side, depthArg, schedule), out);
    } else if (ver->parsed()) {
      const json doc = read_input(cfg, in);
      emit(cfg,
           cmd_verify(cfg, doc, doc_task(doc, task, verTask->count() > 0), doc_side(doc, side, verSide->count() > 0)),
           out);
    } else if (sea->parsed()) {
      const BasisPair pair = input_pair(read_input(cfg, in), cfg.tol);
      emit(cfg, to_json(brute_force_search(pair, side, parse_grid(cfg.grid))), out);
    } else if (swp->parsed()) {
      so.search = !noSearch;
      emit(cfg, cmd_sweep(cfg, so), out);
    } else if (aud->parsed()) {
      const json doc = read_input(cfg, in);
      emit(cfg, cmd_audit(cfg, doc, doc_side(doc, side, audSide->count() > 0)), out);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace locckit
