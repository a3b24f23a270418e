// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "icebox/continuous.hpp"
#include "icebox/error.hpp"

namespace icebox::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

// Reader over one JSON object that records which keys were consumed.
class Fields {
 public:
  Fields(const json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) fail(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  std::string path(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, std::optional<double> def = std::nullopt) {
    if (!has(key)) {
      if (!def) fail(path(key), "required");
      return *def;
    }
    const json& v = at(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }

  double positive(const std::string& key, std::optional<double> def = std::nullopt) {
    double v = number(key, def);
    if (!(v > 0.0)) fail(path(key), "must be positive");
    return v;
  }

  double non_negative(const std::string& key, std::optional<double> def = std::nullopt) {
    double v = number(key, def);
    if (!(v >= 0.0)) fail(path(key), "must not be negative");
    return v;
  }

  long long integer(const std::string& key, std::optional<long long> def = std::nullopt) {
    if (!has(key)) {
      if (!def) fail(path(key), "required");
      return *def;
    }
    const json& v = at(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    return v.get<long long>();
  }

  int bounded(const std::string& key, long long lo, long long hi, std::optional<long long> def = std::nullopt) {
    long long v = integer(key, def);
    if (v < lo || v > hi) {
      fail(path(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return def;
    const json& v = at(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, std::optional<std::string> def = std::nullopt) {
    if (!has(key)) {
      if (!def) fail(path(key), "required");
      return *def;
    }
    const json& v = at(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  // A number or an array of numbers.
  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> def = std::nullopt) {
    if (!has(key)) {
      if (!def) fail(path(key), "required");
      return *def;
    }
    const json& v = at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) fail(path(key), "expected a number or a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(path(key), "expected a number or a non-empty array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) fail(path(it.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string prefix_;
  std::set<std::string> used_;
};

Kind parse_kind(const std::string& s) {
  static const std::pair<const char*, Kind> kinds[] = {
      {"cool_quantum", Kind::kCoolQuantum}, {"cool_classical", Kind::kCoolClassical},
      {"lindblad", Kind::kLindblad},         {"hybrid", Kind::kHybrid},
      {"continuous", Kind::kContinuous},     {"qwalk", Kind::kQwalk},
      {"complexity", Kind::kComplexity}};
  for (const auto& [name, k] : kinds) {
    if (s == name) return k;
  }
  fail("kind", "unknown experiment kind '" + s +
                   "'; expected cool_quantum, cool_classical, lindblad, hybrid, continuous, qwalk or complexity");
}

InstanceSpec parse_instance(Fields& f) {
  Fields in(f.at("instance"), "instance");
  InstanceSpec want;
  const std::string source = in.string("source");
  if (source == "generate") {
    want.source = InstanceSpec::Source::kGenerate;
    want.n_spins = in.bounded("n_s", 3, 20);
    want.seed = static_cast<std::uint64_t>(in.bounded("seed", 0, std::numeric_limits<int>::max()));
    const std::string fields = in.string("fields", "first_qubit");
    if (fields == "first_qubit") {
      want.fields = FieldPlacement::kFirstQubit;
    } else if (fields == "parity_matched") {
      want.fields = FieldPlacement::kParityMatched;
    } else {
      fail(in.path("fields"), "expected first_qubit or parity_matched");
    }
  } else if (source == "two_minima") {
    want.source = InstanceSpec::Source::kTwoMinima;
    want.n_spins = in.bounded("n_s", 2, 20);
    want.gap = in.bounded("gap", 2, want.n_spins);
  } else if (source == "file") {
    want.source = InstanceSpec::Source::kFile;
    want.path = in.string("path");
  } else {
    fail(in.path("source"), "expected generate, two_minima or file");
  }
  in.reject_unknown();
  return want;
}

void parse_propagation(Fields& f, ExperimentConfig& c, double t_final, double dt, double interval) {
  c.propagation.t_final = f.positive("t_final", t_final);
  c.propagation.dt = f.positive("dt", dt);
  c.propagation.sample_interval = f.positive("sample_interval", interval);
  const std::string integ = f.string("integrator", "rk4");
  if (integ == "rk4") {
    c.propagation.integrator = Integrator::kRk4;
  } else if (integ == "chebyshev") {
    c.propagation.integrator = Integrator::kChebyshev;
  } else {
    fail(f.path("integrator"), "expected rk4 or chebyshev");
  }
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::kCoolQuantum: return "cool_quantum";
    case Kind::kCoolClassical: return "cool_classical";
    case Kind::kLindblad: return "lindblad";
    case Kind::kHybrid: return "hybrid";
    case Kind::kContinuous: return "continuous";
    case Kind::kQwalk: return "qwalk";
    case Kind::kComplexity: return "complexity";
  }
  return "?";
}

ExperimentConfig parse_config(const json& j) {
  Fields f(j, "");
  ExperimentConfig c;
  c.raw = j;
  if (!f.has("seed")) throw ConfigError("seed required: every experiment config must set an integer 'seed'");
  const long long seed = f.integer("seed");
  if (seed < 0) fail("seed", "must not be negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.kind = parse_kind(f.string("kind"));
  c.output_dir = f.string("output_dir", std::string("out"));
  f.string("description", std::string());

  auto lambdas = [&](std::vector<double> def) {
    c.lambdas = f.numbers("lambda", def);
    for (double l : c.lambdas) {
      if (!(l >= 0.0)) fail("lambda", "coupling must not be negative");
    }
  };

  switch (c.kind) {
    case Kind::kCoolQuantum:
      c.instance = parse_instance(f);
      lambdas({0.2});
      parse_propagation(f, c, 15.0, 0.005, 0.05);
      c.n_max = f.bounded("n_max", -1, 200, -1);
      c.record_entanglement = f.boolean("record_entanglement", true);
      c.samples = f.bounded("classical_samples", 0, 1000000, 0);
      break;
    case Kind::kCoolClassical:
      c.instance = parse_instance(f);
      lambdas({0.2});
      parse_propagation(f, c, 15.0, 0.005, 0.05);
      c.samples = f.bounded("samples", 1, 1000000, 1000);
      break;
    case Kind::kLindblad:
      c.instance = parse_instance(f);
      lambdas({0.6});
      if (c.lambdas.size() != 1) fail("lambda", "lindblad runs take one coupling");
      parse_propagation(f, c, 5.0, 0.005, 0.05);
      if (c.propagation.integrator != Integrator::kRk4) fail("integrator", "lindblad runs use rk4");
      c.n_max = f.bounded("n_max", 1, 60, 12);
      c.kappas = f.numbers("kappa", std::vector<double>{0.0});
      for (double k : c.kappas) {
        if (!(k >= 0.0)) fail("kappa", "decay rate must not be negative");
      }
      c.three_level = f.boolean("three_level", false);
      c.three_level_lambda = f.non_negative("three_level_lambda", 0.2);
      break;
    case Kind::kHybrid:
      c.instance = parse_instance(f);
      lambdas({0.2});
      if (c.lambdas.size() != 1) fail("lambda", "hybrid runs take one coupling");
      c.t_cool = f.positive("t_cool", 20.0);
      c.max_iterations = f.bounded("max_iterations", 1, 1000000, 50);
      c.propagation.dt = f.positive("dt", 0.005);
      c.n_max = f.bounded("n_max", -1, 200, -1);
      if (f.has("start")) c.start = f.string("start");
      break;
    case Kind::kContinuous: {
      lambdas({kDefaultContinuousLambda});
      if (c.lambdas.size() != 1) fail("lambda", "continuous runs take one coupling");
      ContinuousParams d;
      c.propagation.t_final = f.positive("t_final", 30.0);
      c.propagation.dt = f.non_negative("dt", 0.0);
      c.propagation.sample_interval = f.positive("sample_interval", 0.1);
      c.n_max = f.bounded("n_max", 1, 200, 8);
      c.samples = f.bounded("classical_samples", 0, 1000000, 200);
      c.n_grid = f.bounded("n_grid", 64, 1 << 16, d.n_grid);
      c.quad_weight = f.positive("quad_weight", d.quad_weight);
      c.cos_amplitude = f.positive("cos_amplitude", d.cos_amplitude);
      c.kinetic = f.positive("kinetic", d.kinetic);
      c.target_gap = f.positive("target_gap", d.target_gap);
      c.margin = f.positive("margin", d.margin);
      c.record_density = f.boolean("record_density", true);
      break;
    }
    case Kind::kQwalk:
      c.n_max = f.bounded("n_max", 2, 60, 12);
      c.steps = f.bounded("steps", 10, 100000, 50);
      break;
    case Kind::kComplexity:
      lambdas({0.2});
      if (c.lambdas.size() != 1) fail("lambda", "complexity sweeps take one coupling");
      parse_propagation(f, c, 50.0, 0.005, 0.25);
      c.n_min = f.bounded("n_min", 3, 16, 5);
      c.n_max_spins = f.bounded("n_max_spins", c.n_min, 16, 11);
      c.graphs_per_size = f.bounded("graphs_per_size", 1, 100000, 20);
      if (f.has("instance")) fail("instance", "complexity sweeps generate their own instances");
      break;
  }
  f.reject_unknown();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace icebox::cli
