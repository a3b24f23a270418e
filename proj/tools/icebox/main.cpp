// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "icebox/error.hpp"
#include "icebox/hybrid.hpp"
#include "icebox/instance.hpp"
#include "icebox/parallel.hpp"
#include "recipes.hpp"

#ifndef ICEBOX_VERSION
#define ICEBOX_VERSION "0.0.0"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace icebox;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// ICEBOX_THREADS wins over the flag; the flag wins over hardware concurrency.
int resolve_workers(int flag) {
  if (const char* env = std::getenv("ICEBOX_THREADS"); env && *env) return default_worker_count();
  return flag > 0 ? flag : default_worker_count();
}

void write_manifest(const cli::ExperimentConfig& cfg, const fs::path& dir, const cli::RunResult& res,
                    double seconds, int workers) {
  json outputs = json::array();
  for (const auto& name : res.outputs) {
    const fs::path p = dir / name;
    if (!fs::exists(p) || fs::file_size(p) == 0) throw Error("output " + p.string() + " is missing or empty");
    outputs.push_back({{"path", name}, {"bytes", fs::file_size(p)}});
  }
  json m;
  m["kind"] = cli::kind_name(cfg.kind);
  m["version"] = ICEBOX_VERSION;
  m["config"] = cfg.raw;
  m["seed"] = cfg.seed;
  m["threads"] = workers;
  m["wall_time_seconds"] = seconds;
  m["outputs"] = outputs;
  std::ofstream(dir / "manifest.json") << m.dump(2) << '\n';
}

int run_config(const std::string& path, const std::string& out_override, int threads) {
  const auto cfg = cli::load_config(path);
  const fs::path dir = out_override.empty() ? fs::path(cfg.output_dir) : fs::path(out_override);
  const int workers = resolve_workers(threads);
  const auto start = std::chrono::steady_clock::now();
  const auto res = cli::run_experiment(cfg, dir, workers);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(cfg, dir, res, seconds, workers);
  std::cout << cli::kind_name(cfg.kind) << ": " << res.outputs.size() << " outputs in " << dir.string() << " ("
            << seconds << " s)\n";
  return 0;
}

int validate_config(const std::string& path) {
  const auto cfg = cli::load_config(path);
  std::cout << path << ": ok (" << cli::kind_name(cfg.kind) << ")\n";
  return 0;
}

int list_recipes(const std::string& show, const std::string& write_dir) {
  const auto& all = cli::recipes();
  if (!show.empty()) {
    auto it = all.find(show);
    if (it == all.end()) throw InputError("unknown recipe '" + show + "'");
    std::cout << it->second;
    return 0;
  }
  if (!write_dir.empty()) {
    fs::create_directories(write_dir);
    for (const auto& [name, text] : all) {
      std::ofstream(fs::path(write_dir) / (name + ".json")) << text;
    }
    std::cout << "wrote " << all.size() << " recipes to " << write_dir << '\n';
    return 0;
  }
  for (const auto& [name, text] : all) {
    std::cout << name << "  " << json::parse(text).value("description", "") << '\n';
  }
  return 0;
}

struct HybridFlags {
  std::string instance;
  double lambda = 0.2;
  double t_cool = 20.0;
  int max_iter = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int run_hybrid_cmd(const HybridFlags& f) {
  const auto inst = load_instance(f.instance);
  HybridConfig hc;
  hc.lambda = f.lambda;
  hc.t_cool = f.t_cool;
  hc.max_iterations = f.max_iter;
  hc.seed = f.seed;
  const auto trace = run_hybrid(inst, hc);
  if (f.out.empty()) {
    write_hybrid_csv(std::cout, trace);
  } else {
    std::ofstream out(f.out);
    if (!out) throw InputError("cannot write " + f.out);
    write_hybrid_csv(out, trace);
  }
  std::cerr << "final energy " << trace.final_energy << (trace.reached_threshold ? " (threshold reached)" : "")
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"icebox: spin-glass cooling experiments"};
  app.set_version_flag("--version", ICEBOX_VERSION);
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--threads", threads, "Worker threads (ICEBOX_THREADS takes precedence)")
      ->check(CLI::NonNegativeNumber);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

  std::string show, write_dir;
  auto* rec = app.add_subcommand("recipes", "List the shipped figure recipes");
  rec->add_option("--show", show, "Print one recipe");
  rec->add_option("--write", write_dir, "Write every recipe into a directory");

  HybridFlags hf;
  auto* hyb = app.add_subcommand("hybrid", "Run the hybrid descent and cooling loop on an instance");
  hyb->add_option("--instance", hf.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  hyb->add_option("--lambda", hf.lambda, "Coupling")->check(CLI::NonNegativeNumber);
  hyb->add_option("--t-cool", hf.t_cool, "Cooling time per iteration")->check(CLI::PositiveNumber);
  hyb->add_option("--max-iter", hf.max_iter, "Iteration budget")->check(CLI::PositiveNumber);
  hyb->add_option("--seed", hf.seed, "Seed")->required();
  hyb->add_option("--out", hf.out, "Trace CSV (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_config(config_path, out_dir, threads);
    if (*validate) return validate_config(validate_path);
    if (*rec) return list_recipes(show, write_dir);
    if (*hyb) return run_hybrid_cmd(hf);
  } catch (const ConfigError& e) {
    std::cerr << "icebox: invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    std::cerr << "icebox: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const EvolutionError& e) {
    std::cerr << "icebox: evolution failed at t = " << e.time() << ": " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "icebox: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
