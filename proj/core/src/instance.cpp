// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/instance.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "icebox/error.hpp"
#include "icebox/parallel.hpp"

namespace icebox {

using nlohmann::json;

ProblemInstance generate_instance(int n_spins, std::uint64_t seed, FieldPlacement fields) {
  if (n_spins < 3) throw ConfigError("generate_instance needs n_s >= 3");
  if (n_spins > SpinGlass::kMaxQubits) throw ConfigError("generate_instance: n_s too large");
  auto rng = make_stream(seed, {static_cast<std::uint64_t>(n_spins)});
  std::set<std::pair<int, int>> edges;
  for (int m = 0; m + 1 < n_spins; ++m) edges.insert({m, m + 1});

  InstanceMetadata meta;
  meta.chain_links = n_spins - 1;
  for (int m = 0; m < n_spins; ++m) {
    bool free_partner = false;
    for (int o = 0; o < n_spins && !free_partner; ++o) {
      free_partner = o != m && !edges.count({std::min(m, o), std::max(m, o)});
    }
    if (!free_partner) {
      ++meta.skipped_links;
      continue;
    }
    for (;;) {
      int o = static_cast<int>(uniform01(rng) * n_spins);
      if (o == m) continue;
      std::pair<int, int> e{std::min(m, o), std::max(m, o)};
      if (edges.insert(e).second) break;
    }
    ++meta.random_links;
  }

  std::vector<HalfInt> on_site(n_spins);
  on_site[0] = HalfInt::from_twice(1);
  if (fields == FieldPlacement::kParityMatched && n_spins % 2 == 0) on_site[1] = HalfInt::from_twice(1);

  std::vector<Edge> edge_list;
  for (const auto& [a, b] : edges) edge_list.push_back({a, b, HalfInt::from_twice(-1)});

  ProblemInstance inst;
  inst.spin_glass = SpinGlass(n_spins, std::move(on_site), std::move(edge_list));
  inst.seed = seed;
  inst.initial_config = 0;
  inst.metadata = meta;
  return inst;
}

std::string instance_to_json(const ProblemInstance& inst) {
  const auto& sg = inst.spin_glass;
  json j;
  j["n_s"] = sg.n_spins();
  json on = json::array();
  for (auto h : sg.on_site()) on.push_back(h.to_string());
  j["on_site"] = on;
  json edges = json::array();
  for (const auto& e : sg.edges()) edges.push_back(json::array({e.a, e.b, e.j.to_string()}));
  j["edges"] = edges;
  j["seed"] = inst.seed;
  j["initial"] = format_config_hex(inst.initial_config);
  j["metadata"] = {{"chain_links", inst.metadata.chain_links},
                   {"random_links", inst.metadata.random_links},
                   {"skipped_links", inst.metadata.skipped_links}};
  return j.dump(2);
}

namespace {

HalfInt coupling_from_json(const json& v) {
  if (v.is_string()) return HalfInt::parse(v.get<std::string>());
  if (v.is_number()) return HalfInt::from_double(v.get<double>());
  throw InputError("coupling must be a decimal string or number");
}

Config config_from_json(const json& v, int n_spins) {
  if (v.is_number_unsigned()) return v.get<Config>();
  auto s = v.get<std::string>();
  if (s.rfind("0x", 0) == 0) return std::stoull(s.substr(2), nullptr, 16);
  return parse_config(s, n_spins);
}

}  // namespace

ProblemInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  try {
    if (!j.contains("n_s")) throw InputError("instance JSON: missing field 'n_s'");
    int n = j.at("n_s").get<int>();
    std::vector<HalfInt> on_site;
    if (j.contains("on_site")) {
      for (const auto& v : j.at("on_site")) on_site.push_back(coupling_from_json(v));
    }
    std::vector<Edge> edges;
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw InputError("instance JSON: edge must be [m, m', J]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), coupling_from_json(e[2])});
      }
    }
    ProblemInstance inst;
    inst.spin_glass = SpinGlass(n, std::move(on_site), std::move(edges));
    inst.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("initial")) inst.initial_config = config_from_json(j.at("initial"), n);
    if (inst.initial_config >= inst.spin_glass.n_configs()) {
      throw InputError("instance JSON: initial configuration out of range");
    }
    if (j.contains("metadata")) {
      const auto& m = j.at("metadata");
      inst.metadata.chain_links = m.value("chain_links", 0);
      inst.metadata.random_links = m.value("random_links", 0);
      inst.metadata.skipped_links = m.value("skipped_links", 0);
    }
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file '" + path + "'");
  out << instance_to_json(inst) << '\n';
}

}  // namespace icebox
