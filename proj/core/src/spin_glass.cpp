// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/spin_glass.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "icebox/error.hpp"

namespace icebox {

HalfInt HalfInt::from_double(double value) {
  double twice = 2.0 * value;
  if (!std::isfinite(twice) || std::nearbyint(twice) != twice || std::fabs(twice) > 1e9) {
    throw InputError("coupling " + std::to_string(value) + " is not a multiple of 1/2");
  }
  return from_twice(static_cast<int>(twice));
}

HalfInt HalfInt::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto read = [&](std::string_view part) {
    double v = 0.0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw InputError("cannot parse coupling '" + std::string(text) + "'");
    }
    return v;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    double num = read(s.substr(0, slash));
    double den = read(s.substr(slash + 1));
    if (den == 0.0) throw InputError("zero denominator in coupling '" + std::string(text) + "'");
    return from_double(num / den);
  }
  return from_double(read(s));
}

std::string HalfInt::to_string() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value());
  return buf;
}

SpinGlass::SpinGlass(int n_spins, std::vector<HalfInt> on_site, std::vector<Edge> edges)
    : n_spins_(n_spins), on_site_(std::move(on_site)), edges_(std::move(edges)) {
  if (n_spins_ < 1 || n_spins_ > kMaxQubits) {
    throw InputError("qubit count " + std::to_string(n_spins_) + " outside [1, " +
                     std::to_string(kMaxQubits) + "]");
  }
  if (on_site_.empty()) on_site_.assign(n_spins_, HalfInt{});
  if (static_cast<int>(on_site_.size()) != n_spins_) {
    throw InputError("on-site list has " + std::to_string(on_site_.size()) + " entries, expected " +
                     std::to_string(n_spins_));
  }
  std::set<std::pair<int, int>> seen;
  for (auto& e : edges_) {
    if (e.a == e.b) throw InputError("self-loop on qubit " + std::to_string(e.a));
    if (e.a < 0 || e.b < 0 || e.a >= n_spins_ || e.b >= n_spins_) {
      throw InputError("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                       ") out of range");
    }
    if (e.a > e.b) std::swap(e.a, e.b);
    if (!seen.insert({e.a, e.b}).second) {
      throw InputError("duplicate edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")");
    }
  }
}

std::int64_t SpinGlass::energy_twice(Config k) const {
  std::int64_t e = 0;
  for (int m = 0; m < n_spins_; ++m) e += on_site_[m].twice() * spin_value(k, m);
  for (const auto& edge : edges_) e += edge.j.twice() * spin_value(k, edge.a) * spin_value(k, edge.b);
  return e;
}

double SpinGlass::energy(std::string_view bits) const {
  return energy(parse_config(bits, n_spins_));
}

std::vector<double> SpinGlass::all_energies() const {
  if (n_spins_ > 24) throw ConfigError("exhaustive enumeration limited to 24 qubits");
  std::vector<double> out(n_configs());
  for (Config k = 0; k < n_configs(); ++k) out[k] = energy(k);
  return out;
}

Config parse_config(std::string_view bits, int n_spins) {
  if (static_cast<int>(bits.size()) != n_spins) {
    throw InputError("configuration '" + std::string(bits) + "' has " +
                     std::to_string(bits.size()) + " bits, expected " + std::to_string(n_spins));
  }
  Config k = 0;
  for (int m = 0; m < n_spins; ++m) {
    if (bits[m] == '1') {
      k |= Config{1} << m;
    } else if (bits[m] != '0') {
      throw InputError("configuration '" + std::string(bits) + "' contains a non-binary digit");
    }
  }
  return k;
}

std::string format_config(Config k, int n_spins) {
  std::string s(n_spins, '0');
  for (int m = 0; m < n_spins; ++m) {
    if ((k >> m) & 1U) s[m] = '1';
  }
  return s;
}

std::string format_config_hex(Config k) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(k));
  return buf;
}

int popcount(Config k) { return std::popcount(k); }
int hamming_distance(Config a, Config b) { return std::popcount(a ^ b); }

namespace {

std::vector<std::int64_t> energies_twice(const SpinGlass& sg, int limit) {
  if (sg.n_spins() > limit) {
    throw ConfigError("exhaustive scan limited to " + std::to_string(limit) + " qubits");
  }
  std::vector<std::int64_t> e(sg.n_configs());
  for (Config k = 0; k < sg.n_configs(); ++k) e[k] = sg.energy_twice(k);
  return e;
}

}  // namespace

bool is_strict_local_minimum(const SpinGlass& sg, Config k) {
  const auto ek = sg.energy_twice(k);
  for (int m = 0; m < sg.n_spins(); ++m) {
    if (sg.energy_twice(k ^ (Config{1} << m)) <= ek) return false;
  }
  return true;
}

std::vector<Config> local_minima(const SpinGlass& sg) {
  const auto e = energies_twice(sg, 20);
  std::vector<Config> out;
  for (Config k = 0; k < sg.n_configs(); ++k) {
    bool strict = true;
    for (int m = 0; m < sg.n_spins() && strict; ++m) strict = e[k ^ (Config{1} << m)] > e[k];
    if (strict) out.push_back(k);
  }
  return out;
}

GroundSet ground_states(const SpinGlass& sg) {
  const auto e = energies_twice(sg, 24);
  auto lo = *std::min_element(e.begin(), e.end());
  GroundSet g;
  g.energy = 0.5 * static_cast<double>(lo);
  for (Config k = 0; k < sg.n_configs(); ++k) {
    if (e[k] == lo) g.configs.push_back(k);
  }
  return g;
}

}  // namespace icebox
