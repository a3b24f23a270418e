// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "icebox/types.hpp"

namespace icebox {

// Coupling constant restricted to multiples of 1/2, stored as twice its value
// so that energy comparisons are exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  // Throws InputError unless `value` is an exact multiple of 1/2.
  static HalfInt from_double(double value);
  // Parses decimal strings such as "-0.5", "1", "3/2".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  std::string to_string() const;

  friend constexpr bool operator==(HalfInt a, HalfInt b) = default;

 private:
  int twice_ = 0;
};

struct Edge {
  int a = 0;
  int b = 0;
  HalfInt j;
};

// Ising problem on n_s qubits with integer-or-half couplings.
class SpinGlass {
 public:
  static constexpr int kMaxQubits = 30;

  SpinGlass() = default;
  // Validates indices, rejects self-loops and duplicate edges and normalises
  // each edge so that a < b.
  SpinGlass(int n_spins, std::vector<HalfInt> on_site, std::vector<Edge> edges);

  int n_spins() const { return n_spins_; }
  Config n_configs() const { return Config{1} << n_spins_; }
  const std::vector<HalfInt>& on_site() const { return on_site_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Twice the energy, exact.
  std::int64_t energy_twice(Config k) const;
  double energy(Config k) const { return 0.5 * static_cast<double>(energy_twice(k)); }
  // Length-checked variant for bit-strings.
  double energy(std::string_view bits) const;

  // Energies of every configuration (n_s <= 24).
  std::vector<double> all_energies() const;

 private:
  int n_spins_ = 0;
  std::vector<HalfInt> on_site_;
  std::vector<Edge> edges_;
};

// Character m of the string is qubit m: '0' = up, '1' = down.
Config parse_config(std::string_view bits, int n_spins);
std::string format_config(Config k, int n_spins);
std::string format_config_hex(Config k);

int hamming_distance(Config a, Config b);
int popcount(Config k);

// Strict local minima under single spin flips. Exhaustive, n_s <= 20.
std::vector<Config> local_minima(const SpinGlass& sg);
bool is_strict_local_minimum(const SpinGlass& sg, Config k);

struct GroundSet {
  double energy = 0.0;
  std::vector<Config> configs;
};
// Exhaustive ground-state search, n_s <= 24.
GroundSet ground_states(const SpinGlass& sg);

}  // namespace icebox
