// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "icebox/error.hpp"
#include "icebox/instance.hpp"

namespace icebox {
namespace {

std::vector<int> degrees(const SpinGlass& sg) {
  std::vector<int> d(sg.n_spins(), 0);
  for (const auto& e : sg.edges()) {
    ++d[e.a];
    ++d[e.b];
  }
  return d;
}

TEST(Generator, SmallestInstanceKeepsChain) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = generate_instance(3, seed);
    const auto& e = inst.spin_glass.edges();
    EXPECT_LE(e.size(), 3u);
    std::set<std::pair<int, int>> s;
    for (const auto& x : e) s.insert({x.a, x.b});
    EXPECT_TRUE(s.count({0, 1}));
    EXPECT_TRUE(s.count({1, 2}));
  }
}

TEST(Generator, LinkCountsWithinRange) {
  for (int n = 3; n <= 12; ++n) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto inst = generate_instance(n, seed);
      for (int d : degrees(inst.spin_glass)) {
        EXPECT_GE(d, 2) << "n=" << n << " seed=" << seed;
        EXPECT_LE(d, n + 2);
      }
      const auto& m = inst.metadata;
      EXPECT_EQ(m.chain_links, n - 1);
      EXPECT_EQ(m.random_links + m.skipped_links, n);
      EXPECT_EQ(static_cast<int>(inst.spin_glass.edges().size()), m.chain_links + m.random_links);
    }
  }
}

TEST(Generator, CouplingsAreFerroAndHalfInteger) {
  auto inst = generate_instance(9, 4);
  for (const auto& e : inst.spin_glass.edges()) EXPECT_EQ(e.j.twice(), -1);
  EXPECT_EQ(inst.spin_glass.on_site()[0].twice(), 1);
  for (int m = 1; m < 9; ++m) EXPECT_EQ(inst.spin_glass.on_site()[m].twice(), 0);
  auto even = generate_instance(8, 4, FieldPlacement::kParityMatched);
  EXPECT_EQ(even.spin_glass.on_site()[1].twice(), 1);
}

TEST(Generator, DeterministicPerSeed) {
  EXPECT_EQ(instance_to_json(generate_instance(10, 42)), instance_to_json(generate_instance(10, 42)));
  EXPECT_NE(instance_to_json(generate_instance(10, 42)), instance_to_json(generate_instance(10, 43)));
}

TEST(Generator, RejectsTooFewQubits) { EXPECT_THROW(generate_instance(2, 0), ConfigError); }

TEST(InstanceJson, RoundTripUsesExactStrings) {
  auto inst = generate_instance(6, 9);
  auto text = instance_to_json(inst);
  EXPECT_NE(text.find("\"-0.5\""), std::string::npos);
  auto back = instance_from_json(text);
  EXPECT_EQ(instance_to_json(back), text);
  EXPECT_EQ(back.seed, 9u);
}

TEST(InstanceJson, AcceptsMinimalFields) {
  auto inst = instance_from_json(R"({"n_s": 2, "on_site": ["0.5", 0], "edges": [[0, 1, "-1"]], "seed": 3})");
  EXPECT_EQ(inst.spin_glass.n_spins(), 2);
  EXPECT_DOUBLE_EQ(inst.spin_glass.energy("00"), -0.5);
  EXPECT_THROW(instance_from_json(R"({"on_site": []})"), InputError);
  EXPECT_THROW(instance_from_json(R"({"n_s": 1, "on_site": ["0.3"], "edges": []})"), InputError);
}

TEST(InstanceJson, FileRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "icebox_instance_test.json";
  auto inst = generate_instance(5, 1);
  save_instance(inst, path.string());
  EXPECT_EQ(instance_to_json(load_instance(path.string())), instance_to_json(inst));
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path.string()), InputError);
}

}  // namespace
}  // namespace icebox
