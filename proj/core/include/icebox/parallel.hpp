// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace icebox {

// Worker count from ICEBOX_THREADS, falling back to hardware concurrency.
int default_worker_count();

// Runs fn(i) for i in [0, n) on up to `workers` threads. Work is pulled from
// a shared counter so results must be written to per-index slots. The first
// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int workers = 0);

// Independent generator for a (seed, indices...) tuple.
std::mt19937_64 make_stream(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> indices = {});

// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

}  // namespace icebox
