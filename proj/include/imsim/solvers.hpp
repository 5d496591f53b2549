// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imsim/problem.hpp"

namespace imsim {

enum class OracleMethod { brute, tabu };

const char* oracle_method_name(OracleMethod m);

struct OracleResult {
  Energy best_energy = 0;
  SpinVector best_config;
  OracleMethod method = OracleMethod::brute;
  long long iterations_used = 0;
  // Populated only when TabuParams::record_incumbents is set; the incumbent
  // energy after every accepted move, concatenated across restarts.
  std::vector<Energy> incumbent_history;
};

struct TabuParams {
  int tenure = 8;
  long long max_iterations = 5000;  // single-flip moves per restart
  int restarts = 10;
  std::uint64_t seed = 1;
  bool record_incumbents = false;
};

/// Generous budget used for best-known energies when exhaustive search is out
/// of reach: tenure n/4, 100 n iterations, 20 restarts.
TabuParams default_tabu_budget(int n, std::uint64_t seed);

/// Exact minimum over all 2^n states via Gray-code enumeration with
/// incremental energy updates. Ties resolve to the configuration whose
/// bit pattern (0 = spin +1, index 0 first) is lexicographically lowest.
/// Guarded to n <= 24.
OracleResult brute_force(const ProblemInstance& inst);

/// Single-flip best-improvement Tabu search with aspiration: each move flips
/// the spin with the lowest energy delta among non-tabu spins (ties to the
/// lowest index), a flipped spin stays tabu for `tenure` moves, and a tabu
/// flip is allowed when it would beat the incumbent. Restarts are independent
/// and deterministic under the seed.
OracleResult tabu_search(const ProblemInstance& inst, const TabuParams& params);

/// Best-known energy policy: exhaustive search up to 24 spins, otherwise Tabu
/// with the generous default budget seeded from the instance.
OracleResult best_known(const ProblemInstance& inst);

/// '0' for spin +1, '1' for spin -1, node 0 first.
std::string config_bitstring(const SpinVector& s);

}  // namespace imsim
