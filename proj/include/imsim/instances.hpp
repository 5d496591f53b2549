// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imsim/problem.hpp"

namespace imsim {

/// Grid specification for random QUBO ensembles.
struct EnsembleSpec {
  std::vector<int> sizes;
  std::vector<double> densities;
  int instances_per_cell = 20;
  int coeff_max = kMaxCoeff;
  std::uint64_t base_seed = 1;
};

void validate_ensemble(const EnsembleSpec& spec);

/// Every upper-triangular pair is included independently with probability
/// `density`; included pairs draw a uniform nonzero level in
/// [-coeff_max, +coeff_max]. Fully reproducible from the seed.
ProblemInstance generate_random_qubo(int n, double density, int coeff_max,
                                     std::uint64_t seed);

/// Documented seed-splitting rule: FNV-1a over (base_seed, n, density bits,
/// instance_index) followed by one SplitMix64 finalizer round. Instances at
/// different grid cells never share generator streams, so growing a grid
/// keeps existing instances unchanged.
std::uint64_t instance_sub_seed(std::uint64_t base_seed, int n, double density,
                                int instance_index);

/// Text format, line oriented: '#' starts a comment line; the first data line
/// is "n m"; then m lines "i j w" with 0 <= i < j < n and integer
/// w in [-15, 15] \ {0}. Plain 7-bit text, no trailing data.
std::string write_instance(const ProblemInstance& inst);
ProblemInstance read_instance(const std::string& text);

ProblemInstance load_instance_file(const std::string& path);
void save_instance_file(const ProblemInstance& inst, const std::string& path);

/// Canonical file name: q{n}_d{density}_s{seed}.txt
std::string instance_file_name(int n, double density, std::uint64_t seed);

}  // namespace imsim
