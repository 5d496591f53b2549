// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace imsim {

using Energy = std::int64_t;
using SpinVector = std::vector<int>;  // entries are -1 or +1

// Hardware bounds: 64 nodes, 31 programmable coupling levels
// (4-bit magnitude plus sign; the two zero codes collapse to one level).
inline constexpr int kMaxSpins = 64;
inline constexpr int kMaxCoeff = 15;
inline constexpr int kCoeffLevels = 31;

/// Symmetric integer coupling matrix with zero diagonal and entries in
/// [-kMaxCoeff, +kMaxCoeff], plus generator metadata.
struct ProblemInstance {
  int n = 0;
  std::vector<int> j;        // dense n*n, row-major
  double density = 0.0;      // realized fraction of coupled upper-triangular pairs
  std::uint64_t seed = 0;
  std::string label;

  ProblemInstance() = default;
  explicit ProblemInstance(int n_spins);

  int coupling(int a, int b) const {
    return j[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)];
  }
  /// Sets both (a, b) and (b, a). Rejects the diagonal and out-of-range levels.
  void set_coupling(int a, int b, int value);
  long long edge_count() const;
  double realized_density() const;
};

/// Throws std::invalid_argument if the matrix is not symmetric with zero
/// diagonal and in-range entries.
void validate_instance(const ProblemInstance& inst);
void validate_spins(const ProblemInstance& inst, const SpinVector& s);

/// H(s) = -sum_{i<j} J_ij s_i s_j. Validates the instance and the spin vector.
Energy hamiltonian(const ProblemInstance& inst, const SpinVector& s);

/// sum_{j != i} J_ij s_j.
Energy local_field(const ProblemInstance& inst, const SpinVector& s, int node);

/// Nearest programmable level; halfway cases round away from zero; the result
/// is clamped to [-kMaxCoeff, +kMaxCoeff]. Non-finite input is rejected.
int quantize_coeff(double x);

struct MaxCutGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    int w = 0;
  };
  int n = 0;
  std::vector<Edge> edges;
};

/// Throws unless every edge has 0 <= u < v < n and no (u, v) pair repeats.
void validate_graph(const MaxCutGraph& g);

/// J_ij = -W_ij, zero elsewhere: maximizing the cut of g minimizes the
/// Hamiltonian of the result. Weights must already be representable levels.
ProblemInstance maxcut_to_ising(const MaxCutGraph& g);

/// Total weight of edges whose endpoints carry opposite spins.
Energy cut_value(const MaxCutGraph& g, const SpinVector& s);

namespace detail {
// Hot-path evaluator; callers must have validated inputs once up front.
Energy hamiltonian_unchecked(const ProblemInstance& inst, const SpinVector& s);
}  // namespace detail

}  // namespace imsim
