// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/problem.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace imsim {

ProblemInstance::ProblemInstance(int n_spins) : n(n_spins) {
  if (n_spins < 0) throw std::invalid_argument("spin count must be non-negative");
  j.assign(static_cast<std::size_t>(n_spins) * static_cast<std::size_t>(n_spins), 0);
}

void ProblemInstance::set_coupling(int a, int b, int value) {
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw std::invalid_argument("coupling index out of range");
  if (a == b) throw std::invalid_argument("diagonal couplings are not allowed");
  if (value < -kMaxCoeff || value > kMaxCoeff)
    throw std::invalid_argument("coupling level out of range [-15, 15]");
  j[static_cast<std::size_t>(a) * n + b] = value;
  j[static_cast<std::size_t>(b) * n + a] = value;
}

long long ProblemInstance::edge_count() const {
  long long count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coupling(a, b) != 0) ++count;
  return count;
}

double ProblemInstance::realized_density() const {
  if (n < 2) return 0.0;
  const double pairs = 0.5 * n * (n - 1);
  return static_cast<double>(edge_count()) / pairs;
}

void validate_instance(const ProblemInstance& inst) {
  if (inst.n < 0) throw std::invalid_argument("spin count must be non-negative");
  const std::size_t expected = static_cast<std::size_t>(inst.n) * static_cast<std::size_t>(inst.n);
  if (inst.j.size() != expected)
    throw std::invalid_argument("coupling matrix size does not match spin count");
  for (int a = 0; a < inst.n; ++a) {
    if (inst.coupling(a, a) != 0)
      throw std::invalid_argument("coupling matrix must have a zero diagonal");
    for (int b = a + 1; b < inst.n; ++b) {
      const int jab = inst.coupling(a, b);
      if (jab != inst.coupling(b, a))
        throw std::invalid_argument("coupling matrix must be symmetric");
      if (jab < -kMaxCoeff || jab > kMaxCoeff)
        throw std::invalid_argument("coupling level out of range [-15, 15]");
    }
  }
}

void validate_spins(const ProblemInstance& inst, const SpinVector& s) {
  if (static_cast<int>(s.size()) != inst.n)
    throw std::invalid_argument("spin vector length does not match instance");
  for (int v : s)
    if (v != -1 && v != 1) throw std::invalid_argument("spins must be -1 or +1");
}

namespace detail {

Energy hamiltonian_unchecked(const ProblemInstance& inst, const SpinVector& s) {
  Energy h = 0;
  for (int a = 0; a < inst.n; ++a) {
    const int* row = inst.j.data() + static_cast<std::size_t>(a) * inst.n;
    Energy acc = 0;
    for (int b = a + 1; b < inst.n; ++b) acc += static_cast<Energy>(row[b]) * s[b];
    h -= acc * s[a];
  }
  return h;
}

}  // namespace detail

Energy hamiltonian(const ProblemInstance& inst, const SpinVector& s) {
  validate_instance(inst);
  validate_spins(inst, s);
  return detail::hamiltonian_unchecked(inst, s);
}

Energy local_field(const ProblemInstance& inst, const SpinVector& s, int node) {
  validate_spins(inst, s);
  if (node < 0 || node >= inst.n) throw std::invalid_argument("node index out of range");
  const int* row = inst.j.data() + static_cast<std::size_t>(node) * inst.n;
  Energy field = 0;
  for (int b = 0; b < inst.n; ++b)
    if (b != node) field += static_cast<Energy>(row[b]) * s[b];
  return field;
}

int quantize_coeff(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot quantize a non-finite value");
  // std::round already breaks ties away from zero.
  double level = std::round(x);
  if (level > kMaxCoeff) level = kMaxCoeff;
  if (level < -kMaxCoeff) level = -kMaxCoeff;
  return static_cast<int>(level);
}

void validate_graph(const MaxCutGraph& g) {
  if (g.n < 0) throw std::invalid_argument("vertex count must be non-negative");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.v >= g.n || e.u >= e.v)
      throw std::invalid_argument("edges must satisfy 0 <= u < v < n");
    if (!seen.insert({e.u, e.v}).second)
      throw std::invalid_argument("duplicate edge");
  }
}

ProblemInstance maxcut_to_ising(const MaxCutGraph& g) {
  validate_graph(g);
  ProblemInstance inst(g.n);
  for (const auto& e : g.edges) {
    if (e.w < -kMaxCoeff || e.w > kMaxCoeff)
      throw std::invalid_argument("edge weight outside the representable range [-15, 15]");
    inst.set_coupling(e.u, e.v, -e.w);
  }
  inst.density = inst.realized_density();
  return inst;
}

Energy cut_value(const MaxCutGraph& g, const SpinVector& s) {
  validate_graph(g);
  if (static_cast<int>(s.size()) != g.n)
    throw std::invalid_argument("spin vector length does not match graph");
  for (int v : s)
    if (v != -1 && v != 1) throw std::invalid_argument("spins must be -1 or +1");
  Energy cut = 0;
  for (const auto& e : g.edges)
    if (s[e.u] != s[e.v]) cut += e.w;
  return cut;
}

}  // namespace imsim
