// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace imsim {

namespace {

constexpr double kGridEps = 1e-6;

// Fixed-order dot product with four independent accumulators. Every caller in
// the integrator goes through this single definition, so one step computed via
// the public pieces and one computed inside run_anneal are bit-identical.
double dot4(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

void validate_config(const DynamicsConfig& cfg) {
  if (!(cfg.rho > 0)) throw std::invalid_argument("slew coefficient must be positive");
  if (!(cfg.dt > 0)) throw std::invalid_argument("integration step must be positive");
  if (!(cfg.anneal_time >= cfg.dt))
    throw std::invalid_argument("anneal time must be at least one integration step");
  const double steps = cfg.anneal_time / cfg.dt;
  if (steps > 1e9) throw std::invalid_argument("anneal would take more than 1e9 steps");
  if (std::abs(steps - std::round(steps)) > kGridEps)
    throw std::invalid_argument("anneal time must be an integer multiple of dt");
}

int quantize_spin(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot quantize a non-finite voltage");
  return v >= 0.5 ? 1 : -1;
}

double node_derivative(const std::vector<double>& j_eff_row, const SpinVector& spins,
                       double rho, int node) {
  const int n = static_cast<int>(spins.size());
  if (static_cast<int>(j_eff_row.size()) != n)
    throw std::invalid_argument("coupling row length does not match spin count");
  if (node < 0 || node >= n) throw std::invalid_argument("node index out of range");
  if (n > kMaxSpins) throw std::invalid_argument("node dynamics are limited to 64 spins");
  if (j_eff_row[node] != 0.0)
    throw std::invalid_argument("a node does not couple to itself; diagonal must be zero");
  double sd[kMaxSpins];
  for (int i = 0; i < n; ++i) sd[i] = spins[i] > 0 ? 1.0 : -1.0;
  return rho * dot4(j_eff_row.data(), sd, n);
}

void euler_step(MachineState& state, const std::vector<double>& j_eff,
                const DynamicsConfig& cfg) {
  const int n = static_cast<int>(state.v.size());
  if (n < 1 || n > kMaxSpins)
    throw std::invalid_argument("machine state is limited to the 64-node array");
  if (j_eff.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("effective matrix size does not match machine state");

  // Spins sampled once at the step start; the derivative depends only on them,
  // so the voltages can be updated in place.
  double sd[kMaxSpins];
  int s0[kMaxSpins];
  for (int i = 0; i < n; ++i) {
    const int s = state.v[i] >= 0.5 ? 1 : -1;
    s0[i] = s;
    sd[i] = static_cast<double>(s);
  }
  for (int i = 0; i < n; ++i) {
    const double* row = j_eff.data() + static_cast<std::size_t>(i) * n;
    const double deriv = cfg.rho * dot4(row, sd, n);
    double nv = state.v[i] + cfg.dt * deriv;
    if (nv < 0.0) nv = 0.0;
    if (nv > 1.0) nv = 1.0;
    if (!std::isfinite(nv))
      throw std::runtime_error("node voltage became non-finite at t = " +
                               std::to_string(state.t) + " (node " + std::to_string(i) + ")");
    state.v[i] = nv;
  }
  long long changed = 0;
  for (int i = 0; i < n; ++i)
    if ((state.v[i] >= 0.5 ? 1 : -1) != s0[i]) ++changed;
  state.flips += changed;
  state.t += cfg.dt;
}

LfsrState lfsr_next(LfsrState s) {
  if (s.reg == 0) throw std::invalid_argument("the all-zero LFSR state is absorbing");
  // x^64 + x^63 + x^61 + x^60 + 1, Fibonacci form shifting toward bit 0.
  const std::uint64_t bit =
      (s.reg ^ (s.reg >> 1) ^ (s.reg >> 3) ^ (s.reg >> 4)) & 1ULL;
  s.reg = (s.reg >> 1) | (bit << 63);
  return s;
}

std::vector<double> init_spins(LfsrState s, int n) {
  if (n < 1 || n > kMaxSpins)
    throw std::invalid_argument("spin initialization supports 1 to 64 nodes");
  if (s.reg == 0) throw std::invalid_argument("the all-zero LFSR state is absorbing");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = ((s.reg >> i) & 1ULL) ? 1.0 : 0.0;
  return v;
}

RunResult run_anneal(const ProblemInstance& inst, const DynamicsConfig& cfg,
                     const PerturbationSchedule* sched, const std::vector<double>& init_v,
                     bool trace) {
  validate_instance(inst);
  validate_config(cfg);
  const int n = inst.n;
  if (n < 1 || n > kMaxSpins)
    throw std::invalid_argument("the machine anneals 1 to 64 spins");
  if (static_cast<int>(init_v.size()) != n)
    throw std::invalid_argument("initial voltage vector does not match instance size");
  for (double v : init_v)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("initial voltages must lie within the rails [0, 1]");

  PerturbationSchedule local_sched;
  if (sched) {
    local_sched = *sched;
    if (local_sched.n_columns == 0) local_sched.n_columns = n;
    if (local_sched.n_columns != n)
      throw std::invalid_argument("schedule column count does not match instance size");
    validate_schedule(local_sched, cfg.anneal_time, cfg.dt);
  }

  MachineState state;
  state.v = init_v;

  auto read_spins = [&]() {
    SpinVector s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[i] = state.v[i] >= 0.5 ? 1 : -1;
    return s;
  };

  RunResult result;
  result.initial_energy = detail::hamiltonian_unchecked(inst, read_spins());

  const long long n_steps = std::llround(cfg.anneal_time / cfg.dt);
  std::vector<double> j_eff;
  ColumnStatus status;
  if (sched) {
    status = ColumnStatus::programmed(n);
  } else {
    // Gradient-only mode: the programmed couplings, held constant.
    j_eff.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < j_eff.size(); ++k) j_eff[k] = inst.j[k];
  }

  if (trace) {
    result.trace.reserve(static_cast<std::size_t>(n_steps) + 1);
    result.trace.push_back({0.0, result.initial_energy, 0});
  }

  for (long long k = 0; k < n_steps; ++k) {
    const double t_k = static_cast<double>(k) * cfg.dt;
    if (sched) {
      if (k > 0)
        advance_schedule(status, static_cast<double>(k - 1) * cfg.dt, t_k, local_sched,
                         cfg.anneal_time);
      effective_matrix_into(inst, status, t_k, local_sched, j_eff);
    }
    euler_step(state, j_eff, cfg);
    if (trace)
      result.trace.push_back(
          {state.t, detail::hamiltonian_unchecked(inst, read_spins()), state.flips});
  }

  result.spins = read_spins();
  result.energy = detail::hamiltonian_unchecked(inst, result.spins);
  result.flips = state.flips;
  return result;
}

}  // namespace imsim
