// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "imsim/perturbation.hpp"
#include "imsim/problem.hpp"

namespace imsim {

/// Node voltages (normalized to the rails [0, 1]), simulation clock, and the
/// cumulative count of quantizer transitions.
struct MachineState {
  std::vector<double> v;
  double t = 0.0;
  long long flips = 0;
};

struct DynamicsConfig {
  double rho = 3.0e5;        // slew rate, V/s per coupling unit (0.3 V/us)
  double dt = 0.5e-9;        // integration step, s
  double anneal_time = 3e-6; // total evolution time, s
};

/// Throws std::invalid_argument on bad parameters. anneal_time must be an
/// integer multiple of dt so a run is a whole number of steps.
void validate_config(const DynamicsConfig& cfg);

/// 1-bit readout: -1 below half rail, +1 at or above it.
int quantize_spin(double v);

/// rho * sum_{j != node} j_eff_row[j] * spins[j]. The row is one row of an
/// effective coupling matrix and may be non-integer; its diagonal entry must
/// be zero.
double node_derivative(const std::vector<double>& j_eff_row, const SpinVector& spins,
                       double rho, int node);

/// One synchronous explicit step: spins are sampled once at the step start,
/// then every voltage moves by dt * derivative and is clamped to the rails.
/// The flip counter grows by the number of quantizer transitions.
void euler_step(MachineState& state, const std::vector<double>& j_eff,
                const DynamicsConfig& cfg);

/// 64-bit Fibonacci LFSR, taps at bits 64, 63, 61, 60 (maximal length).
/// The all-zero register is the absorbing state and is rejected.
struct LfsrState {
  std::uint64_t reg = 1;
};

LfsrState lfsr_next(LfsrState s);

/// Rail initialization from the register bits: v_i = 1.0 where bit i is set,
/// 0.0 otherwise. n must not exceed the 64-bit register width.
std::vector<double> init_spins(LfsrState s, int n);

struct TracePoint {
  double t = 0.0;
  Energy h = 0;
  long long flips = 0;
};

struct RunResult {
  SpinVector spins;           // final readout
  Energy energy = 0;          // final energy under the programmed couplings
  Energy initial_energy = 0;
  long long flips = 0;
  std::vector<TracePoint> trace;  // per-step (t, H, flips) when tracing is on
};

/// Integrates from t = 0 to cfg.anneal_time. With a schedule attached the
/// effective couplings follow the refresh/gating timeline; without one the
/// programmed matrix is used unchanged (gradient-descent-only mode). The
/// reported energies always use the programmed matrix.
RunResult run_anneal(const ProblemInstance& inst, const DynamicsConfig& cfg,
                     const PerturbationSchedule* sched, const std::vector<double>& init_v,
                     bool trace = false);

}  // namespace imsim
