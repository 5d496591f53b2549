// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace imsim {

namespace {

// Tolerance for mapping a time onto the dwell/period grid. Quotients stay
// below ~1e6 here, so absolute 1e-6 on the quotient is far above accumulated
// rounding error yet far below one grid cell.
constexpr double kGridEps = 1e-6;

long long grid_index(double t, double cell) {
  return static_cast<long long>(std::floor(t / cell + kGridEps));
}

}  // namespace

void validate_schedule(const PerturbationSchedule& sched, double anneal_time, double dt) {
  if (!(sched.column_dwell > 0)) throw std::invalid_argument("column dwell must be positive");
  if (sched.n_columns < 1) throw std::invalid_argument("schedule needs at least one column");
  if (!(sched.gate_off_fraction >= 0.0 && sched.gate_off_fraction < 1.0))
    throw std::invalid_argument("gate off-fraction must lie in [0, 1)");
  if (!(sched.gate_period > 0)) throw std::invalid_argument("gate period must be positive");
  if (!(sched.quiet_tail >= 0)) throw std::invalid_argument("quiet tail must be non-negative");
  if (!(sched.leak_tau > 0)) throw std::invalid_argument("leakage time constant must be positive");
  if (sched.enabled) {
    const double sweep = sched.n_columns * sched.column_dwell;
    if (sched.quiet_tail < sweep * (1.0 - kGridEps))
      throw std::invalid_argument("quiet tail must cover at least one full column sweep");
  }
  if (!(dt > 0) || dt > sched.column_dwell * (1.0 + kGridEps))
    throw std::invalid_argument("integration step must not exceed the column dwell");
  const double ratio = sched.column_dwell / dt;
  if (std::abs(ratio - std::round(ratio)) > kGridEps)
    throw std::invalid_argument("integration step must divide the column dwell evenly");
  if (!(anneal_time > 0)) throw std::invalid_argument("anneal time must be positive");
}

ColumnStatus ColumnStatus::programmed(int n) {
  if (n < 1) throw std::invalid_argument("column status needs at least one column");
  ColumnStatus status;
  status.last_refresh.assign(static_cast<std::size_t>(n), 0.0);
  status.zeroed.assign(static_cast<std::size_t>(n), 0);
  return status;
}

int selected_column(double t, const PerturbationSchedule& sched) {
  if (t < 0) throw std::invalid_argument("time must be non-negative");
  return static_cast<int>(grid_index(t, sched.column_dwell) % sched.n_columns);
}

bool dac_enabled(double t, const PerturbationSchedule& sched, double anneal_time) {
  if (t < 0 || t > anneal_time * (1.0 + kGridEps))
    throw std::invalid_argument("time outside the anneal window");
  if (!sched.enabled) return true;
  if (t >= anneal_time - sched.quiet_tail) return true;
  const double phase = t - static_cast<double>(grid_index(t, sched.gate_period)) * sched.gate_period;
  const double off_start = (1.0 - sched.gate_off_fraction) * sched.gate_period;
  return phase < off_start * (1.0 - kGridEps);
}

void advance_schedule(ColumnStatus& status, double t_from, double t_to,
                      const PerturbationSchedule& sched, double anneal_time) {
  if (t_from > t_to) throw std::invalid_argument("time interval is reversed");
  if (t_to - t_from > sched.column_dwell * (1.0 + kGridEps))
    throw std::invalid_argument("schedule step spans more than one column dwell");
  if (static_cast<int>(status.last_refresh.size()) != sched.n_columns)
    throw std::invalid_argument("column status size does not match the schedule");
  const long long first = grid_index(t_from, sched.column_dwell) + 1;
  const long long last = grid_index(t_to, sched.column_dwell);
  for (long long m = first; m <= last; ++m) {
    const double t_event = static_cast<double>(m) * sched.column_dwell;
    const int col = static_cast<int>(m % sched.n_columns);
    if (dac_enabled(t_event, sched, anneal_time)) {
      status.last_refresh[col] = t_event;
      status.zeroed[col] = 0;
    } else {
      status.zeroed[col] = 1;
    }
  }
}

double leak_factor(double dt_since_refresh, double leak_tau) {
  if (dt_since_refresh < 0) throw std::invalid_argument("elapsed time must be non-negative");
  if (!(leak_tau > 0)) throw std::invalid_argument("leakage time constant must be positive");
  if (std::isinf(leak_tau)) return 1.0;
  return std::exp(-dt_since_refresh / leak_tau);
}

void effective_matrix_into(const ProblemInstance& inst, const ColumnStatus& status,
                           double t, const PerturbationSchedule& sched,
                           std::vector<double>& out) {
  const int n = inst.n;
  if (n < 1 || n > kMaxSpins)
    throw std::invalid_argument("effective matrix is limited to the 64-node array");
  if (static_cast<int>(status.last_refresh.size()) != n || sched.n_columns != n)
    throw std::invalid_argument("instance, column status, and schedule sizes must agree");
  out.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  double scale[kMaxSpins];
  for (int col = 0; col < n; ++col)
    scale[col] = status.zeroed[col]
                     ? 0.0
                     : leak_factor(t - status.last_refresh[col], sched.leak_tau);
  for (int row = 0; row < n; ++row) {
    const int* jrow = inst.j.data() + static_cast<std::size_t>(row) * n;
    double* orow = out.data() + static_cast<std::size_t>(row) * n;
    for (int col = 0; col < n; ++col) orow[col] = jrow[col] * scale[col];
  }
}

std::vector<double> effective_matrix(const ProblemInstance& inst, const ColumnStatus& status,
                                     double t, const PerturbationSchedule& sched) {
  std::vector<double> out;
  effective_matrix_into(inst, status, t, sched, out);
  return out;
}

}  // namespace imsim
