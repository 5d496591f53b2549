// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "imsim/problem.hpp"

namespace imsim {

/// Continuous-programming timeline: a row-level DAC sweeps the coupling
/// columns at a fixed dwell (80 MHz -> 12.5 ns per column), while the DAC
/// supply is periodically gated off. A column selected during a gate-off
/// window is forced to zero; a column selected while enabled is reprogrammed
/// to its nominal value. Between refreshes the stored coefficients leak.
struct PerturbationSchedule {
  double column_dwell = 12.5e-9;   // seconds per column
  int n_columns = 0;               // bound to the instance size
  // 39 dwells per gating cycle: coprime with 64 columns, so successive
  // gate-off windows rotate through the whole array instead of re-zeroing
  // the same columns every cycle.
  double gate_period = 487.5e-9;   // seconds between gating cycles
  double gate_off_fraction = 0.25; // trailing fraction of each period with DACs off
  // A zeroed column stays dark until its next enabled selection, up to one
  // full sweep after the last gate-off window; 1.4 us leaves a truly clean
  // final descent after restoration completes.
  double quiet_tail = 1400e-9;     // gating suppressed this long before the end
  double leak_tau = 50e-6;         // leakage time constant; +infinity = no leakage
  bool enabled = true;             // gating windows active at all
};

/// Throws std::invalid_argument on bad parameters. dt must divide the column
/// dwell evenly so refresh events always land on step boundaries.
void validate_schedule(const PerturbationSchedule& sched, double anneal_time, double dt);

/// Per-column programming state: when each column was last written and
/// whether it is currently forced to zero.
struct ColumnStatus {
  std::vector<double> last_refresh;
  std::vector<char> zeroed;

  /// All columns freshly programmed at t = 0, none zeroed.
  static ColumnStatus programmed(int n);
};

/// Column under the DAC at time t: floor(t / dwell) mod n_columns.
int selected_column(double t, const PerturbationSchedule& sched);

/// False exactly when gating is enabled, t is outside the quiet tail, and the
/// phase of t within the gate period falls in the trailing off-fraction.
bool dac_enabled(double t, const PerturbationSchedule& sched, double anneal_time);

/// Applies every column-selection event in (t_from, t_to]: refresh/restore
/// when the DAC is enabled at the event instant, zero when it is not. Steps
/// longer than one dwell are rejected so no event can be skipped.
void advance_schedule(ColumnStatus& status, double t_from, double t_to,
                      const PerturbationSchedule& sched, double anneal_time);

/// exp(-dt_since_refresh / leak_tau); 1 when leak_tau is infinite.
double leak_factor(double dt_since_refresh, double leak_tau);

/// J_eff[i][j] = 0 for zeroed columns, else J[i][j] scaled by the leakage of
/// column j. Column scaling makes the result transiently asymmetric; the node
/// dynamics consume it row-wise.
void effective_matrix_into(const ProblemInstance& inst, const ColumnStatus& status,
                           double t, const PerturbationSchedule& sched,
                           std::vector<double>& out);
std::vector<double> effective_matrix(const ProblemInstance& inst, const ColumnStatus& status,
                                     double t, const PerturbationSchedule& sched);

}  // namespace imsim
