// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "imsim/problem.hpp"

namespace imsim {

/// A run succeeds when its final energy reaches at least 99% of the
/// best-known energy. For negative best-known energies (the generic case)
/// this is H <= 0.99 * H_best, evaluated in exact integer arithmetic as
/// 100 H <= 99 H_best. A zero best requires exactness; a positive best gets
/// the symmetric 1% relative slack (H <= H_best / 0.99).
bool is_success(Energy h, Energy h_best);

/// Expected time to 99% cumulative success probability:
/// TTS = tau * ln(0.01) / ln(1 - p_suc). Capped at tau once a single run
/// already meets the target (p_suc >= 0.99); +infinity when p_suc = 0.
double tts(double tau, double p_suc);

/// ETS = power * TTS; an infinite TTS yields an infinite ETS at any power.
double ets(double power, double tts_value);

/// ETS / (log2(levels) * n_spins * interactions / 2); the divisor is the
/// edge-bit count of the coupling fabric.
double normalized_ets(double ets_value, int levels, int n_spins, int interactions);

/// (core_area / n_spins) / (log2(levels) * directionality * interactions);
/// directionality is 2 for directed coupling fabrics, 1 for undirected.
double normalized_spin_area(double core_area, int n_spins, int levels,
                            int directionality, int interactions);

struct RunStats {
  long long runs = 0;
  long long successes = 0;
  double p_suc = 0.0;
  Energy best_h_found = 0;
  Energy oracle_h = 0;
};

/// Counts successes against the oracle energy; exact on counts.
RunStats summarize_runs(const std::vector<Energy>& run_energies, Energy oracle_h);

/// Distribution summary over per-instance TTS values. Mean and median are
/// taken over the finite (solved) entries, which are kept sorted ascending;
/// unsolved instances (infinite TTS) are only counted.
struct TtsSummary {
  std::vector<double> sorted_tts;
  long long total = 0;
  long long solved = 0;
  double mean = 0.0;
  double median = 0.0;
};

TtsSummary summarize_tts(const std::vector<double>& tts_values);

}  // namespace imsim
