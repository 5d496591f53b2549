// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace imsim {

bool is_success(Energy h, Energy h_best) {
  if (h_best < 0) return 100 * h <= 99 * h_best;
  if (h_best == 0) return h == 0;
  return 99 * h <= 100 * h_best;
}

double tts(double tau, double p_suc) {
  if (!std::isfinite(tau) || !(tau > 0))
    throw std::invalid_argument("per-run anneal time must be positive");
  if (!(p_suc >= 0.0 && p_suc <= 1.0))
    throw std::invalid_argument("success rate must lie in [0, 1]");
  if (p_suc == 0.0) return std::numeric_limits<double>::infinity();
  if (p_suc >= 0.99) return tau;  // one run already reaches the target
  return tau * std::log(0.01) / std::log1p(-p_suc);
}

double ets(double power, double tts_value) {
  if (!(power >= 0)) throw std::invalid_argument("power must be non-negative");
  if (std::isnan(tts_value) || tts_value < 0)
    throw std::invalid_argument("TTS must be non-negative");
  if (std::isinf(tts_value)) return std::numeric_limits<double>::infinity();
  return power * tts_value;
}

double normalized_ets(double ets_value, int levels, int n_spins, int interactions) {
  if (levels < 2) throw std::invalid_argument("need at least two coefficient levels");
  if (n_spins < 1 || interactions < 1)
    throw std::invalid_argument("spin and interaction counts must be positive");
  const double edges = 0.5 * n_spins * interactions;
  return ets_value / (std::log2(static_cast<double>(levels)) * edges);
}

double normalized_spin_area(double core_area, int n_spins, int levels,
                            int directionality, int interactions) {
  if (!(core_area > 0)) throw std::invalid_argument("core area must be positive");
  if (n_spins < 1 || interactions < 1)
    throw std::invalid_argument("spin and interaction counts must be positive");
  if (levels < 2) throw std::invalid_argument("need at least two coefficient levels");
  if (directionality != 1 && directionality != 2)
    throw std::invalid_argument("directionality is 1 (undirected) or 2 (directed)");
  const double spin_area = core_area / n_spins;
  return spin_area /
         (std::log2(static_cast<double>(levels)) * directionality * interactions);
}

RunStats summarize_runs(const std::vector<Energy>& run_energies, Energy oracle_h) {
  if (run_energies.empty()) throw std::invalid_argument("no run energies to aggregate");
  RunStats stats;
  stats.runs = static_cast<long long>(run_energies.size());
  stats.oracle_h = oracle_h;
  stats.best_h_found = run_energies.front();
  for (Energy h : run_energies) {
    if (h < stats.best_h_found) stats.best_h_found = h;
    if (is_success(h, oracle_h)) ++stats.successes;
  }
  stats.p_suc = static_cast<double>(stats.successes) / static_cast<double>(stats.runs);
  return stats;
}

TtsSummary summarize_tts(const std::vector<double>& tts_values) {
  if (tts_values.empty()) throw std::invalid_argument("no TTS values to aggregate");
  TtsSummary summary;
  summary.total = static_cast<long long>(tts_values.size());
  for (double v : tts_values) {
    if (std::isnan(v) || v < 0) throw std::invalid_argument("TTS values must be non-negative");
    if (std::isfinite(v)) summary.sorted_tts.push_back(v);
  }
  std::sort(summary.sorted_tts.begin(), summary.sorted_tts.end());
  summary.solved = static_cast<long long>(summary.sorted_tts.size());
  if (summary.solved == 0) {
    summary.mean = std::numeric_limits<double>::infinity();
    summary.median = std::numeric_limits<double>::infinity();
    return summary;
  }
  double acc = 0.0;
  for (double v : summary.sorted_tts) acc += v;
  summary.mean = acc / static_cast<double>(summary.solved);
  const std::size_t mid = summary.sorted_tts.size() / 2;
  summary.median = summary.sorted_tts.size() % 2
                       ? summary.sorted_tts[mid]
                       : 0.5 * (summary.sorted_tts[mid - 1] + summary.sorted_tts[mid]);
  return summary;
}

}  // namespace imsim
