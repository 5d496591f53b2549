// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imsim/dynamics.hpp"
#include "imsim/instances.hpp"
#include "imsim/metrics.hpp"
#include "imsim/perturbation.hpp"
#include "imsim/solvers.hpp"

namespace imsim {

/// Whether a run anneals with the refresh/gating schedule attached or with
/// the programmed couplings held constant (pure gradient descent).
enum class RunMode { gradient, perturb };

const char* run_mode_name(RunMode m);

enum class OracleChoice { automatic, brute, tabu };

const char* oracle_choice_name(OracleChoice c);

/// Best-known-energy policy for a solve: exhaustive for n <= 24 under
/// `automatic`, otherwise Tabu (user parameters, or the generous default
/// budget seeded from the instance).
OracleResult run_oracle(const ProblemInstance& inst, OracleChoice choice,
                        const std::optional<TabuParams>& user_tabu);

struct SolveParams {
  DynamicsConfig dyn;
  PerturbationSchedule sched;  // n_columns is bound to each instance at run time
  int runs = 1000;
  std::uint64_t run_seed = 1;
  double power = 31.6e-3;  // W, for energy-to-solution
  int trace_runs = 0;      // capture per-step traces for the first k runs
};

void validate_solve_params(const SolveParams& params);

struct PerRunRow {
  std::uint64_t lfsr_state = 0;
  Energy energy = 0;
  long long flips = 0;
  bool success = false;
};

/// One output row: everything needed to reproduce the result bit-exactly
/// (instance seed, LFSR seed, config hash) plus the aggregated metrics.
struct InstanceSummary {
  std::string instance_id;
  int n = 0;
  double density = 0.0;  // realized
  std::uint64_t instance_seed = 0;
  RunMode mode = RunMode::gradient;
  long long runs = 0;
  long long successes = 0;
  double p_suc = 0.0;
  Energy best_h = 0;
  Energy oracle_h = 0;
  std::string oracle_method;
  double tts_seconds = 0.0;
  double ets_joules = 0.0;
  std::uint64_t lfsr_seed = 0;
  std::string config_hash;
  std::vector<PerRunRow> per_run;               // kept only when requested
  std::vector<std::vector<TracePoint>> traces;  // first trace_runs runs
};

/// One LFSR stream per instance, shifted once per run, so runs in different
/// modes start from identical spin configurations. Derived deterministically
/// from (run_seed, instance_seed); never zero.
std::uint64_t derive_lfsr_seed(std::uint64_t run_seed, std::uint64_t instance_seed);

/// FNV-1a over the canonical key=value rendering of the solve and oracle
/// configuration (mode and worker count excluded), as a 16-digit hex string.
std::string config_hash_hex(const SolveParams& params, OracleChoice oracle,
                            const std::optional<TabuParams>& user_tabu);

InstanceSummary solve_instance(const ProblemInstance& inst, const SolveParams& params,
                               RunMode mode, const OracleResult& oracle,
                               OracleChoice oracle_choice,
                               const std::optional<TabuParams>& user_tabu,
                               bool keep_per_run);

struct BenchConfig {
  EnsembleSpec ensemble;
  SolveParams solve;
  bool run_gradient = true;
  bool run_perturb = true;
  OracleChoice oracle = OracleChoice::automatic;
  std::optional<TabuParams> tabu;
  int workers = 0;  // 0 = hardware concurrency
  // Guard against accidentally huge grids: estimated node-updates before
  // anything runs. Override with force.
  unsigned long long max_node_steps = 100'000'000'000ULL;
  bool force = false;
};

unsigned long long estimate_node_steps(const BenchConfig& cfg);

struct SrGridRow {
  RunMode mode = RunMode::gradient;
  int n = 0;
  double density = 0.0;  // requested cell density
  int instances = 0;
  double mean_sr = 0.0;
};

struct TtsDistRow {
  RunMode mode = RunMode::gradient;
  int rank = 0;  // 1-based over solved instances, TTS ascending
  std::string instance_id;
  double tts_seconds = 0.0;
  double solved_fraction = 0.0;  // rank / total instances
};

struct TtsSummaryRow {
  RunMode mode = RunMode::gradient;
  long long instances = 0;
  long long solved = 0;
  double mean_tts_seconds = 0.0;
  double median_tts_seconds = 0.0;
};

struct BenchResult {
  std::vector<InstanceSummary> rows;  // canonical order: cell, instance, mode
  std::vector<SrGridRow> sr_grid;
  std::vector<TtsDistRow> tts_distribution;
  std::vector<TtsSummaryRow> tts_summary;
};

/// Runs the full grid. Cells are distributed across workers; each cell is
/// self-contained and deterministic, and results are merged in canonical
/// order, so the output is byte-identical for any worker count.
BenchResult run_bench(const BenchConfig& cfg);

// --- canonical text output -------------------------------------------------
// All numbers are rendered with shortest round-trip formatting, '.' decimal
// point, no locale dependence; infinities render as "inf".

std::string format_double(double value);

std::string summary_csv_header();
std::string summary_csv_row(const InstanceSummary& row);
std::string rows_csv(const std::vector<InstanceSummary>& rows);

std::string per_run_csv_header();
std::string per_run_csv_rows(const InstanceSummary& row);

std::string trace_csv(const std::vector<TracePoint>& trace);

std::string sr_grid_csv(const BenchResult& result);
std::string tts_distribution_csv(const BenchResult& result);
std::string tts_summary_csv(const BenchResult& result);

/// {"rows": [...]} with the same field names and value rendering as the CSV;
/// optionally includes per-run rows.
std::string rows_json(const std::vector<InstanceSummary>& rows, bool include_per_run);

/// Single document with rows, sr_grid, tts_distribution, and tts_summary.
std::string bench_json(const BenchResult& result);

}  // namespace imsim
