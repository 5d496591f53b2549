/*
 * Copyright (c) 2026 the imsim developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the imsim shared library: a behavioral simulator of a 64-spin
 * all-to-all current-mode Ising machine with column-wise continuous
 * programming and landscape perturbation, plus the benchmarking harness
 * (success rate, time-to-solution, energy-to-solution) built around it.
 *
 * All functions returning int use the imsim_status codes below; on any
 * failure imsim_last_error() describes the problem for the calling thread.
 * Strings returned through char** are heap-allocated and must be released
 * with imsim_string_free().
 */

#ifndef IMSIM_H
#define IMSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IMSIM_API __declspec(dllexport)
#else
#define IMSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum imsim_status {
  IMSIM_OK = 0,
  IMSIM_ERR_INVALID_ARGUMENT = 1,
  IMSIM_ERR_PARSE = 2,
  IMSIM_ERR_IO = 3,
  IMSIM_ERR_UNSUPPORTED = 4,
  IMSIM_ERR_RESOURCE_LIMIT = 5,
  IMSIM_ERR_INTERNAL = 6
} imsim_status;

typedef enum imsim_oracle_method {
  IMSIM_ORACLE_AUTO = 0,  /* exhaustive up to 24 spins, tabu beyond */
  IMSIM_ORACLE_BRUTE = 1,
  IMSIM_ORACLE_TABU = 2
} imsim_oracle_method;

/* Opaque handles. */
typedef struct imsim_problem imsim_problem;
typedef struct imsim_oracle imsim_oracle;
typedef struct imsim_batch imsim_batch;
typedef struct imsim_bench imsim_bench;

IMSIM_API const char* imsim_version(void);
IMSIM_API const char* imsim_status_name(int status);
/* Message from the most recent failing call on this thread ("" if none). */
IMSIM_API const char* imsim_last_error(void);
IMSIM_API void imsim_string_free(char* text);

/* --- problem instances --------------------------------------------------- */

IMSIM_API int imsim_problem_generate(int n, double density, int coeff_max,
                                     uint64_t seed, imsim_problem** out);
IMSIM_API int imsim_problem_from_text(const char* text, imsim_problem** out);
IMSIM_API int imsim_problem_load(const char* path, imsim_problem** out);
IMSIM_API int imsim_problem_to_text(const imsim_problem* p, char** out);
IMSIM_API int imsim_problem_save(const imsim_problem* p, const char* path);
IMSIM_API void imsim_problem_free(imsim_problem* p);

IMSIM_API int imsim_problem_size(const imsim_problem* p);
IMSIM_API long long imsim_problem_edges(const imsim_problem* p);
IMSIM_API double imsim_problem_density(const imsim_problem* p);
IMSIM_API uint64_t imsim_problem_seed(const imsim_problem* p);
IMSIM_API const char* imsim_problem_label(const imsim_problem* p);
IMSIM_API int imsim_problem_coupling(const imsim_problem* p, int i, int j, int* out);
/* spins holds n entries of -1 or +1. */
IMSIM_API int imsim_problem_energy(const imsim_problem* p, const int* spins, int n,
                                   int64_t* out);
/* Deterministic per-cell seed used by ensemble generation. */
IMSIM_API uint64_t imsim_sub_seed(uint64_t base_seed, int n, double density,
                                  int instance_index);

/* --- best-known-energy oracles -------------------------------------------- */

typedef struct imsim_tabu_params {
  int tenure;
  long long max_iterations; /* single-flip moves per restart */
  int restarts;
  uint64_t seed;
} imsim_tabu_params;

/* Generous default budget for n spins: tenure n/4, 100n iterations, 20 restarts. */
IMSIM_API void imsim_tabu_params_default(int n, imsim_tabu_params* out);

/* tabu may be NULL: AUTO derives a budget from the instance, TABU uses the
 * generous default budget. */
IMSIM_API int imsim_oracle_solve(const imsim_problem* p, int method,
                                 const imsim_tabu_params* tabu, imsim_oracle** out);
IMSIM_API void imsim_oracle_free(imsim_oracle* o);
IMSIM_API int64_t imsim_oracle_energy(const imsim_oracle* o);
IMSIM_API const char* imsim_oracle_method_name(const imsim_oracle* o);
/* '0' = spin +1, '1' = spin -1, node 0 first. */
IMSIM_API const char* imsim_oracle_bitstring(const imsim_oracle* o);
IMSIM_API long long imsim_oracle_iterations(const imsim_oracle* o);

/* --- annealing runs -------------------------------------------------------- */

typedef struct imsim_solve_params {
  /* node dynamics */
  double rho;         /* slew rate, V/s per coupling unit */
  double dt;          /* integration step, s */
  double anneal_time; /* per-run anneal, s */
  /* continuous programming / landscape perturbation */
  int perturbation;         /* 0 = gradient-only, 1 = schedule attached */
  double column_dwell;      /* s per column (80 MHz -> 12.5 ns) */
  double gate_period;       /* s between DAC gating cycles */
  double gate_off_fraction; /* trailing fraction of each period with DACs off */
  double quiet_tail;        /* s before the end with gating suppressed */
  double leak_tau;          /* leakage time constant, s; INFINITY = none */
  /* experiment */
  int runs;
  uint64_t run_seed;
  double power;   /* W, for energy-to-solution */
  int trace_runs; /* capture per-step traces for the first k runs */
} imsim_solve_params;

IMSIM_API void imsim_solve_params_default(imsim_solve_params* out);

/* Runs `runs` anneals of p, one LFSR shift per run, judged against the given
 * oracle. */
IMSIM_API int imsim_solve(const imsim_problem* p, const imsim_solve_params* params,
                          const imsim_oracle* oracle, imsim_batch** out);
IMSIM_API void imsim_batch_free(imsim_batch* b);

IMSIM_API long long imsim_batch_runs(const imsim_batch* b);
IMSIM_API long long imsim_batch_successes(const imsim_batch* b);
IMSIM_API double imsim_batch_success_rate(const imsim_batch* b);
IMSIM_API int64_t imsim_batch_best_energy(const imsim_batch* b);
IMSIM_API double imsim_batch_tts(const imsim_batch* b);
IMSIM_API double imsim_batch_ets(const imsim_batch* b);

/* One summary row per batch; CSV columns: instance_id,n,density,instance_seed,
 * mode,runs,successes,p_suc,best_H_found,oracle_H,oracle_method,tts_seconds,
 * ets_joules,lfsr_seed,config_hash. */
IMSIM_API int imsim_batch_summary_csv(const imsim_batch* b, int with_header, char** out);
IMSIM_API int imsim_batch_per_run_csv(const imsim_batch* b, int with_header, char** out);
IMSIM_API int imsim_batch_trace_csv(const imsim_batch* b, int run_index, char** out);
/* {"rows":[...]} for any number of batches, matching the CSV fields. */
IMSIM_API int imsim_batches_json(const imsim_batch* const* batches, size_t count,
                                 int include_per_run, char** out);

/* --- metrics ---------------------------------------------------------------- */

IMSIM_API int imsim_is_success(int64_t h, int64_t h_best);
IMSIM_API int imsim_tts(double tau, double p_suc, double* out);
IMSIM_API int imsim_ets(double power, double tts_value, double* out);
IMSIM_API int imsim_normalized_ets(double ets_value, int levels, int n_spins,
                                   int interactions, double* out);
IMSIM_API int imsim_normalized_spin_area(double core_area, int n_spins, int levels,
                                         int directionality, int interactions,
                                         double* out);

/* --- benchmark grids --------------------------------------------------------- */

typedef struct imsim_bench_params {
  const int* sizes;
  size_t n_sizes;
  const double* densities;
  size_t n_densities;
  int instances_per_cell;
  int coeff_max;
  uint64_t base_seed;
  imsim_solve_params solve; /* perturbation field is ignored; see modes below */
  int run_gradient;
  int run_perturb;
  int oracle_method; /* imsim_oracle_method */
  const imsim_tabu_params* tabu; /* NULL = derived defaults */
  int workers;                   /* 0 = hardware concurrency */
  unsigned long long max_node_steps;
  int force;
} imsim_bench_params;

IMSIM_API void imsim_bench_params_default(imsim_bench_params* out);
IMSIM_API int imsim_bench_run(const imsim_bench_params* params, imsim_bench** out);
IMSIM_API void imsim_bench_free(imsim_bench* b);

IMSIM_API int imsim_bench_rows_csv(const imsim_bench* b, char** out);
IMSIM_API int imsim_bench_sr_grid_csv(const imsim_bench* b, char** out);
IMSIM_API int imsim_bench_tts_csv(const imsim_bench* b, char** out);
IMSIM_API int imsim_bench_tts_summary_csv(const imsim_bench* b, char** out);
IMSIM_API int imsim_bench_json(const imsim_bench* b, char** out);

#ifdef __cplusplus
}
#endif

#endif /* IMSIM_H */
