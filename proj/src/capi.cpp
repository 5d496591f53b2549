// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "imsim/harness.hpp"

namespace {

thread_local std::string g_last_error;

int set_error(int status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

// Exceptions never cross the C boundary; they fold into status codes here.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(IMSIM_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(IMSIM_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

imsim::SolveParams to_solve_params(const imsim_solve_params& p) {
  imsim::SolveParams out;
  out.dyn.rho = p.rho;
  out.dyn.dt = p.dt;
  out.dyn.anneal_time = p.anneal_time;
  out.sched.column_dwell = p.column_dwell;
  out.sched.gate_period = p.gate_period;
  out.sched.gate_off_fraction = p.gate_off_fraction;
  out.sched.quiet_tail = p.quiet_tail;
  out.sched.leak_tau = p.leak_tau;
  out.sched.enabled = true;
  out.runs = p.runs;
  out.run_seed = p.run_seed;
  out.power = p.power;
  out.trace_runs = p.trace_runs;
  return out;
}

imsim::TabuParams to_tabu_params(const imsim_tabu_params& p) {
  imsim::TabuParams out;
  out.tenure = p.tenure;
  out.max_iterations = p.max_iterations;
  out.restarts = p.restarts;
  out.seed = p.seed;
  return out;
}

imsim::OracleChoice to_oracle_choice(int method) {
  switch (method) {
    case IMSIM_ORACLE_BRUTE: return imsim::OracleChoice::brute;
    case IMSIM_ORACLE_TABU: return imsim::OracleChoice::tabu;
    case IMSIM_ORACLE_AUTO: return imsim::OracleChoice::automatic;
    default: throw std::invalid_argument("unknown oracle method");
  }
}

}  // namespace

struct imsim_problem {
  imsim::ProblemInstance inst;
};

struct imsim_oracle {
  imsim::OracleResult result;
  std::string method;
  std::string bitstring;
  imsim::OracleChoice requested = imsim::OracleChoice::automatic;
  std::optional<imsim::TabuParams> user_tabu;
};

struct imsim_batch {
  imsim::InstanceSummary summary;
};

struct imsim_bench {
  imsim::BenchResult result;
};

extern "C" {

const char* imsim_version(void) { return "1.0.0"; }

const char* imsim_status_name(int status) {
  switch (status) {
    case IMSIM_OK: return "ok";
    case IMSIM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case IMSIM_ERR_PARSE: return "parse-error";
    case IMSIM_ERR_IO: return "io-error";
    case IMSIM_ERR_UNSUPPORTED: return "unsupported";
    case IMSIM_ERR_RESOURCE_LIMIT: return "resource-limit";
    case IMSIM_ERR_INTERNAL: return "internal-error";
    default: return "unknown-status";
  }
}

const char* imsim_last_error(void) { return g_last_error.c_str(); }

void imsim_string_free(char* text) { ::operator delete(text); }

/* --- problem instances --------------------------------------------------- */

int imsim_problem_generate(int n, double density, int coeff_max, uint64_t seed,
                           imsim_problem** out) {
  if (!out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    auto* p = new imsim_problem{imsim::generate_random_qubo(n, density, coeff_max, seed)};
    *out = p;
    return IMSIM_OK;
  });
}

int imsim_problem_from_text(const char* text, imsim_problem** out) {
  if (!out || !text) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto* p = new imsim_problem{imsim::read_instance(text)};
    *out = p;
    return IMSIM_OK;
  } catch (const std::bad_alloc&) {
    return set_error(IMSIM_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_PARSE, e.what());
  }
}

int imsim_problem_load(const char* path, imsim_problem** out) {
  if (!out || !path) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto* p = new imsim_problem{imsim::load_instance_file(path)};
    *out = p;
    return IMSIM_OK;
  } catch (const std::bad_alloc&) {
    return set_error(IMSIM_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::invalid_argument& e) {
    return set_error(IMSIM_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_IO, e.what());
  }
}

int imsim_problem_to_text(const imsim_problem* p, char** out) {
  if (!p || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::write_instance(p->inst));
    return IMSIM_OK;
  });
}

int imsim_problem_save(const imsim_problem* p, const char* path) {
  if (!p || !path) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  try {
    imsim::save_instance_file(p->inst, path);
    return IMSIM_OK;
  } catch (const std::invalid_argument& e) {
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_IO, e.what());
  }
}

void imsim_problem_free(imsim_problem* p) { delete p; }

int imsim_problem_size(const imsim_problem* p) { return p ? p->inst.n : 0; }

long long imsim_problem_edges(const imsim_problem* p) {
  return p ? p->inst.edge_count() : 0;
}

double imsim_problem_density(const imsim_problem* p) {
  return p ? p->inst.realized_density() : 0.0;
}

uint64_t imsim_problem_seed(const imsim_problem* p) { return p ? p->inst.seed : 0; }

const char* imsim_problem_label(const imsim_problem* p) {
  return p ? p->inst.label.c_str() : "";
}

int imsim_problem_coupling(const imsim_problem* p, int i, int j, int* out) {
  if (!p || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    if (i < 0 || i >= p->inst.n || j < 0 || j >= p->inst.n)
      throw std::invalid_argument("coupling index out of range");
    *out = p->inst.coupling(i, j);
    return IMSIM_OK;
  });
}

int imsim_problem_energy(const imsim_problem* p, const int* spins, int n, int64_t* out) {
  if (!p || !spins || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    imsim::SpinVector s(spins, spins + (n > 0 ? n : 0));
    *out = imsim::hamiltonian(p->inst, s);
    return IMSIM_OK;
  });
}

uint64_t imsim_sub_seed(uint64_t base_seed, int n, double density, int instance_index) {
  return imsim::instance_sub_seed(base_seed, n, density, instance_index);
}

/* --- oracles --------------------------------------------------------------- */

void imsim_tabu_params_default(int n, imsim_tabu_params* out) {
  if (!out) return;
  const imsim::TabuParams p = imsim::default_tabu_budget(n > 0 ? n : 1, 1);
  out->tenure = p.tenure;
  out->max_iterations = p.max_iterations;
  out->restarts = p.restarts;
  out->seed = p.seed;
}

int imsim_oracle_solve(const imsim_problem* p, int method, const imsim_tabu_params* tabu,
                       imsim_oracle** out) {
  if (!p || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    const imsim::OracleChoice choice = to_oracle_choice(method);
    std::optional<imsim::TabuParams> user;
    if (tabu) user = to_tabu_params(*tabu);
    auto* o = new imsim_oracle;
    o->requested = choice;
    o->user_tabu = user;
    o->result = imsim::run_oracle(p->inst, choice, user);
    o->method = imsim::oracle_method_name(o->result.method);
    o->bitstring = imsim::config_bitstring(o->result.best_config);
    *out = o;
    return IMSIM_OK;
  } catch (const std::bad_alloc&) {
    return set_error(IMSIM_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::invalid_argument& e) {
    // The n > 24 exhaustive-search guard lands here.
    if (std::string(e.what()).find("guarded") != std::string::npos)
      return set_error(IMSIM_ERR_UNSUPPORTED, e.what());
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_INTERNAL, e.what());
  }
}

void imsim_oracle_free(imsim_oracle* o) { delete o; }

int64_t imsim_oracle_energy(const imsim_oracle* o) {
  return o ? o->result.best_energy : 0;
}

const char* imsim_oracle_method_name(const imsim_oracle* o) {
  return o ? o->method.c_str() : "";
}

const char* imsim_oracle_bitstring(const imsim_oracle* o) {
  return o ? o->bitstring.c_str() : "";
}

long long imsim_oracle_iterations(const imsim_oracle* o) {
  return o ? o->result.iterations_used : 0;
}

/* --- annealing runs --------------------------------------------------------- */

void imsim_solve_params_default(imsim_solve_params* out) {
  if (!out) return;
  const imsim::SolveParams p;
  out->rho = p.dyn.rho;
  out->dt = p.dyn.dt;
  out->anneal_time = p.dyn.anneal_time;
  out->perturbation = 1;
  out->column_dwell = p.sched.column_dwell;
  out->gate_period = p.sched.gate_period;
  out->gate_off_fraction = p.sched.gate_off_fraction;
  out->quiet_tail = p.sched.quiet_tail;
  out->leak_tau = p.sched.leak_tau;
  out->runs = p.runs;
  out->run_seed = p.run_seed;
  out->power = p.power;
  out->trace_runs = p.trace_runs;
}

int imsim_solve(const imsim_problem* p, const imsim_solve_params* params,
                const imsim_oracle* oracle, imsim_batch** out) {
  if (!p || !params || !oracle || !out)
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const imsim::SolveParams sp = to_solve_params(*params);
    const imsim::RunMode mode =
        params->perturbation ? imsim::RunMode::perturb : imsim::RunMode::gradient;
    auto* b = new imsim_batch;
    b->summary = imsim::solve_instance(p->inst, sp, mode, oracle->result,
                                       oracle->requested, oracle->user_tabu, true);
    *out = b;
    return IMSIM_OK;
  });
}

void imsim_batch_free(imsim_batch* b) { delete b; }

long long imsim_batch_runs(const imsim_batch* b) { return b ? b->summary.runs : 0; }

long long imsim_batch_successes(const imsim_batch* b) {
  return b ? b->summary.successes : 0;
}

double imsim_batch_success_rate(const imsim_batch* b) {
  return b ? b->summary.p_suc : 0.0;
}

int64_t imsim_batch_best_energy(const imsim_batch* b) {
  return b ? b->summary.best_h : 0;
}

double imsim_batch_tts(const imsim_batch* b) { return b ? b->summary.tts_seconds : 0.0; }

double imsim_batch_ets(const imsim_batch* b) { return b ? b->summary.ets_joules : 0.0; }

int imsim_batch_summary_csv(const imsim_batch* b, int with_header, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string text;
    if (with_header) {
      text = imsim::summary_csv_header();
      text += '\n';
    }
    text += imsim::summary_csv_row(b->summary);
    text += '\n';
    *out = dup_string(text);
    return IMSIM_OK;
  });
}

int imsim_batch_per_run_csv(const imsim_batch* b, int with_header, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::string text;
    if (with_header) {
      text = imsim::per_run_csv_header();
      text += '\n';
    }
    text += imsim::per_run_csv_rows(b->summary);
    *out = dup_string(text);
    return IMSIM_OK;
  });
}

int imsim_batch_trace_csv(const imsim_batch* b, int run_index, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (run_index < 0 || run_index >= static_cast<int>(b->summary.traces.size()))
      throw std::invalid_argument("no trace captured for that run index");
    *out = dup_string(imsim::trace_csv(b->summary.traces[run_index]));
    return IMSIM_OK;
  });
}

int imsim_batches_json(const imsim_batch* const* batches, size_t count,
                       int include_per_run, char** out) {
  if (!out || (!batches && count > 0))
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<imsim::InstanceSummary> rows;
    rows.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!batches[i]) throw std::invalid_argument("null batch handle");
      rows.push_back(batches[i]->summary);
    }
    *out = dup_string(imsim::rows_json(rows, include_per_run != 0));
    return IMSIM_OK;
  });
}

/* --- metrics ------------------------------------------------------------------ */

int imsim_is_success(int64_t h, int64_t h_best) {
  return imsim::is_success(h, h_best) ? 1 : 0;
}

int imsim_tts(double tau, double p_suc, double* out) {
  if (!out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = imsim::tts(tau, p_suc);
    return IMSIM_OK;
  });
}

int imsim_ets(double power, double tts_value, double* out) {
  if (!out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = imsim::ets(power, tts_value);
    return IMSIM_OK;
  });
}

int imsim_normalized_ets(double ets_value, int levels, int n_spins, int interactions,
                         double* out) {
  if (!out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = imsim::normalized_ets(ets_value, levels, n_spins, interactions);
    return IMSIM_OK;
  });
}

int imsim_normalized_spin_area(double core_area, int n_spins, int levels,
                               int directionality, int interactions, double* out) {
  if (!out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = imsim::normalized_spin_area(core_area, n_spins, levels, directionality,
                                       interactions);
    return IMSIM_OK;
  });
}

/* --- benchmark grids ------------------------------------------------------------ */

void imsim_bench_params_default(imsim_bench_params* out) {
  if (!out) return;
  std::memset(out, 0, sizeof *out);
  imsim_solve_params_default(&out->solve);
  out->instances_per_cell = 20;
  out->coeff_max = 15;
  out->base_seed = 1;
  out->run_gradient = 1;
  out->run_perturb = 1;
  out->oracle_method = IMSIM_ORACLE_AUTO;
  const imsim::BenchConfig defaults;
  out->max_node_steps = defaults.max_node_steps;
}

int imsim_bench_run(const imsim_bench_params* params, imsim_bench** out) {
  if (!params || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    imsim::BenchConfig cfg;
    if (!params->sizes || params->n_sizes == 0)
      throw std::invalid_argument("benchmark needs at least one size");
    if (!params->densities || params->n_densities == 0)
      throw std::invalid_argument("benchmark needs at least one density");
    cfg.ensemble.sizes.assign(params->sizes, params->sizes + params->n_sizes);
    cfg.ensemble.densities.assign(params->densities,
                                  params->densities + params->n_densities);
    cfg.ensemble.instances_per_cell = params->instances_per_cell;
    cfg.ensemble.coeff_max = params->coeff_max;
    cfg.ensemble.base_seed = params->base_seed;
    cfg.solve = to_solve_params(params->solve);
    cfg.run_gradient = params->run_gradient != 0;
    cfg.run_perturb = params->run_perturb != 0;
    cfg.oracle = to_oracle_choice(params->oracle_method);
    if (params->tabu) cfg.tabu = to_tabu_params(*params->tabu);
    cfg.workers = params->workers;
    if (params->max_node_steps > 0) cfg.max_node_steps = params->max_node_steps;
    cfg.force = params->force != 0;
    auto* b = new imsim_bench{imsim::run_bench(cfg)};
    *out = b;
    return IMSIM_OK;
  } catch (const std::bad_alloc&) {
    return set_error(IMSIM_ERR_RESOURCE_LIMIT, "out of memory");
  } catch (const std::invalid_argument& e) {
    return set_error(IMSIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    if (std::string(e.what()).find("budget") != std::string::npos)
      return set_error(IMSIM_ERR_RESOURCE_LIMIT, e.what());
    return set_error(IMSIM_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return set_error(IMSIM_ERR_INTERNAL, e.what());
  }
}

void imsim_bench_free(imsim_bench* b) { delete b; }

int imsim_bench_rows_csv(const imsim_bench* b, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::rows_csv(b->result.rows));
    return IMSIM_OK;
  });
}

int imsim_bench_sr_grid_csv(const imsim_bench* b, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::sr_grid_csv(b->result));
    return IMSIM_OK;
  });
}

int imsim_bench_tts_csv(const imsim_bench* b, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::tts_distribution_csv(b->result));
    return IMSIM_OK;
  });
}

int imsim_bench_tts_summary_csv(const imsim_bench* b, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::tts_summary_csv(b->result));
    return IMSIM_OK;
  });
}

int imsim_bench_json(const imsim_bench* b, char** out) {
  if (!b || !out) return set_error(IMSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(imsim::bench_json(b->result));
    return IMSIM_OK;
  });
}

}  // extern "C"
