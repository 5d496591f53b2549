// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "imsim/seeds.hpp"

namespace imsim {

const char* run_mode_name(RunMode m) {
  return m == RunMode::gradient ? "gradient" : "perturb";
}

const char* oracle_choice_name(OracleChoice c) {
  switch (c) {
    case OracleChoice::automatic: return "auto";
    case OracleChoice::brute: return "brute";
    default: return "tabu";
  }
}

OracleResult run_oracle(const ProblemInstance& inst, OracleChoice choice,
                        const std::optional<TabuParams>& user_tabu) {
  switch (choice) {
    case OracleChoice::brute:
      return brute_force(inst);
    case OracleChoice::tabu:
      if (user_tabu) return tabu_search(inst, *user_tabu);
      return tabu_search(inst, default_tabu_budget(inst.n, mix64(inst.seed ^ 0x6f7261636c65ULL)));
    default:
      if (user_tabu && inst.n > 24) return tabu_search(inst, *user_tabu);
      return best_known(inst);
  }
}

void validate_solve_params(const SolveParams& params) {
  validate_config(params.dyn);
  if (params.runs < 1) throw std::invalid_argument("need at least one run");
  if (!(params.power >= 0)) throw std::invalid_argument("power must be non-negative");
  if (params.trace_runs < 0) throw std::invalid_argument("trace run count must be non-negative");
}

std::uint64_t derive_lfsr_seed(std::uint64_t run_seed, std::uint64_t instance_seed) {
  std::uint64_t s = mix64(run_seed ^ mix64(instance_seed));
  while (s == 0) s = mix64(s + 0x9e3779b97f4a7c15ULL);
  return s;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_u64(std::uint64_t v) { return std::to_string(v); }

void append_config_line(std::string& out, const char* key, const std::string& value) {
  out += key;
  out += '=';
  out += value;
  out += '\n';
}

std::string canonical_config(const SolveParams& p, OracleChoice oracle,
                             const std::optional<TabuParams>& user_tabu) {
  std::string out;
  append_config_line(out, "anneal_time", format_double(p.dyn.anneal_time));
  append_config_line(out, "column_dwell", format_double(p.sched.column_dwell));
  append_config_line(out, "dt", format_double(p.dyn.dt));
  append_config_line(out, "gate_off_fraction", format_double(p.sched.gate_off_fraction));
  append_config_line(out, "gate_period", format_double(p.sched.gate_period));
  append_config_line(out, "leak_tau", format_double(p.sched.leak_tau));
  append_config_line(out, "oracle", oracle_choice_name(oracle));
  append_config_line(out, "power", format_double(p.power));
  append_config_line(out, "rho", format_double(p.dyn.rho));
  append_config_line(out, "run_seed", format_u64(p.run_seed));
  append_config_line(out, "runs", std::to_string(p.runs));
  if (user_tabu) {
    append_config_line(out, "tabu_max_iterations", std::to_string(user_tabu->max_iterations));
    append_config_line(out, "tabu_restarts", std::to_string(user_tabu->restarts));
    append_config_line(out, "tabu_seed", format_u64(user_tabu->seed));
    append_config_line(out, "tabu_tenure", std::to_string(user_tabu->tenure));
  }
  return out;
}

}  // namespace

std::string config_hash_hex(const SolveParams& params, OracleChoice oracle,
                            const std::optional<TabuParams>& user_tabu) {
  const std::string text = canonical_config(params, oracle, user_tabu);
  const std::uint64_t h = fnv1a64(text.data(), text.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InstanceSummary solve_instance(const ProblemInstance& inst, const SolveParams& params,
                               RunMode mode, const OracleResult& oracle,
                               OracleChoice oracle_choice,
                               const std::optional<TabuParams>& user_tabu,
                               bool keep_per_run) {
  validate_instance(inst);
  validate_solve_params(params);

  PerturbationSchedule sched = params.sched;
  sched.n_columns = inst.n;
  if (mode == RunMode::perturb) validate_schedule(sched, params.dyn.anneal_time, params.dyn.dt);

  InstanceSummary row;
  row.instance_id = inst.label.empty() ? ("n" + std::to_string(inst.n)) : inst.label;
  row.n = inst.n;
  row.density = inst.realized_density();
  row.instance_seed = inst.seed;
  row.mode = mode;
  row.oracle_h = oracle.best_energy;
  row.oracle_method = oracle_method_name(oracle.method);
  row.lfsr_seed = derive_lfsr_seed(params.run_seed, inst.seed);
  row.config_hash = config_hash_hex(params, oracle_choice, user_tabu);

  LfsrState state{row.lfsr_seed};
  std::vector<Energy> energies;
  energies.reserve(static_cast<std::size_t>(params.runs));
  for (int r = 0; r < params.runs; ++r) {
    state = lfsr_next(state);
    const std::vector<double> init = init_spins(state, inst.n);
    const bool want_trace = r < params.trace_runs;
    RunResult rr = run_anneal(inst, params.dyn,
                              mode == RunMode::perturb ? &sched : nullptr, init, want_trace);
    energies.push_back(rr.energy);
    if (keep_per_run)
      row.per_run.push_back(
          {state.reg, rr.energy, rr.flips, is_success(rr.energy, oracle.best_energy)});
    if (want_trace) row.traces.push_back(std::move(rr.trace));
  }

  const RunStats stats = summarize_runs(energies, oracle.best_energy);
  row.runs = stats.runs;
  row.successes = stats.successes;
  row.p_suc = stats.p_suc;
  row.best_h = stats.best_h_found;
  row.tts_seconds = tts(params.dyn.anneal_time, stats.p_suc);
  row.ets_joules = ets(params.power, row.tts_seconds);
  return row;
}

unsigned long long estimate_node_steps(const BenchConfig& cfg) {
  const double steps_per_run = std::round(cfg.solve.dyn.anneal_time / cfg.solve.dyn.dt);
  const int modes = (cfg.run_gradient ? 1 : 0) + (cfg.run_perturb ? 1 : 0);
  double total = 0.0;
  for (int n : cfg.ensemble.sizes)
    total += static_cast<double>(cfg.ensemble.densities.size()) *
             cfg.ensemble.instances_per_cell * modes * cfg.solve.runs * steps_per_run * n;
  if (total > 1e18) return ~0ULL;
  return static_cast<unsigned long long>(total);
}

BenchResult run_bench(const BenchConfig& cfg) {
  validate_ensemble(cfg.ensemble);
  validate_solve_params(cfg.solve);
  const int modes = (cfg.run_gradient ? 1 : 0) + (cfg.run_perturb ? 1 : 0);
  if (modes == 0) throw std::invalid_argument("benchmark needs at least one run mode");

  const unsigned long long estimate = estimate_node_steps(cfg);
  if (!cfg.force && estimate > cfg.max_node_steps)
    throw std::runtime_error(
        "estimated workload (" + std::to_string(estimate) +
        " node updates) exceeds the budget of " + std::to_string(cfg.max_node_steps) +
        "; shrink the grid or override with force");

  struct Cell {
    int n = 0;
    double density = 0.0;
    int index = 0;
  };
  std::vector<Cell> cells;
  for (int n : cfg.ensemble.sizes)
    for (double d : cfg.ensemble.densities)
      for (int i = 0; i < cfg.ensemble.instances_per_cell; ++i) cells.push_back({n, d, i});

  BenchResult result;
  result.rows.resize(cells.size() * static_cast<std::size_t>(modes));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= cells.size() || failed.load()) return;
      try {
        const Cell& cell = cells[task];
        const std::uint64_t sub_seed = instance_sub_seed(cfg.ensemble.base_seed, cell.n,
                                                         cell.density, cell.index);
        const ProblemInstance inst =
            generate_random_qubo(cell.n, cell.density, cfg.ensemble.coeff_max, sub_seed);
        const OracleResult oracle = run_oracle(inst, cfg.oracle, cfg.tabu);
        std::size_t slot = task * static_cast<std::size_t>(modes);
        if (cfg.run_gradient)
          result.rows[slot++] = solve_instance(inst, cfg.solve, RunMode::gradient, oracle,
                                               cfg.oracle, cfg.tabu, false);
        if (cfg.run_perturb)
          result.rows[slot] = solve_instance(inst, cfg.solve, RunMode::perturb, oracle,
                                             cfg.oracle, cfg.tabu, false);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  unsigned int want = cfg.workers > 0 ? static_cast<unsigned int>(cfg.workers)
                                      : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  want = std::min<unsigned int>(want, static_cast<unsigned int>(cells.size()));
  if (want <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(want);
    for (unsigned int k = 0; k < want; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // SR grid: mean success rate per (mode, size, requested density).
  std::vector<RunMode> mode_list;
  if (cfg.run_gradient) mode_list.push_back(RunMode::gradient);
  if (cfg.run_perturb) mode_list.push_back(RunMode::perturb);
  for (RunMode mode : mode_list) {
    for (std::size_t si = 0; si < cfg.ensemble.sizes.size(); ++si) {
      for (std::size_t di = 0; di < cfg.ensemble.densities.size(); ++di) {
        SrGridRow grid_row;
        grid_row.mode = mode;
        grid_row.n = cfg.ensemble.sizes[si];
        grid_row.density = cfg.ensemble.densities[di];
        grid_row.instances = cfg.ensemble.instances_per_cell;
        double acc = 0.0;
        const std::size_t cell_base =
            (si * cfg.ensemble.densities.size() + di) *
            static_cast<std::size_t>(cfg.ensemble.instances_per_cell);
        for (int i = 0; i < cfg.ensemble.instances_per_cell; ++i) {
          const std::size_t task = cell_base + static_cast<std::size_t>(i);
          std::size_t slot = task * static_cast<std::size_t>(modes);
          if (mode == RunMode::perturb && cfg.run_gradient) ++slot;
          acc += result.rows[slot].p_suc;
        }
        grid_row.mean_sr = acc / cfg.ensemble.instances_per_cell;
        result.sr_grid.push_back(grid_row);
      }
    }
  }

  // TTS cumulative distribution per mode over all instances in the grid.
  for (RunMode mode : mode_list) {
    std::vector<std::pair<double, std::size_t>> entries;  // (tts, row index)
    std::vector<double> values;
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
      if (result.rows[r].mode != mode) continue;
      values.push_back(result.rows[r].tts_seconds);
      if (std::isfinite(result.rows[r].tts_seconds))
        entries.push_back({result.rows[r].tts_seconds, r});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    const TtsSummary summary = summarize_tts(values);
    int rank = 0;
    for (const auto& [tts_value, row_index] : entries) {
      TtsDistRow dist_row;
      dist_row.mode = mode;
      dist_row.rank = ++rank;
      dist_row.instance_id = result.rows[row_index].instance_id;
      dist_row.tts_seconds = tts_value;
      dist_row.solved_fraction = static_cast<double>(rank) / static_cast<double>(summary.total);
      result.tts_distribution.push_back(dist_row);
    }
    result.tts_summary.push_back(
        {mode, summary.total, summary.solved, summary.mean, summary.median});
  }
  return result;
}

// --- canonical text output --------------------------------------------------

std::string summary_csv_header() {
  return "instance_id,n,density,instance_seed,mode,runs,successes,p_suc,best_H_found,"
         "oracle_H,oracle_method,tts_seconds,ets_joules,lfsr_seed,config_hash";
}

std::string summary_csv_row(const InstanceSummary& row) {
  std::string out;
  out += row.instance_id;
  out += ',';
  out += std::to_string(row.n);
  out += ',';
  out += format_double(row.density);
  out += ',';
  out += format_u64(row.instance_seed);
  out += ',';
  out += run_mode_name(row.mode);
  out += ',';
  out += std::to_string(row.runs);
  out += ',';
  out += std::to_string(row.successes);
  out += ',';
  out += format_double(row.p_suc);
  out += ',';
  out += std::to_string(row.best_h);
  out += ',';
  out += std::to_string(row.oracle_h);
  out += ',';
  out += row.oracle_method;
  out += ',';
  out += format_double(row.tts_seconds);
  out += ',';
  out += format_double(row.ets_joules);
  out += ',';
  out += format_u64(row.lfsr_seed);
  out += ',';
  out += row.config_hash;
  return out;
}

std::string rows_csv(const std::vector<InstanceSummary>& rows) {
  std::string out = summary_csv_header();
  out += '\n';
  for (const auto& row : rows) {
    out += summary_csv_row(row);
    out += '\n';
  }
  return out;
}

std::string per_run_csv_header() {
  return "instance_id,mode,run_index,lfsr_state,energy,flips,success";
}

std::string per_run_csv_rows(const InstanceSummary& row) {
  std::string out;
  for (std::size_t r = 0; r < row.per_run.size(); ++r) {
    const PerRunRow& pr = row.per_run[r];
    out += row.instance_id;
    out += ',';
    out += run_mode_name(row.mode);
    out += ',';
    out += std::to_string(r);
    out += ',';
    out += format_u64(pr.lfsr_state);
    out += ',';
    out += std::to_string(pr.energy);
    out += ',';
    out += std::to_string(pr.flips);
    out += ',';
    out += pr.success ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::string out = "t_seconds,energy,flips\n";
  for (const auto& point : trace) {
    out += format_double(point.t);
    out += ',';
    out += std::to_string(point.h);
    out += ',';
    out += std::to_string(point.flips);
    out += '\n';
  }
  return out;
}

std::string sr_grid_csv(const BenchResult& result) {
  std::string out = "mode,n,density,instances,mean_sr\n";
  for (const auto& row : result.sr_grid) {
    out += run_mode_name(row.mode);
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.density);
    out += ',';
    out += std::to_string(row.instances);
    out += ',';
    out += format_double(row.mean_sr);
    out += '\n';
  }
  return out;
}

std::string tts_distribution_csv(const BenchResult& result) {
  std::string out = "mode,rank,instance_id,tts_seconds,solved_fraction\n";
  for (const auto& row : result.tts_distribution) {
    out += run_mode_name(row.mode);
    out += ',';
    out += std::to_string(row.rank);
    out += ',';
    out += row.instance_id;
    out += ',';
    out += format_double(row.tts_seconds);
    out += ',';
    out += format_double(row.solved_fraction);
    out += '\n';
  }
  return out;
}

std::string tts_summary_csv(const BenchResult& result) {
  std::string out = "mode,instances,solved,mean_tts_seconds,median_tts_seconds\n";
  for (const auto& row : result.tts_summary) {
    out += run_mode_name(row.mode);
    out += ',';
    out += std::to_string(row.instances);
    out += ',';
    out += std::to_string(row.solved);
    out += ',';
    out += format_double(row.mean_tts_seconds);
    out += ',';
    out += format_double(row.median_tts_seconds);
    out += '\n';
  }
  return out;
}

namespace {

void json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

// Infinite values are not representable as JSON numbers; they render as the
// string "inf", matching the CSV token.
void json_number(std::string& out, double value) {
  if (std::isinf(value)) {
    json_string(out, value > 0 ? "inf" : "-inf");
    return;
  }
  out += format_double(value);
}

void json_row(std::string& out, const InstanceSummary& row) {
  out += "{\"instance_id\":";
  json_string(out, row.instance_id);
  out += ",\"n\":" + std::to_string(row.n);
  out += ",\"density\":";
  json_number(out, row.density);
  out += ",\"instance_seed\":" + format_u64(row.instance_seed);
  out += ",\"mode\":";
  json_string(out, run_mode_name(row.mode));
  out += ",\"runs\":" + std::to_string(row.runs);
  out += ",\"successes\":" + std::to_string(row.successes);
  out += ",\"p_suc\":";
  json_number(out, row.p_suc);
  out += ",\"best_H_found\":" + std::to_string(row.best_h);
  out += ",\"oracle_H\":" + std::to_string(row.oracle_h);
  out += ",\"oracle_method\":";
  json_string(out, row.oracle_method);
  out += ",\"tts_seconds\":";
  json_number(out, row.tts_seconds);
  out += ",\"ets_joules\":";
  json_number(out, row.ets_joules);
  out += ",\"lfsr_seed\":" + format_u64(row.lfsr_seed);
  out += ",\"config_hash\":";
  json_string(out, row.config_hash);
  out += '}';
}

void json_rows(std::string& out, const std::vector<InstanceSummary>& rows,
               bool include_per_run) {
  out += "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ',';
    if (!include_per_run) {
      json_row(out, rows[i]);
      continue;
    }
    std::string base;
    json_row(base, rows[i]);
    base.pop_back();  // reopen the object
    out += base;
    out += ",\"per_run\":[";
    for (std::size_t r = 0; r < rows[i].per_run.size(); ++r) {
      if (r) out += ',';
      const PerRunRow& pr = rows[i].per_run[r];
      out += "{\"run_index\":" + std::to_string(r);
      out += ",\"lfsr_state\":" + format_u64(pr.lfsr_state);
      out += ",\"energy\":" + std::to_string(pr.energy);
      out += ",\"flips\":" + std::to_string(pr.flips);
      out += ",\"success\":";
      out += pr.success ? "1" : "0";
      out += '}';
    }
    out += "]}";
  }
  out += "]";
}

}  // namespace

std::string rows_json(const std::vector<InstanceSummary>& rows, bool include_per_run) {
  std::string out = "{\"rows\":";
  json_rows(out, rows, include_per_run);
  out += "}";
  return out;
}

std::string bench_json(const BenchResult& result) {
  std::string out = "{\"rows\":";
  json_rows(out, result.rows, false);
  out += ",\"sr_grid\":[";
  for (std::size_t i = 0; i < result.sr_grid.size(); ++i) {
    if (i) out += ',';
    const SrGridRow& g = result.sr_grid[i];
    out += "{\"mode\":";
    json_string(out, run_mode_name(g.mode));
    out += ",\"n\":" + std::to_string(g.n);
    out += ",\"density\":";
    json_number(out, g.density);
    out += ",\"instances\":" + std::to_string(g.instances);
    out += ",\"mean_sr\":";
    json_number(out, g.mean_sr);
    out += '}';
  }
  out += "],\"tts_distribution\":[";
  for (std::size_t i = 0; i < result.tts_distribution.size(); ++i) {
    if (i) out += ',';
    const TtsDistRow& d = result.tts_distribution[i];
    out += "{\"mode\":";
    json_string(out, run_mode_name(d.mode));
    out += ",\"rank\":" + std::to_string(d.rank);
    out += ",\"instance_id\":";
    json_string(out, d.instance_id);
    out += ",\"tts_seconds\":";
    json_number(out, d.tts_seconds);
    out += ",\"solved_fraction\":";
    json_number(out, d.solved_fraction);
    out += '}';
  }
  out += "],\"tts_summary\":[";
  for (std::size_t i = 0; i < result.tts_summary.size(); ++i) {
    if (i) out += ',';
    const TtsSummaryRow& s = result.tts_summary[i];
    out += "{\"mode\":";
    json_string(out, run_mode_name(s.mode));
    out += ",\"instances\":" + std::to_string(s.instances);
    out += ",\"solved\":" + std::to_string(s.solved);
    out += ",\"mean_tts_seconds\":";
    json_number(out, s.mean_tts_seconds);
    out += ",\"median_tts_seconds\":";
    json_number(out, s.median_tts_seconds);
    out += '}';
  }
  out += "]}";
  return out;
}

}  // namespace imsim
