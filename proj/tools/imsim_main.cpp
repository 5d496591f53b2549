// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the imsim shared library. Everything here goes
// through the C API in imsim.h; the heavy lifting (and all canonical output
// formatting) lives in the library so results are byte-reproducible no matter
// how they are driven.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imsim.h"

namespace {

int fail(int status) {
  std::fprintf(stderr, "error (%s): %s\n", imsim_status_name(status), imsim_last_error());
  return status;
}

int fail_io(const std::string& message) {
  std::fprintf(stderr, "error (%s): %s\n", imsim_status_name(IMSIM_ERR_IO), message.c_str());
  return IMSIM_ERR_IO;
}

struct StringGuard {
  char* text = nullptr;
  ~StringGuard() { imsim_string_free(text); }
};

int write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail_io("cannot open " + path + " for writing");
  out << text;
  if (!out) return fail_io("failed writing " + path);
  return IMSIM_OK;
}

int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return IMSIM_OK;
  }
  return write_file(path, text.c_str());
}

// Shared dynamics/schedule/run flags for solve and bench.
void add_solve_flags(CLI::App* cmd, imsim_solve_params* p) {
  cmd->add_option("--rho", p->rho, "Slew rate, V/s per coupling unit")->capture_default_str();
  cmd->add_option("--dt", p->dt, "Integration step, s")->capture_default_str();
  cmd->add_option("--anneal-time", p->anneal_time, "Per-run anneal time, s")
      ->capture_default_str();
  cmd->add_option("--dwell", p->column_dwell, "Column refresh dwell, s")
      ->capture_default_str();
  cmd->add_option("--gate-period", p->gate_period, "DAC gating period, s")
      ->capture_default_str();
  cmd->add_option("--gate-off-fraction", p->gate_off_fraction,
                  "Trailing fraction of each gate period with DACs off")
      ->capture_default_str();
  cmd->add_option("--quiet-tail", p->quiet_tail,
                  "Gating-free window before the end of the anneal, s")
      ->capture_default_str();
  cmd->add_option("--leak-tau", p->leak_tau,
                  "Coupling leakage time constant, s (inf disables leakage)")
      ->capture_default_str();
  cmd->add_option("--runs", p->runs, "Anneal runs per instance")->capture_default_str();
  cmd->add_option("--run-seed", p->run_seed, "Seed for the per-instance LFSR streams")
      ->capture_default_str();
  cmd->add_option("--power", p->power, "Power draw used for ETS, W")->capture_default_str();
}

struct OracleFlags {
  std::string method = "auto";
  imsim_tabu_params tabu{};
  bool tabu_given = false;
};

void add_oracle_flags(CLI::App* cmd, OracleFlags* o) {
  imsim_tabu_params_default(64, &o->tabu);
  cmd->add_option("--oracle", o->method, "Best-known-energy oracle: auto, brute, or tabu")
      ->check(CLI::IsMember({"auto", "brute", "tabu"}))
      ->capture_default_str();
  auto mark = [o](const std::string&) { o->tabu_given = true; };
  cmd->add_option("--tabu-tenure", o->tabu.tenure, "Tabu tenure (moves a spin stays tabu)")
      ->each(mark);
  cmd->add_option("--tabu-iterations", o->tabu.max_iterations,
                  "Tabu single-flip moves per restart")
      ->each(mark);
  cmd->add_option("--tabu-restarts", o->tabu.restarts, "Tabu independent restarts")->each(mark);
  cmd->add_option("--tabu-seed", o->tabu.seed, "Tabu restart seed")->each(mark);
}

int oracle_method_code(const std::string& name) {
  if (name == "brute") return IMSIM_ORACLE_BRUTE;
  if (name == "tabu") return IMSIM_ORACLE_TABU;
  return IMSIM_ORACLE_AUTO;
}

// --- generate ----------------------------------------------------------------

struct GenerateArgs {
  int size = 16;
  double density = 0.5;
  int coeff_max = 15;
  std::uint64_t seed = 1;
  int count = 1;
  std::string out_dir = ".";
};

int run_generate(const GenerateArgs& a) {
  for (int i = 0; i < a.count; ++i) {
    // A single instance uses the seed directly; ensembles derive per-instance
    // sub-seeds so growing a batch never changes existing files.
    const std::uint64_t seed =
        a.count == 1 ? a.seed : imsim_sub_seed(a.seed, a.size, a.density, i);
    imsim_problem* p = nullptr;
    int rc = imsim_problem_generate(a.size, a.density, a.coeff_max, seed, &p);
    if (rc != IMSIM_OK) return fail(rc);
    std::unique_ptr<imsim_problem, decltype(&imsim_problem_free)> guard(p, imsim_problem_free);
    const std::string path = a.out_dir + "/" + imsim_problem_label(p) + ".txt";
    rc = imsim_problem_save(p, path.c_str());
    if (rc != IMSIM_OK) return fail(rc);
    std::printf("%s\n", path.c_str());
  }
  return IMSIM_OK;
}

// --- oracle -------------------------------------------------------------------

struct OracleArgs {
  std::string file;
  OracleFlags oracle;
  std::string format = "csv";
  std::string out;
};

int run_oracle_cmd(const OracleArgs& a) {
  imsim_problem* p = nullptr;
  int rc = imsim_problem_load(a.file.c_str(), &p);
  if (rc != IMSIM_OK) return fail(rc);
  std::unique_ptr<imsim_problem, decltype(&imsim_problem_free)> pguard(p, imsim_problem_free);

  imsim_oracle* o = nullptr;
  rc = imsim_oracle_solve(p, oracle_method_code(a.oracle.method),
                          a.oracle.tabu_given ? &a.oracle.tabu : nullptr, &o);
  if (rc != IMSIM_OK) return fail(rc);
  std::unique_ptr<imsim_oracle, decltype(&imsim_oracle_free)> oguard(o, imsim_oracle_free);

  std::string text;
  if (a.format == "json") {
    text = std::string("{\"instance_id\":\"") + imsim_problem_label(p) +
           "\",\"n\":" + std::to_string(imsim_problem_size(p)) + ",\"method\":\"" +
           imsim_oracle_method_name(o) +
           "\",\"best_energy\":" + std::to_string(imsim_oracle_energy(o)) +
           ",\"config\":\"" + imsim_oracle_bitstring(o) +
           "\",\"iterations\":" + std::to_string(imsim_oracle_iterations(o)) + "}\n";
  } else {
    text = "instance_id,n,method,best_energy,config,iterations\n";
    text += std::string(imsim_problem_label(p)) + "," +
            std::to_string(imsim_problem_size(p)) + "," + imsim_oracle_method_name(o) + "," +
            std::to_string(imsim_oracle_energy(o)) + "," + imsim_oracle_bitstring(o) + "," +
            std::to_string(imsim_oracle_iterations(o)) + "\n";
  }
  return emit(a.out, text);
}

// --- solve ---------------------------------------------------------------------

struct SolveArgs {
  std::string file;
  imsim_solve_params params{};
  std::string perturbation = "on";
  OracleFlags oracle;
  std::string format = "csv";
  std::string out;
  std::string per_run_out;
  std::string trace_prefix = "trace_";
};

int run_solve(const SolveArgs& a) {
  imsim_problem* p = nullptr;
  int rc = imsim_problem_load(a.file.c_str(), &p);
  if (rc != IMSIM_OK) return fail(rc);
  std::unique_ptr<imsim_problem, decltype(&imsim_problem_free)> pguard(p, imsim_problem_free);

  imsim_oracle* o = nullptr;
  rc = imsim_oracle_solve(p, oracle_method_code(a.oracle.method),
                          a.oracle.tabu_given ? &a.oracle.tabu : nullptr, &o);
  if (rc != IMSIM_OK) return fail(rc);
  std::unique_ptr<imsim_oracle, decltype(&imsim_oracle_free)> oguard(o, imsim_oracle_free);

  std::vector<int> modes;  // perturbation flag values, gradient first
  if (a.perturbation == "off") modes = {0};
  else if (a.perturbation == "on") modes = {1};
  else modes = {0, 1};

  std::vector<imsim_batch*> batches;
  auto cleanup = [&batches]() {
    for (auto* b : batches) imsim_batch_free(b);
  };
  for (int mode : modes) {
    imsim_solve_params params = a.params;
    params.perturbation = mode;
    imsim_batch* b = nullptr;
    rc = imsim_solve(p, &params, o, &b);
    if (rc != IMSIM_OK) {
      cleanup();
      return fail(rc);
    }
    batches.push_back(b);
  }

  std::string text;
  if (a.format == "json") {
    StringGuard json;
    rc = imsim_batches_json(batches.data(), batches.size(), !a.per_run_out.empty(),
                            &json.text);
    if (rc != IMSIM_OK) {
      cleanup();
      return fail(rc);
    }
    text = json.text;
    text += '\n';
  } else {
    for (std::size_t i = 0; i < batches.size(); ++i) {
      StringGuard csv;
      rc = imsim_batch_summary_csv(batches[i], i == 0 ? 1 : 0, &csv.text);
      if (rc != IMSIM_OK) {
        cleanup();
        return fail(rc);
      }
      text += csv.text;
    }
  }
  rc = emit(a.out, text);
  if (rc != IMSIM_OK) {
    cleanup();
    return rc;
  }

  if (!a.per_run_out.empty() && a.format != "json") {
    std::string per_run;
    for (std::size_t i = 0; i < batches.size(); ++i) {
      StringGuard csv;
      rc = imsim_batch_per_run_csv(batches[i], i == 0 ? 1 : 0, &csv.text);
      if (rc != IMSIM_OK) {
        cleanup();
        return fail(rc);
      }
      per_run += csv.text;
    }
    rc = emit(a.per_run_out, per_run);
    if (rc != IMSIM_OK) {
      cleanup();
      return rc;
    }
  }

  for (std::size_t i = 0; i < batches.size(); ++i) {
    for (int r = 0; r < a.params.trace_runs; ++r) {
      StringGuard csv;
      rc = imsim_batch_trace_csv(batches[i], r, &csv.text);
      if (rc != IMSIM_OK) {
        cleanup();
        return fail(rc);
      }
      const std::string path = a.trace_prefix + (modes[i] ? "perturb" : "gradient") +
                               "_run" + std::to_string(r) + ".csv";
      rc = write_file(path, csv.text);
      if (rc != IMSIM_OK) {
        cleanup();
        return rc;
      }
    }
  }
  cleanup();
  return IMSIM_OK;
}

// --- bench ------------------------------------------------------------------------

struct BenchArgs {
  std::vector<int> sizes;
  std::vector<double> densities;
  int instances = 20;
  int coeff_max = 15;
  std::uint64_t base_seed = 1;
  imsim_solve_params params{};
  std::string modes = "both";
  OracleFlags oracle;
  int workers = 0;
  unsigned long long max_node_steps = 0;
  bool force = false;
  std::string out_dir = ".";
  std::string format = "csv";
};

int run_bench_cmd(const BenchArgs& a) {
  imsim_bench_params bp;
  imsim_bench_params_default(&bp);
  bp.sizes = a.sizes.data();
  bp.n_sizes = a.sizes.size();
  bp.densities = a.densities.data();
  bp.n_densities = a.densities.size();
  bp.instances_per_cell = a.instances;
  bp.coeff_max = a.coeff_max;
  bp.base_seed = a.base_seed;
  bp.solve = a.params;
  bp.run_gradient = a.modes != "perturb";
  bp.run_perturb = a.modes != "gradient";
  bp.oracle_method = oracle_method_code(a.oracle.method);
  bp.tabu = a.oracle.tabu_given ? &a.oracle.tabu : nullptr;
  bp.workers = a.workers;
  if (a.max_node_steps > 0) bp.max_node_steps = a.max_node_steps;
  bp.force = a.force ? 1 : 0;

  imsim_bench* b = nullptr;
  int rc = imsim_bench_run(&bp, &b);
  if (rc != IMSIM_OK) return fail(rc);
  std::unique_ptr<imsim_bench, decltype(&imsim_bench_free)> guard(b, imsim_bench_free);

  if (a.format == "json") {
    StringGuard json;
    rc = imsim_bench_json(b, &json.text);
    if (rc != IMSIM_OK) return fail(rc);
    const std::string path = a.out_dir + "/bench.json";
    rc = write_file(path, json.text);
    if (rc != IMSIM_OK) return rc;
    std::printf("%s\n", path.c_str());
    return IMSIM_OK;
  }

  struct Table {
    const char* name;
    int (*get)(const imsim_bench*, char**);
  };
  const Table tables[] = {
      {"rows.csv", imsim_bench_rows_csv},
      {"sr_grid.csv", imsim_bench_sr_grid_csv},
      {"tts_distribution.csv", imsim_bench_tts_csv},
      {"tts_summary.csv", imsim_bench_tts_summary_csv},
  };
  for (const Table& t : tables) {
    StringGuard csv;
    rc = t.get(b, &csv.text);
    if (rc != IMSIM_OK) return fail(rc);
    const std::string path = a.out_dir + "/" + t.name;
    rc = write_file(path, csv.text);
    if (rc != IMSIM_OK) return rc;
    std::printf("%s\n", path.c_str());
  }
  return IMSIM_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imsim: behavioral simulator and benchmark harness for a 64-spin "
               "all-to-all current-mode Ising machine with landscape perturbation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file (key=value; [subcommand] sections)");
  app.set_version_flag("--version", []() { return std::string(imsim_version()); });

  GenerateArgs gen;
  auto* cmd_generate = app.add_subcommand("generate", "Generate random QUBO instance files");
  cmd_generate->add_option("--size", gen.size, "Spin count (2-64)")
      ->required()
      ->check(CLI::Range(2, 64));
  cmd_generate->add_option("--density", gen.density, "Pair inclusion probability (0,1]")
      ->required();
  cmd_generate->add_option("--coeff-max", gen.coeff_max, "Coupling magnitude bound (1-15)")
      ->capture_default_str();
  cmd_generate->add_option("--seed", gen.seed, "Generator seed (base seed with --count > 1)")
      ->capture_default_str();
  cmd_generate->add_option("--count", gen.count, "Number of instances")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_generate->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();

  SolveArgs solve;
  imsim_solve_params_default(&solve.params);
  solve.params.trace_runs = 0;
  auto* cmd_solve = app.add_subcommand("solve", "Anneal an instance file and report metrics");
  cmd_solve->add_option("instance", solve.file, "Instance file")->required();
  cmd_solve->add_option("--perturbation", solve.perturbation,
                        "Landscape perturbation: on, off, or both")
      ->check(CLI::IsMember({"on", "off", "both"}))
      ->capture_default_str();
  add_solve_flags(cmd_solve, &solve.params);
  add_oracle_flags(cmd_solve, &solve.oracle);
  cmd_solve->add_option("--format", solve.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd_solve->add_option("--out", solve.out, "Summary output file (default stdout)");
  cmd_solve->add_option("--per-run", solve.per_run_out, "Per-run rows output file");
  cmd_solve->add_option("--trace", solve.params.trace_runs,
                        "Write (t, H, flips) traces for the first k runs")
      ->capture_default_str();
  cmd_solve->add_option("--trace-prefix", solve.trace_prefix, "Trace file prefix")
      ->capture_default_str();

  OracleArgs oracle;
  auto* cmd_oracle = app.add_subcommand("oracle", "Compute the best-known energy of an instance");
  cmd_oracle->add_option("instance", oracle.file, "Instance file")->required();
  add_oracle_flags(cmd_oracle, &oracle.oracle);
  cmd_oracle->add_option("--format", oracle.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd_oracle->add_option("--out", oracle.out, "Output file (default stdout)");

  BenchArgs bench;
  imsim_solve_params_default(&bench.params);
  auto* cmd_bench =
      app.add_subcommand("bench", "Run a (sizes x densities x instances) benchmark grid");
  cmd_bench->add_option("--sizes", bench.sizes, "Spin counts")->required()->delimiter(',');
  cmd_bench->add_option("--densities", bench.densities, "Densities")->required()->delimiter(',');
  cmd_bench->add_option("--instances", bench.instances, "Instances per (size, density) cell")
      ->capture_default_str();
  cmd_bench->add_option("--coeff-max", bench.coeff_max, "Coupling magnitude bound")
      ->capture_default_str();
  cmd_bench->add_option("--base-seed", bench.base_seed, "Ensemble base seed")
      ->capture_default_str();
  cmd_bench->add_option("--modes", bench.modes, "gradient, perturb, or both")
      ->check(CLI::IsMember({"gradient", "perturb", "both"}))
      ->capture_default_str();
  add_solve_flags(cmd_bench, &bench.params);
  add_oracle_flags(cmd_bench, &bench.oracle);
  cmd_bench->add_option("--workers", bench.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();
  cmd_bench->add_option("--max-node-steps", bench.max_node_steps,
                        "Workload guard (estimated node updates)");
  cmd_bench->add_flag("--force", bench.force, "Override the workload guard");
  cmd_bench->add_option("--out-dir", bench.out_dir, "Output directory")->capture_default_str();
  cmd_bench->add_option("--format", bench.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (cmd_generate->parsed()) return run_generate(gen);
  if (cmd_solve->parsed()) return run_solve(solve);
  if (cmd_oracle->parsed()) return run_oracle_cmd(oracle);
  if (cmd_bench->parsed()) return run_bench_cmd(bench);
  return 0;
}
