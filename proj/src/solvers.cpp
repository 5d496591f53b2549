// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/solvers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "imsim/seeds.hpp"

namespace imsim {

namespace {

constexpr int kBruteForceLimit = 24;
constexpr std::uint64_t kOracleSalt = 0x6f7261636c65ULL;  // "oracle"

// Lexicographic comparison of x-encoded configurations (bit i = 0 means spin
// +1 at node i), reading node 0 first.
bool lex_less(std::uint64_t a, std::uint64_t b, int n) {
  for (int i = 0; i < n; ++i) {
    const unsigned ai = (a >> i) & 1ULL, bi = (b >> i) & 1ULL;
    if (ai != bi) return ai < bi;
  }
  return false;
}

SpinVector decode_pattern(std::uint64_t x, int n) {
  SpinVector s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[i] = ((x >> i) & 1ULL) ? -1 : 1;
  return s;
}

void check_result(const ProblemInstance& inst, const OracleResult& result) {
  if (hamiltonian(inst, result.best_config) != result.best_energy)
    throw std::logic_error("oracle returned a configuration that does not reproduce its energy");
}

}  // namespace

const char* oracle_method_name(OracleMethod m) {
  return m == OracleMethod::brute ? "brute" : "tabu";
}

TabuParams default_tabu_budget(int n, std::uint64_t seed) {
  TabuParams p;
  p.tenure = std::max(1, n / 4);
  p.max_iterations = 100LL * std::max(1, n);
  p.restarts = 20;
  p.seed = seed;
  return p;
}

OracleResult brute_force(const ProblemInstance& inst) {
  validate_instance(inst);
  const int n = inst.n;
  if (n < 1) throw std::invalid_argument("exhaustive search needs at least one spin");
  if (n > kBruteForceLimit)
    throw std::invalid_argument("exhaustive search is guarded to 24 spins; use the tabu oracle");

  SpinVector s(static_cast<std::size_t>(n), 1);
  std::vector<Energy> field(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) field[i] = local_field(inst, s, i);
  Energy energy = detail::hamiltonian_unchecked(inst, s);

  Energy best = energy;
  std::uint64_t best_pattern = 0, pattern = 0;
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    const int k = __builtin_ctzll(g);  // Gray-code flip position
    energy += 2 * static_cast<Energy>(s[k]) * field[k];
    s[k] = -s[k];
    pattern ^= 1ULL << k;
    const int* col = inst.j.data() + static_cast<std::size_t>(k) * n;
    const Energy delta = 2 * static_cast<Energy>(s[k]);
    for (int i = 0; i < n; ++i)
      if (i != k) field[i] += delta * col[i];
    if (energy < best || (energy == best && lex_less(pattern, best_pattern, n))) {
      best = energy;
      best_pattern = pattern;
    }
  }

  OracleResult result;
  result.best_energy = best;
  result.best_config = decode_pattern(best_pattern, n);
  result.method = OracleMethod::brute;
  result.iterations_used = static_cast<long long>(total);
  check_result(inst, result);
  return result;
}

OracleResult tabu_search(const ProblemInstance& inst, const TabuParams& params) {
  validate_instance(inst);
  const int n = inst.n;
  if (n < 1) throw std::invalid_argument("tabu search needs at least one spin");
  if (params.tenure < 1) throw std::invalid_argument("tabu tenure must be at least 1");
  if (params.max_iterations < n)
    throw std::invalid_argument("tabu iteration budget must be at least the spin count");
  if (params.restarts < 1) throw std::invalid_argument("need at least one restart");

  OracleResult result;
  result.method = OracleMethod::tabu;
  Energy global_best = std::numeric_limits<Energy>::max();
  SpinVector global_config;

  for (int r = 0; r < params.restarts; ++r) {
    SplitMix64 rng(mix64(params.seed ^ mix64(static_cast<std::uint64_t>(r))));
    SpinVector s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s[i] = (rng.next() >> 63) ? 1 : -1;

    std::vector<Energy> field(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) field[i] = local_field(inst, s, i);
    Energy energy = detail::hamiltonian_unchecked(inst, s);

    Energy incumbent = energy;
    SpinVector incumbent_config = s;
    std::vector<long long> tabu_until(static_cast<std::size_t>(n), 0);

    for (long long iter = 1; iter <= params.max_iterations; ++iter) {
      int move = -1, fallback = -1;
      Energy move_delta = 0, fallback_delta = 0;
      for (int k = 0; k < n; ++k) {
        const Energy delta = 2 * static_cast<Energy>(s[k]) * field[k];
        if (fallback < 0 || delta < fallback_delta) {
          fallback = k;
          fallback_delta = delta;
        }
        const bool tabu = tabu_until[k] >= iter;
        const bool aspirates = energy + delta < incumbent;
        if (tabu && !aspirates) continue;
        if (move < 0 || delta < move_delta) {
          move = k;
          move_delta = delta;
        }
      }
      if (move < 0) {  // everything tabu and nothing aspirates
        move = fallback;
        move_delta = fallback_delta;
      }

      energy += move_delta;
      s[move] = -s[move];
      const int* col = inst.j.data() + static_cast<std::size_t>(move) * n;
      const Energy d2 = 2 * static_cast<Energy>(s[move]);
      for (int i = 0; i < n; ++i)
        if (i != move) field[i] += d2 * col[i];
      tabu_until[move] = iter + params.tenure;
      ++result.iterations_used;

      if (energy < incumbent) {
        incumbent = energy;
        incumbent_config = s;
      }
      if (params.record_incumbents) result.incumbent_history.push_back(incumbent);
    }

    if (incumbent < global_best) {  // ties keep the lowest restart index
      global_best = incumbent;
      global_config = incumbent_config;
    }
  }

  result.best_energy = global_best;
  result.best_config = global_config;
  check_result(inst, result);
  return result;
}

OracleResult best_known(const ProblemInstance& inst) {
  if (inst.n <= kBruteForceLimit) return brute_force(inst);
  return tabu_search(inst, default_tabu_budget(inst.n, mix64(inst.seed ^ kOracleSalt)));
}

std::string config_bitstring(const SpinVector& s) {
  std::string bits(s.size(), '0');
  for (std::size_t i = 0; i < s.size(); ++i) bits[i] = s[i] > 0 ? '0' : '1';
  return bits;
}

}  // namespace imsim
