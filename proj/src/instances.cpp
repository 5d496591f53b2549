// Copyright (c) 2026 the imsim developers.
// SPDX-License-Identifier: Apache-2.0

#include "imsim/instances.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "imsim/seeds.hpp"

namespace imsim {

void validate_ensemble(const EnsembleSpec& spec) {
  if (spec.sizes.empty()) throw std::invalid_argument("ensemble needs at least one size");
  for (int n : spec.sizes)
    if (n < 2 || n > kMaxSpins)
      throw std::invalid_argument("ensemble sizes must lie in [2, 64]");
  if (spec.densities.empty())
    throw std::invalid_argument("ensemble needs at least one density");
  for (double d : spec.densities)
    if (!(d > 0.0 && d <= 1.0))
      throw std::invalid_argument("densities must lie in (0, 1]");
  if (spec.instances_per_cell < 1)
    throw std::invalid_argument("need at least one instance per cell");
  if (spec.coeff_max < 1 || spec.coeff_max > kMaxCoeff)
    throw std::invalid_argument("coefficient bound must lie in [1, 15]");
}

ProblemInstance generate_random_qubo(int n, double density, int coeff_max,
                                     std::uint64_t seed) {
  if (n < 2 || n > kMaxSpins) throw std::invalid_argument("size must lie in [2, 64]");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("density must lie in (0, 1]");
  if (coeff_max < 1 || coeff_max > kMaxCoeff)
    throw std::invalid_argument("coefficient bound must lie in [1, 15]");

  SplitMix64 rng(seed);
  ProblemInstance inst(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.next_unit() >= density) continue;
      // k in [1, 2*coeff_max] maps to {1..coeff_max, -1..-coeff_max}; an
      // included pair is never zero.
      const int k = static_cast<int>(rng.next_below(2ULL * coeff_max)) + 1;
      inst.set_coupling(a, b, k <= coeff_max ? k : coeff_max - k);
    }
  }
  inst.density = inst.realized_density();
  inst.seed = seed;
  char label[64];
  std::snprintf(label, sizeof label, "q%d_d%g_s%llu", n, density,
                static_cast<unsigned long long>(seed));
  inst.label = label;
  return inst;
}

std::uint64_t instance_sub_seed(std::uint64_t base_seed, int n, double density,
                                int instance_index) {
  std::uint64_t h = fnv1a64_u64(base_seed, 0xcbf29ce484222325ULL);
  h = fnv1a64_u64(static_cast<std::uint64_t>(n), h);
  h = fnv1a64_double(density, h);
  h = fnv1a64_u64(static_cast<std::uint64_t>(instance_index), h);
  return mix64(h);
}

std::string write_instance(const ProblemInstance& inst) {
  validate_instance(inst);
  std::ostringstream out;
  if (inst.seed != 0) out << "# seed " << inst.seed << "\n";
  if (!inst.label.empty()) out << "# label " << inst.label << "\n";
  out << inst.n << " " << inst.edge_count() << "\n";
  for (int a = 0; a < inst.n; ++a)
    for (int b = a + 1; b < inst.n; ++b)
      if (inst.coupling(a, b) != 0)
        out << a << " " << b << " " << inst.coupling(a, b) << "\n";
  return out.str();
}

namespace {

bool parse_fields(const std::string& line, long long* fields, int want) {
  std::istringstream ss(line);
  for (int k = 0; k < want; ++k)
    if (!(ss >> fields[k])) return false;
  std::string extra;
  return !(ss >> extra);
}

}  // namespace

ProblemInstance read_instance(const std::string& text) {
  for (unsigned char c : text)
    if (c > 0x7f) throw std::invalid_argument("instance files are plain 7-bit text");

  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  long long n = 0, m = 0, edges_seen = 0;
  std::uint64_t seed = 0;
  std::string label;
  ProblemInstance inst;
  std::set<std::pair<int, int>> seen;

  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream cs(line.substr(first + 1));
      std::string key;
      if (cs >> key) {
        if (key == "seed") cs >> seed;
        else if (key == "label") cs >> label;
      }
      continue;
    }
    if (!have_header) {
      long long f[2];
      if (!parse_fields(line, f, 2))
        throw std::invalid_argument("malformed header: expected \"n m\"");
      n = f[0];
      m = f[1];
      if (n < 1 || n > kMaxSpins)
        throw std::invalid_argument("malformed header: spin count must lie in [1, 64]");
      if (m < 0 || m > n * (n - 1) / 2)
        throw std::invalid_argument("malformed header: impossible edge count");
      inst = ProblemInstance(static_cast<int>(n));
      have_header = true;
      continue;
    }
    if (edges_seen >= m) throw std::invalid_argument("trailing data after the declared edges");
    long long f[3];
    if (!parse_fields(line, f, 3))
      throw std::invalid_argument("malformed edge line: expected \"i j w\"");
    const long long i = f[0], jj = f[1], w = f[2];
    if (i == jj) throw std::invalid_argument("self-loop edge");
    if (i < 0 || jj < 0 || i >= n || jj >= n || i > jj)
      throw std::invalid_argument("edge index out of range (need 0 <= i < j < n)");
    if (w < -kMaxCoeff || w > kMaxCoeff || w == 0)
      throw std::invalid_argument("edge weight out of range (nonzero integer in [-15, 15])");
    if (!seen.insert({static_cast<int>(i), static_cast<int>(jj)}).second)
      throw std::invalid_argument("duplicate edge");
    inst.set_coupling(static_cast<int>(i), static_cast<int>(jj), static_cast<int>(w));
    ++edges_seen;
  }
  if (!have_header) throw std::invalid_argument("malformed header: empty instance text");
  if (edges_seen != m)
    throw std::invalid_argument("edge count does not match the header");
  inst.density = inst.realized_density();
  inst.seed = seed;
  inst.label = label;
  return inst;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ProblemInstance inst = read_instance(buf.str());
  if (inst.label.empty()) {
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    inst.label = stem;
  }
  return inst;
}

void save_instance_file(const ProblemInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << write_instance(inst);
  if (!out) throw std::runtime_error("failed writing instance file: " + path);
}

std::string instance_file_name(int n, double density, std::uint64_t seed) {
  char name[96];
  std::snprintf(name, sizeof name, "q%d_d%g_s%llu.txt", n, density,
                static_cast<unsigned long long>(seed));
  return name;
}

}  // namespace imsim
