#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sldiam/group_model.hpp"

namespace sldiam {

struct ExperimentConfig {
  std::string subcommand;
  std::size_t n = 3;
  std::uint32_t p = 5;
  /// Defaults to ceil(n / 3).
  std::optional<std::size_t> t;
  std::uint64_t seed = 1;
  std::uint64_t budget_constant = 64;
  std::size_t trials = 10;
  std::string output;
  std::string format = "json";
  std::string d = "10";
  std::size_t max_depth = 64;
  std::uint64_t cap = 10'000'000;
  std::uint32_t groumvirate_cost = 4;
  std::size_t t_max = 10;
  std::string generators;
  bool timing = false;
};

/// Signed swaps e_i <-> -e_{i+1} for i < t (with inverses) and the standard
/// groumvirate at the given step cost.
CayleySetup default_generating_set(std::size_t n, std::size_t t, FieldModulus mod, std::uint32_t groumvirate_cost = 4);

struct SwapBenchRow {
  std::size_t t = 0;
  std::size_t n = 0;
  std::uint64_t cost = 0;
  std::size_t length = 0;
  /// evaluate(word) == (0 I 0; I 0 0; 0 0 I) exactly.
  bool exact_block_swap = false;
};

struct SwapBench {
  std::vector<SwapBenchRow> rows;
  /// max_t cost(t) / t^2.
  double constant = 0;
  /// Least-squares slope of log cost against log t.
  double slope = 0;
};

SwapBench swap_bench(std::uint32_t p, std::size_t t_max, std::uint64_t seed, std::uint32_t groumvirate_cost = 4);

/// Least-squares slope of log y against log x; needs two distinct x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Runs one subcommand, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit status.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sldiam
