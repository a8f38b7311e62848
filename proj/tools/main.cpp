#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "sldiam/experiment.hpp"

namespace {

constexpr const char* kFooter = R"(CSV columns
  construct    trial,cost,budget,steps,success,verified[,elapsed_us]
  bruhat       trial,b1_lower,w_monomial,b2_lower,roundtrip
  swap-bench   t,n,cost,length,exact_block_swap
  lower-bound  words,d0,binom_t_2,descent_violations,literal_reading_violations
  bfs          depth,reached,frontier
  density      t,exponent,exponent_decimal,c_eps
JSON reports carry "schema": 1. Relative --output paths resolve against
$SLDIAM_OUT_DIR when it is set.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word synthesis and covering-number experiments in SL_n(F_p)"};
  app.footer(kFooter);
  app.require_subcommand(1);
  sldiam::ExperimentConfig cfg;
  std::size_t t_value = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "matrix size")->check(CLI::PositiveNumber);
    sub->add_option("--p", cfg.p, "prime modulus");
    sub->add_option("--t", t_value, "block size (default ceil(n/3))");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--trials", cfg.trials, "number of trials or random words");
    sub->add_option("--output,-o", cfg.output, "report path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--groumvirate-cost", cfg.groumvirate_cost, "steps charged per block element");
    sub->add_option("--generators", cfg.generators, "generator-set file (\"p n t count\" format)");
    sub->add_option("--cap", cfg.cap, "largest group order BFS will enumerate");
    sub->add_option("--max-depth", cfg.max_depth, "BFS depth limit");
    sub->add_option("--budget-constant", cfg.budget_constant, "budget = constant * n^2");
    sub->add_option("--t-max", cfg.t_max, "largest t in swap-bench");
    sub->add_option("--d", cfg.d, "density parameter, integer or a/b");
    sub->add_flag("--timing", cfg.timing, "include wall-clock columns (breaks byte determinism)");
  };
  const std::pair<const char*, const char*> subcommands[] = {
      {"construct", "synthesize words for random SL_n targets and verify them"},
      {"bruhat", "check lower-monomial-lower decompositions of random matrices"},
      {"swap-bench", "cost of the block-swap word for t = 1..t-max"},
      {"lower-bound", "potential descent over random words, plus a certificate"},
      {"bfs", "exact covering number of a small Cayley graph"},
      {"density", "density exponent and threshold constant"},
  };
  for (const auto& [name, description] : subcommands) {
    auto* sub = app.add_subcommand(name, description);
    common(sub);
    sub->callback([&cfg, sub, name, &t_value] {
      cfg.subcommand = name;
      if (sub->count("--t") > 0) cfg.t = t_value;
    });
  }
  CLI11_PARSE(app, argc, argv);

  if (cfg.output.empty()) return sldiam::run_experiment(cfg, std::cout, std::cerr);
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("SLDIAM_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "sldiam: cannot write '" << path.string() << "'\n";
    return 2;
  }
  return sldiam::run_experiment(cfg, out, std::cerr);
}
