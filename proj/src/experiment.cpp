#include "sldiam/experiment.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sldiam/bruhat.hpp"
#include "sldiam/density.hpp"
#include "sldiam/lower_bound.hpp"
#include "sldiam/word_builder.hpp"

namespace sldiam {

using nlohmann::ordered_json;

CayleySetup default_generating_set(std::size_t n, std::size_t t, FieldModulus mod, std::uint32_t groumvirate_cost) {
  if (t < 1 || t >= n) throw ParameterError("default_generating_set: need 1 <= t < n");
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < t; ++i) {
    auto s = signed_swap(mod, n, i);
    auto s_inv = mat_inv(s);
    const auto label = "s" + std::to_string(i + 1);
    const bool involution = s_inv == s;
    gens.push_back({label, std::move(s), 1});
    if (!involution) gens.push_back({label + "inv", std::move(s_inv), 1});
  }
  return {GeneratorSet(n, mod, std::move(gens), true), Groumvirate(n, t, mod, groumvirate_cost)};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("loglog_slope: x values are all equal");
  return (k * sxy - sx * sy) / den;
}

SwapBench swap_bench(std::uint32_t p, std::size_t t_max, std::uint64_t seed, std::uint32_t groumvirate_cost) {
  const FieldModulus mod(p);
  SwapBench bench;
  std::vector<double> ts;
  std::vector<double> costs;
  for (std::size_t t = 1; t <= t_max; ++t) {
    const auto n = 3 * t;
    WordBuilder builder(default_generating_set(n, t, mod, groumvirate_cost), BuilderConfig{.seed = seed});
    const auto& w = builder.swap_word();
    SwapBenchRow row{t, n, w.cost(), w.length(), builder.evaluate(w) == block_swap(mod, n, t)};
    bench.constant = std::max(bench.constant, static_cast<double>(row.cost) / static_cast<double>(t * t));
    ts.push_back(static_cast<double>(t));
    costs.push_back(static_cast<double>(std::max<std::uint64_t>(row.cost, 1)));
    bench.rows.push_back(row);
  }
  if (ts.size() >= 2) bench.slope = loglog_slope(ts, costs);
  return bench;
}

namespace {

ordered_json matrix_json(const GFMatrix& m) {
  auto rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string word_text(const Word& w) {
  std::ostringstream os;
  write_word(os, w);
  return os.str();
}

ordered_json config_json(const ExperimentConfig& c, std::size_t t) {
  ordered_json j;
  j["n"] = c.n;
  j["p"] = c.p;
  j["t"] = t;
  j["seed"] = c.seed;
  j["budget_constant"] = c.budget_constant;
  j["trials"] = c.trials;
  j["groumvirate_cost"] = c.groumvirate_cost;
  return j;
}

ordered_json envelope(const ExperimentConfig& c, std::size_t t) {
  ordered_json j;
  j["schema"] = 1;
  j["subcommand"] = c.subcommand;
  j["config"] = config_json(c, t);
  return j;
}

bool csv(const ExperimentConfig& c) { return c.format == "csv"; }

CayleySetup load_setup(const ExperimentConfig& c, std::size_t t, FieldModulus mod) {
  if (c.generators.empty()) return default_generating_set(c.n, t, mod, c.groumvirate_cost);
  std::ifstream in(c.generators);
  if (!in) throw std::runtime_error("cannot open generator file '" + c.generators + "'");
  auto setup = read_generator_set(in, true, c.groumvirate_cost);
  if (setup.generators.n() != c.n || !(setup.generators.modulus() == mod) || setup.groumvirate.t() != t)
    throw ParameterError("generator file disagrees with --n/--p/--t");
  return setup;
}

int run_construct(const ExperimentConfig& c, std::ostream& out) {
  const FieldModulus mod(c.p);
  const auto t = c.t.value_or(lb_block_size(c.n));
  if (3 * t > c.n) throw ParameterError("construct: need 3t <= n");
  auto setup = load_setup(c, t, mod);
  WordBuilder builder(setup, BuilderConfig{.seed = c.seed, .budget_constant = c.budget_constant});
  std::mt19937_64 rng(c.seed);

  auto j = envelope(c, t);
  j["trials"] = ordered_json::array();
  if (csv(c)) out << "trial,cost,budget,steps,success,verified" << (c.timing ? ",elapsed_us" : "") << '\n';
  std::size_t successes = 0;
  std::uint64_t worst = 0;
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    const auto target = evaluate_word(random_word(setup, 4 * c.n, rng), setup.generators, setup.groumvirate);
    const auto rep = builder.construct_word(target);
    std::istringstream back(word_text(rep.word));
    const bool verified = evaluate_word(read_word(back, setup.generators, setup.groumvirate), setup.generators, setup.groumvirate) == target;
    const bool ok = rep.success && verified;
    successes += ok ? 1 : 0;
    worst = std::max(worst, rep.cost);
    if (csv(c)) {
      out << trial << ',' << rep.cost << ',' << rep.budget << ',' << rep.steps << ',' << (rep.success ? 1 : 0) << ','
          << (verified ? 1 : 0);
      if (c.timing) out << ',' << rep.elapsed.count();
      out << '\n';
    } else {
      ordered_json r;
      r["trial"] = trial;
      r["cost"] = rep.cost;
      r["budget"] = rep.budget;
      r["steps"] = rep.steps;
      r["success"] = rep.success;
      r["verified"] = verified;
      if (!rep.failure.empty()) r["failure"] = rep.failure;
      if (c.timing) r["elapsed_us"] = rep.elapsed.count();
      r["target"] = matrix_json(target);
      r["word"] = word_text(rep.word);
      j["trials"].push_back(std::move(r));
    }
  }
  if (!csv(c)) {
    j["summary"] = {{"successes", successes}, {"worst_cost", worst}, {"budget", c.budget_constant * c.n * c.n}};
    out << j.dump(2) << '\n';
  }
  return (c.trials > 0 && successes == 0) ? 1 : 0;
}

int run_bruhat(const ExperimentConfig& c, std::ostream& out) {
  const FieldModulus mod(c.p);
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::uint32_t> residue(0, c.p - 1);
  auto j = envelope(c, c.t.value_or(lb_block_size(c.n)));
  j["trials"] = ordered_json::array();
  if (csv(c)) out << "trial,b1_lower,w_monomial,b2_lower,roundtrip\n";
  std::size_t failures = 0;
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    GFMatrix m(mod, c.n, c.n);
    do {
      for (std::size_t r = 0; r < c.n; ++r)
        for (std::size_t col = 0; col < c.n; ++col) m.set(r, col, residue(rng));
    } while (det(m).is_zero());
    const auto [b1, w, b2] = bruhat_decompose(m);
    const bool l1 = is_lower_triangular(b1), mono = is_monomial(w), l2 = is_lower_triangular(b2);
    const bool round = b1 * w * b2 == m;
    failures += (l1 && mono && l2 && round) ? 0 : 1;
    if (csv(c)) {
      out << trial << ',' << l1 << ',' << mono << ',' << l2 << ',' << round << '\n';
    } else {
      j["trials"].push_back({{"trial", trial}, {"matrix", matrix_json(m)}, {"b1", matrix_json(b1)}, {"w", matrix_json(w)},
                             {"b2", matrix_json(b2)}, {"roundtrip", round}});
    }
  }
  if (!csv(c)) {
    j["summary"] = {{"failures", failures}};
    out << j.dump(2) << '\n';
  }
  return failures == 0 ? 0 : 1;
}

int run_swap_bench(const ExperimentConfig& c, std::ostream& out) {
  const auto bench = swap_bench(c.p, c.t_max, c.seed, c.groumvirate_cost);
  if (csv(c)) {
    out << "t,n,cost,length,exact_block_swap\n";
    for (const auto& r : bench.rows) out << r.t << ',' << r.n << ',' << r.cost << ',' << r.length << ',' << r.exact_block_swap << '\n';
    return 0;
  }
  auto j = envelope(c, 0);
  j["rows"] = ordered_json::array();
  for (const auto& r : bench.rows)
    j["rows"].push_back({{"t", r.t}, {"n", r.n}, {"cost", r.cost}, {"length", r.length}, {"exact_block_swap", r.exact_block_swap}});
  j["summary"] = {{"constant", bench.constant}, {"loglog_slope", bench.slope}};
  out << j.dump(2) << '\n';
  return 0;
}

int run_lower_bound(const ExperimentConfig& c, std::ostream& out) {
  const FieldModulus mod(c.p);
  auto setup = lb_generating_set(c.n, mod);
  const auto t = setup.groumvirate.t();
  std::mt19937_64 rng(c.seed);
  std::size_t violations = 0;
  std::size_t literal_violations = 0;
  std::size_t monotone_failures = 0;
  std::optional<std::string> counterexample;
  for (std::size_t trial = 0; trial < c.trials; ++trial) {
    const auto w = random_word(setup, 4 * c.n, rng);
    const auto tr = potential_trace(w, setup, SignReading::insensitive);
    if (!verify_descent(tr)) {
      ++violations;
      if (!counterexample) counterexample = word_text(w);
    }
    if (!verify_frozen_monotone(tr)) ++monotone_failures;
    if (!verify_descent(potential_trace(w, setup, SignReading::literal))) ++literal_violations;
  }

  auto j = envelope(c, t);
  j["d0"] = potential_d0(t);
  j["binom_t_2"] = binomial_t2(t);
  j["words"] = c.trials;
  j["descent_violations"] = violations;
  j["literal_reading_violations"] = literal_violations;
  j["frozen_monotone_failures"] = monotone_failures;
  if (counterexample) j["counterexample"] = *counterexample;

  const auto order = sl_order(c.n, c.p);
  const bool swap_in_sl = det(block_swap(mod, c.n, t)).value() == 1;
  if (order && *order <= c.cap && swap_in_sl) {
    CayleyBfs bfs(setup, true, c.cap);
    const auto rep = bfs.run(c.max_depth);
    if (const auto w = bfs.shortest_word(block_swap(mod, c.n, t))) {
      j["bfs_swap_length"] = w->length();
      j["bfs_certificate_d0"] = lower_bound_certificate(*w, setup);
    }
  }
  if (csv(c)) {
    out << "words,d0,binom_t_2,descent_violations,literal_reading_violations\n"
        << c.trials << ',' << potential_d0(t) << ',' << binomial_t2(t) << ',' << violations << ',' << literal_violations << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  return (violations == 0 && monotone_failures == 0) ? 0 : 1;
}

int run_bfs(const ExperimentConfig& c, std::ostream& out) {
  const FieldModulus mod(c.p);
  const bool from_file = !c.generators.empty();
  auto setup = from_file ? load_setup(c, c.t.value_or(lb_block_size(c.n)), mod) : lb_generating_set(c.n, mod);
  CayleyBfs bfs(setup, !from_file, c.cap);
  const auto rep = bfs.run(c.max_depth);
  if (csv(c)) {
    out << "depth,reached,frontier\n";
    for (std::size_t d = 0; d < rep.reached.size(); ++d) out << d << ',' << rep.reached[d] << ',' << rep.frontier[d] << '\n';
    return rep.generating ? 0 : 1;
  }
  auto j = envelope(c, setup.groumvirate.t());
  j["group_order"] = rep.group_order;
  j["steps"] = bfs.step_count();
  j["covering_number"] = rep.covering_number ? ordered_json(*rep.covering_number) : ordered_json(nullptr);
  j["generating"] = rep.generating;
  j["exhausted"] = rep.exhausted;
  j["reached"] = rep.reached.back();
  auto profile = ordered_json::array();
  for (std::size_t d = 0; d < rep.reached.size(); ++d)
    profile.push_back({{"depth", d}, {"reached", rep.reached[d]}, {"frontier", rep.frontier[d]}});
  j["profile"] = std::move(profile);
  out << j.dump(2) << '\n';
  return rep.generating ? 0 : 1;
}

int run_density(const ExperimentConfig& c, std::ostream& out) {
  const auto d = parse_rational(c.d);
  std::vector<std::size_t> ts;
  if (c.t) {
    ts.push_back(*c.t);
  } else {
    for (std::size_t t = 0; t <= c.n; ++t) ts.push_back(t);
  }
  auto j = envelope(c, c.t.value_or(0));
  j["d"] = to_string(d);
  j["rows"] = ordered_json::array();
  if (csv(c)) out << "t,exponent,exponent_decimal,c_eps\n";
  for (const auto t : ts) {
    const auto th = density_threshold(static_cast<std::int64_t>(c.n), static_cast<std::int64_t>(t), d);
    const double dec = boost::rational_cast<double>(th.exponent);
    if (csv(c)) {
      out << t << ',' << to_string(th.exponent) << ',' << dec << ',' << to_string(th.c_eps) << '\n';
    } else {
      j["rows"].push_back({{"t", t}, {"exponent", to_string(th.exponent)}, {"exponent_decimal", dec}, {"c_eps", to_string(th.c_eps)}});
    }
  }
  if (!csv(c)) out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_experiment(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.format != "csv" && c.format != "json") throw ParameterError("format must be csv or json");
    if (c.n < 2) throw ParameterError("need n >= 2");
    if (c.subcommand == "construct") return run_construct(c, out);
    if (c.subcommand == "bruhat") return run_bruhat(c, out);
    if (c.subcommand == "swap-bench") return run_swap_bench(c, out);
    if (c.subcommand == "lower-bound") return run_lower_bound(c, out);
    if (c.subcommand == "bfs") return run_bfs(c, out);
    if (c.subcommand == "density") return run_density(c, out);
    throw ParameterError("unknown subcommand '" + c.subcommand + "'");
  } catch (const std::exception& e) {
    err << "sldiam " << c.subcommand << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sldiam
