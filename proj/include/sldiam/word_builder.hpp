#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sldiam/group_model.hpp"

namespace sldiam {

/// Parameters outside the regime the construction covers (3t > n, t = 0, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An existential step found no witness within its search limits. Either A
/// does not generate SL_n(F_p) or the limits are too tight.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuilderConfig {
  std::uint64_t seed = 0x5eedULL;
  /// Random groumvirate payloads tried per existential step before giving up.
  std::size_t random_attempts = 256;
  /// Generator-word depth for orbit searches; 0 means n.
  std::size_t search_depth = 0;
  /// budget = budget_constant · n^2.
  std::uint64_t budget_constant = 64;
  /// Return a single generator or groumvirate step when one already does the job.
  bool allow_shortcuts = true;
};

/// A vector v with a word a such that a v leaves the current span.
struct FramePair {
  GFVector v;
  Word a;
};

struct BuildReport {
  GFMatrix target;
  Word word;
  std::uint64_t cost = 0;
  std::uint64_t budget = 0;
  std::size_t steps = 0;
  std::chrono::microseconds elapsed{0};
  bool success = false;
  std::string failure;
};

/// Builds short words over A ∪ V for a fixed Cayley setup. Every returned word
/// has been evaluated and checked against its defining property. Randomised
/// searches draw from one seeded engine, so a fixed call sequence is
/// reproducible.
class WordBuilder {
 public:
  explicit WordBuilder(CayleySetup setup, BuilderConfig config = {});

  [[nodiscard]] const CayleySetup& setup() const noexcept { return setup_; }
  [[nodiscard]] const BuilderConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::size_t n() const noexcept { return setup_.generators.n(); }
  [[nodiscard]] std::size_t t() const noexcept { return setup_.groumvirate.t(); }
  [[nodiscard]] FieldModulus modulus() const noexcept { return setup_.generators.modulus(); }

  [[nodiscard]] GFMatrix evaluate(const Word& w) const;

  /// Word a with {pi_2(a e_i) : i < t} linearly independent (hence all nonzero).
  Word tail_rank_word();
  /// t pairs (v_i, a_i) with v_i in E2, a_i v_i outside E2 + span{a_j v_j : j < i}.
  std::vector<FramePair> frame_pairs();
  /// Word b with b a_i v_i in E2 for every frame pair.
  Word frame_return_word(std::span<const FramePair> frames);
  /// Word m with m e_i in E2 for every i < t.
  Word move_word();

  /// Block swap exchanging e_i and e_{t+i} for i < t; when det = (-1)^t is not
  /// 1 in F_p, e_{n-1} is also negated.
  [[nodiscard]] GFMatrix swap_target() const;
  /// Word for swap_target(); built once and cached.
  const Word& swap_word();

  /// Word for T' = A' T A'^{-1}, where A' = P·swap and P is the signed
  /// permutation of E2 taking e_{t+i} to e_{fixed[i]} and e_{2t+k} to
  /// e_{moved[k]}. `moved` lists n-2t distinct 0-based indices in [t, n).
  Word upgrade_word(const GFMatrix& t_elem, std::span<const std::size_t> moved);
  /// Word for U in SL_n(F_p) that preserves span{e_k : k in K} and fixes every
  /// other e_j, K = {0..t-1} ∪ moved.
  Word coordinate_block_word(const GFMatrix& u, std::span<const std::size_t> moved);

  Word lower_triangular_word(const GFMatrix& l);
  Word monomial_word(const GFMatrix& w);

  /// Bruhat decomposition, determinant rebalancing, then the three factor
  /// words. Throws for det != 1; a word over budget is a failed report.
  BuildReport construct_word(const GFMatrix& m);

 private:
  void require_regime(const char* where) const;
  [[nodiscard]] std::vector<std::pair<std::size_t, bool>> step_choices() const;
  [[nodiscard]] std::size_t search_depth() const noexcept;
  [[nodiscard]] Word step_word(std::size_t index, bool inverse) const;
  [[nodiscard]] Word payload_word(const GFMatrix& x) const;
  [[nodiscard]] GFMatrix payload_matrix(const GFMatrix& x) const;
  /// (P payload, A' = P·swap) for a moved set.
  std::pair<GFMatrix, GFMatrix> upgrade_conjugator(std::span<const std::size_t> moved);
  /// Generator word g with pi_2(g u) != 0, for u in E1.
  Word escape_word(const GFVector& u) const;

  CayleySetup setup_;
  BuilderConfig config_;
  std::mt19937_64 rng_;
  std::optional<Word> swap_;
  std::optional<Word> swap_inverse_;
  std::optional<GFMatrix> swap_matrix_;
};

}  // namespace sldiam
