#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "sldiam/group_model.hpp"

namespace sldiam {

/// t = ceil(n / 3).
std::size_t lb_block_size(std::size_t n);

/// e_i -> -e_{i+1}, e_{i+1} -> e_i, all other basis vectors fixed (0-based i).
GFMatrix signed_swap(FieldModulus mod, std::size_t n, std::size_t i);

/// Signed swaps s_0..s_{t-1} plus their inverses when distinct, all cost 1,
/// with the embedded SL_{n-t} block as a cost-1 groumvirate. Requires n >= 3.
CayleySetup lb_generating_set(std::size_t n, FieldModulus mod);

/// (0 I_t 0; I_t 0 0; 0 0 I). Lies in SL_n only when (-1)^t = 1 in F_p.
GFMatrix block_swap(FieldModulus mod, std::size_t n, std::size_t t);

enum class SignReading {
  /// A_l e_i = ±e_j counts as landing on e_j.
  insensitive,
  /// Only A_l e_i = +e_j counts.
  literal,
};

/// d_l and F_l for l = 0..k, where A_l is the product of the last l steps
/// (the rightmost step acts first). Indices in F_l are 0-based.
struct PotentialTrace {
  std::size_t t = 0;
  SignReading reading = SignReading::insensitive;
  std::vector<std::uint64_t> d;
  std::vector<std::vector<std::size_t>> frozen;
};

/// sum_{i=1}^t (t+1-i) = t(t+1)/2.
std::uint64_t potential_d0(std::size_t t);
/// t(t-1)/2, reported alongside d_0.
std::uint64_t binomial_t2(std::size_t t);

PotentialTrace potential_trace(const Word& word, const CayleySetup& setup,
                               SignReading reading = SignReading::insensitive);

/// First l with d_{l+1} < d_l - 1, if any.
std::optional<std::size_t> first_descent_violation(const std::vector<std::uint64_t>& d);
bool verify_descent(const std::vector<std::uint64_t>& d);
bool verify_descent(const PotentialTrace& trace);
/// F_{l+1} ⊆ F_l for every l.
bool verify_frozen_monotone(const PotentialTrace& trace);

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requires evaluate(word) = block_swap. Replays the trace, checks d_k = 0,
/// descent and length >= d_0; returns d_0.
std::uint64_t lower_bound_certificate(const Word& word, const CayleySetup& setup);

/// |SL_n(F_p)| = p^{n(n-1)/2} · prod_{k=2}^n (p^k - 1); nullopt on 64-bit overflow.
std::optional<std::uint64_t> sl_order(std::size_t n, std::uint32_t p);

/// Every element of SL_m(F_p), by closure from elementary transvections.
/// Throws std::length_error when the order exceeds `cap`.
std::vector<GFMatrix> enumerate_sl(FieldModulus mod, std::size_t m, std::uint64_t cap = 10'000'000);

struct BfsReport {
  std::uint64_t group_order = 0;
  /// |A^0|, |A^1|, ... (cumulative ball sizes).
  std::vector<std::uint64_t> reached;
  /// Elements first reached at each depth.
  std::vector<std::uint64_t> frontier;
  std::optional<std::size_t> covering_number;
  /// False when the closure stabilised below the group order.
  bool generating = true;
  /// The search stopped at max_depth with the ball still growing.
  bool exhausted = false;
};

/// Exact breadth-first ball growth from the identity in Cay(SL_n(F_p), A).
/// The step list is the symmetric closure of the generators plus, when
/// requested, every non-identity groumvirate element.
class CayleyBfs {
 public:
  CayleyBfs(const CayleySetup& setup, bool include_groumvirate, std::uint64_t cap = 10'000'000);

  BfsReport run(std::size_t max_depth);
  /// A shortest word for an element reached by run(), or nullopt.
  [[nodiscard]] std::optional<Word> shortest_word(const GFMatrix& target) const;
  [[nodiscard]] std::size_t step_count() const noexcept { return steps_.size(); }

 private:
  struct Parent {
    std::uint32_t step;
    const GFMatrix* from;
    std::uint32_t depth;
  };
  struct Step {
    WordStep word_step;
    GFMatrix matrix;
  };

  const CayleySetup& setup_;
  std::uint64_t cap_;
  std::vector<Step> steps_;
  std::unordered_map<GFMatrix, Parent, GFMatrixHash> visited_;
};

}  // namespace sldiam
