#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "sldiam/matrix.hpp"

namespace sldiam {

/// One element of the generating set A. `cost` is how many A-steps it stands for.
struct Generator {
  std::string label;
  GFMatrix matrix;
  std::uint32_t cost = 1;
};

/// The generating set A ⊆ SL_n(F_p). When constructed as symmetric, closure
/// under inverses is checked eagerly.
class GeneratorSet {
 public:
  GeneratorSet(std::size_t n, FieldModulus mod, std::vector<Generator> generators, bool symmetric);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }
  [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }
  [[nodiscard]] std::size_t size() const noexcept { return generators_.size(); }
  [[nodiscard]] const Generator& operator[](std::size_t i) const { return generators_.at(i); }
  [[nodiscard]] const std::vector<Generator>& generators() const noexcept { return generators_; }
  /// Inverse matrices, cached at construction.
  [[nodiscard]] const GFMatrix& inverse_matrix(std::size_t i) const { return inverses_.at(i); }
  [[nodiscard]] std::uint32_t max_cost() const noexcept;

 private:
  std::size_t n_;
  FieldModulus mod_;
  std::vector<Generator> generators_;
  std::vector<GFMatrix> inverses_;
  bool symmetric_;
};

/// The block subgroup { diag(I_t, X) : X in SL_{n-t}(F_p) } in the standard
/// basis. Each element is charged `step_cost` steps (4 when it is only known
/// to lie in A^4; 1 when the elements are literally generators).
class Groumvirate {
 public:
  Groumvirate(std::size_t n, std::size_t t, FieldModulus mod, std::uint32_t step_cost = 4);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t t() const noexcept { return t_; }
  [[nodiscard]] std::size_t block_dim() const noexcept { return n_ - t_; }
  [[nodiscard]] std::uint32_t step_cost() const noexcept { return step_cost_; }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }

  [[nodiscard]] GFMatrix embed(const GFMatrix& payload) const;
  [[nodiscard]] bool contains(const GFMatrix& m) const;
  /// The lower-right block of an element; throws if m is not in the subgroup.
  [[nodiscard]] GFMatrix payload_of(const GFMatrix& m) const;
  void check_payload(const GFMatrix& payload) const;

 private:
  std::size_t n_;
  std::size_t t_;
  FieldModulus mod_;
  std::uint32_t step_cost_;
};

struct CayleySetup {
  GeneratorSet generators;
  Groumvirate groumvirate;
};

struct GeneratorStep {
  std::size_t index;
  bool inverse;
  std::uint32_t cost;
  friend bool operator==(const GeneratorStep&, const GeneratorStep&) = default;
};

struct GroumvirateStep {
  GFMatrix payload;
  std::uint32_t cost;
  friend bool operator==(const GroumvirateStep&, const GroumvirateStep&) = default;
};

using WordStep = std::variant<GeneratorStep, GroumvirateStep>;

/// A product of steps, evaluated left to right: the word [s1, s2, s3] is the
/// matrix s1·s2·s3, so s3 acts on a column vector first.
class Word {
 public:
  Word() = default;

  [[nodiscard]] const std::vector<WordStep>& steps() const noexcept { return steps_; }
  [[nodiscard]] std::size_t length() const noexcept { return steps_.size(); }
  [[nodiscard]] bool empty() const noexcept { return steps_.empty(); }
  [[nodiscard]] std::uint64_t cost() const noexcept;

  void push_generator(std::size_t index, bool inverse, std::uint32_t cost);
  void push_groumvirate(GFMatrix payload, std::uint32_t cost);
  Word& append(const Word& other);

  /// Reversed word of inverted steps.
  [[nodiscard]] Word inverse() const;
  /// Merges adjacent groumvirate steps, drops identity payloads and cancels
  /// adjacent g·g^{-1} pairs. Evaluates to the same matrix, never costs more.
  [[nodiscard]] Word simplified() const;

  friend Word operator+(Word a, const Word& b) { return a.append(b); }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<WordStep> steps_;
};

GFMatrix evaluate_word(const Word& w, const GeneratorSet& gs, const Groumvirate& gv);
GFMatrix step_matrix(const WordStep& step, const GeneratorSet& gs, const Groumvirate& gv);
std::uint64_t word_cost(const Word& w);

Word generator_word(const GeneratorSet& gs, std::size_t index, bool inverse = false);
/// Single step diag(I_t, x), charged gv.step_cost().
Word groumvirate_step(const GFMatrix& x, const Groumvirate& gv);
/// One groumvirate step M with pi_2(M v) = w and pi_1(M v) = pi_1(v).
Word pi2_retarget(const GFVector& v, const GFVector& w, const Groumvirate& gv);

/// Uniformly random element of SL_m(F_p): a random invertible matrix with its
/// first row rescaled by det^{-1}.
GFMatrix random_sl(FieldModulus mod, std::size_t m, std::mt19937_64& rng);
/// Random word of `length` steps; each step is a random generator (random
/// inverse flag) or, with probability 1/2, a random groumvirate element.
Word random_word(const CayleySetup& setup, std::size_t length, std::mt19937_64& rng);

/// "G <index> <inv>" or "V" plus an (n-t)x(n-t) residue block, one step per line.
void write_word(std::ostream& os, const Word& w);
Word read_word(std::istream& is, const GeneratorSet& gs, const Groumvirate& gv);

/// Header "p n t count", then per generator "label cost" and an n x n block.
void write_generator_set(std::ostream& os, const CayleySetup& setup);
CayleySetup read_generator_set(std::istream& is, bool symmetric, std::uint32_t groumvirate_cost = 4);

}  // namespace sldiam
