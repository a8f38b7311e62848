#include "sldiam/group_model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "sldiam/subspace.hpp"

namespace sldiam {

// ---------------------------------------------------------------- GeneratorSet

GeneratorSet::GeneratorSet(std::size_t n, FieldModulus mod, std::vector<Generator> generators, bool symmetric)
    : n_(n), mod_(mod), generators_(std::move(generators)), symmetric_(symmetric) {
  if (n == 0) throw std::invalid_argument("GeneratorSet: n must be positive");
  inverses_.reserve(generators_.size());
  for (const auto& g : generators_) {
    if (!(g.matrix.modulus() == mod)) throw std::invalid_argument("GeneratorSet: generator '" + g.label + "' has the wrong modulus");
    if (g.matrix.rows() != n || g.matrix.cols() != n)
      throw std::invalid_argument("GeneratorSet: generator '" + g.label + "' is not " + std::to_string(n) + "x" + std::to_string(n));
    if (det(g.matrix).value() != 1) throw std::invalid_argument("GeneratorSet: generator '" + g.label + "' does not have det 1");
    if (g.cost == 0) throw std::invalid_argument("GeneratorSet: generator '" + g.label + "' has zero cost");
    inverses_.push_back(mat_inv(g.matrix));
  }
  if (symmetric_) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const bool closed = std::any_of(generators_.begin(), generators_.end(),
                                      [&](const Generator& h) { return h.matrix == inverses_[i]; });
      if (!closed) throw std::invalid_argument("GeneratorSet: '" + generators_[i].label + "' has no inverse in a set declared symmetric");
    }
  }
}

std::uint32_t GeneratorSet::max_cost() const noexcept {
  std::uint32_t c = 0;
  for (const auto& g : generators_) c = std::max(c, g.cost);
  return c;
}

// ---------------------------------------------------------------- Groumvirate

Groumvirate::Groumvirate(std::size_t n, std::size_t t, FieldModulus mod, std::uint32_t step_cost)
    : n_(n), t_(t), mod_(mod), step_cost_(step_cost) {
  if (t < 1 || t >= n) throw std::invalid_argument("Groumvirate: need 1 <= t < n");
  if (step_cost == 0) throw std::invalid_argument("Groumvirate: step cost must be positive");
}

void Groumvirate::check_payload(const GFMatrix& payload) const {
  if (!(payload.modulus() == mod_)) throw std::invalid_argument("Groumvirate: payload modulus mismatch");
  if (payload.rows() != block_dim() || payload.cols() != block_dim())
    throw std::invalid_argument("Groumvirate: payload must be " + std::to_string(block_dim()) + "x" + std::to_string(block_dim()));
  if (det(payload).value() != 1) throw std::invalid_argument("Groumvirate: payload does not have det 1");
}

GFMatrix Groumvirate::embed(const GFMatrix& payload) const {
  check_payload(payload);
  return embed_block(payload, t_);
}

bool Groumvirate::contains(const GFMatrix& m) const {
  if (!(m.modulus() == mod_) || m.rows() != n_ || m.cols() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (i >= t_ && j >= t_) continue;
      if (m(i, j) != (i == j ? 1u % mod_.value() : 0u)) return false;
    }
  return det(m).value() == 1;
}

GFMatrix Groumvirate::payload_of(const GFMatrix& m) const {
  if (!contains(m)) throw std::invalid_argument("Groumvirate: matrix is not a block element diag(I_t, X) with det X = 1");
  return m.block(t_, t_, block_dim(), block_dim());
}

// ---------------------------------------------------------------- Word

std::uint64_t Word::cost() const noexcept {
  std::uint64_t c = 0;
  for (const auto& s : steps_) c += std::visit([](const auto& x) -> std::uint64_t { return x.cost; }, s);
  return c;
}

void Word::push_generator(std::size_t index, bool inverse, std::uint32_t cost) {
  steps_.emplace_back(GeneratorStep{index, inverse, cost});
}

void Word::push_groumvirate(GFMatrix payload, std::uint32_t cost) {
  steps_.emplace_back(GroumvirateStep{std::move(payload), cost});
}

Word& Word::append(const Word& other) {
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
  return *this;
}

Word Word::inverse() const {
  Word r;
  r.steps_.reserve(steps_.size());
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    if (const auto* g = std::get_if<GeneratorStep>(&*it)) {
      r.steps_.emplace_back(GeneratorStep{g->index, !g->inverse, g->cost});
    } else {
      const auto& v = std::get<GroumvirateStep>(*it);
      r.steps_.emplace_back(GroumvirateStep{mat_inv(v.payload), v.cost});
    }
  }
  return r;
}

Word Word::simplified() const {
  Word r;
  for (const auto& s : steps_) {
    if (const auto* v = std::get_if<GroumvirateStep>(&s)) {
      if (!r.steps_.empty()) {
        if (auto* prev = std::get_if<GroumvirateStep>(&r.steps_.back())) {
          prev->payload = prev->payload * v->payload;
          prev->cost = std::max(prev->cost, v->cost);
          if (prev->payload.is_identity()) r.steps_.pop_back();
          continue;
        }
      }
      if (!v->payload.is_identity()) r.steps_.push_back(s);
      continue;
    }
    const auto& g = std::get<GeneratorStep>(s);
    if (!r.steps_.empty()) {
      if (const auto* prev = std::get_if<GeneratorStep>(&r.steps_.back());
          prev && prev->index == g.index && prev->inverse != g.inverse) {
        r.steps_.pop_back();
        continue;
      }
    }
    r.steps_.push_back(s);
  }
  return r;
}

GFMatrix step_matrix(const WordStep& step, const GeneratorSet& gs, const Groumvirate& gv) {
  if (const auto* g = std::get_if<GeneratorStep>(&step)) {
    if (g->index >= gs.size()) throw std::out_of_range("evaluate_word: generator index " + std::to_string(g->index) + " out of range");
    return g->inverse ? gs.inverse_matrix(g->index) : gs[g->index].matrix;
  }
  return gv.embed(std::get<GroumvirateStep>(step).payload);
}

GFMatrix evaluate_word(const Word& w, const GeneratorSet& gs, const Groumvirate& gv) {
  if (gs.n() != gv.n()) throw std::invalid_argument("evaluate_word: generator set and groumvirate disagree on n");
  GFMatrix acc = GFMatrix::identity(gs.modulus(), gs.n());
  for (const auto& s : w.steps()) acc = acc * step_matrix(s, gs, gv);
  return acc;
}

std::uint64_t word_cost(const Word& w) { return w.cost(); }

Word generator_word(const GeneratorSet& gs, std::size_t index, bool inverse) {
  if (index >= gs.size()) throw std::out_of_range("generator_word: index out of range");
  Word w;
  w.push_generator(index, inverse, gs[index].cost);
  return w;
}

Word groumvirate_step(const GFMatrix& x, const Groumvirate& gv) {
  gv.check_payload(x);
  Word w;
  w.push_groumvirate(x, gv.step_cost());
  return w;
}

Word pi2_retarget(const GFVector& v, const GFVector& w, const Groumvirate& gv) {
  const auto n = gv.n();
  const auto t = gv.t();
  if (v.size() != n || w.size() != n) throw std::invalid_argument("pi2_retarget: vectors must have length n");
  if (!project_pi1(w, t).is_zero()) throw std::invalid_argument("pi2_retarget: w must lie in <e_{t+1},...,e_n>");
  if (w.is_zero()) throw std::invalid_argument("pi2_retarget: w is zero");
  if (project_pi2(v, t).is_zero())
    throw std::invalid_argument("pi2_retarget: pi_2(v) = 0, the groumvirate cannot move v");
  return groumvirate_step(sl_map_vector(tail(v, t), tail(w, t), gv.block_dim()), gv);
}

GFMatrix random_sl(FieldModulus mod, std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> residue(0, mod.value() - 1);
  for (;;) {
    GFMatrix x(mod, m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) x.set(i, j, residue(rng));
    const auto d = det(x);
    if (d.is_zero()) continue;
    const auto scale = d.inverse().value();
    for (std::size_t j = 0; j < m; ++j) x.set(0, j, mod.mul(x(0, j), scale));
    return x;
  }
}

Word random_word(const CayleySetup& setup, std::size_t length, std::mt19937_64& rng) {
  const auto& gs = setup.generators;
  const auto& gv = setup.groumvirate;
  Word w;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t l = 0; l < length; ++l) {
    if (gs.size() == 0 || coin(rng)) {
      w.push_groumvirate(random_sl(gv.modulus(), gv.block_dim(), rng), gv.step_cost());
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, gs.size() - 1);
      const auto i = pick(rng);
      w.push_generator(i, coin(rng), gs[i].cost);
    }
  }
  return w;
}

// ---------------------------------------------------------------- serialization

void write_word(std::ostream& os, const Word& w) {
  for (const auto& s : w.steps()) {
    if (const auto* g = std::get_if<GeneratorStep>(&s)) {
      os << "G " << g->index << ' ' << (g->inverse ? 1 : 0) << '\n';
    } else {
      os << "V\n";
      write_matrix_body(os, std::get<GroumvirateStep>(s).payload);
    }
  }
}

Word read_word(std::istream& is, const GeneratorSet& gs, const Groumvirate& gv) {
  Word w;
  std::string tag;
  while (is >> tag) {
    if (tag == "G") {
      std::size_t index = 0;
      int inv = 0;
      if (!(is >> index >> inv) || (inv != 0 && inv != 1)) throw std::runtime_error("read_word: malformed generator step");
      if (index >= gs.size()) throw std::runtime_error("read_word: generator index out of range");
      w.push_generator(index, inv == 1, gs[index].cost);
    } else if (tag == "V") {
      auto x = read_matrix_body(is, gv.modulus(), gv.block_dim(), gv.block_dim());
      gv.check_payload(x);
      w.push_groumvirate(std::move(x), gv.step_cost());
    } else {
      throw std::runtime_error("read_word: unknown step tag '" + tag + "'");
    }
  }
  return w;
}

void write_generator_set(std::ostream& os, const CayleySetup& setup) {
  const auto& gs = setup.generators;
  os << gs.modulus().value() << ' ' << gs.n() << ' ' << setup.groumvirate.t() << ' ' << gs.size() << '\n';
  for (const auto& g : gs.generators()) {
    os << g.label << ' ' << g.cost << '\n';
    write_matrix_body(os, g.matrix);
  }
}

CayleySetup read_generator_set(std::istream& is, bool symmetric, std::uint32_t groumvirate_cost) {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t count = 0;
  if (!(is >> p >> n >> t >> count)) throw std::runtime_error("read_generator_set: missing \"p n t count\" header");
  if (p >= (1ULL << 31)) throw std::runtime_error("read_generator_set: modulus out of range");
  const FieldModulus mod(static_cast<std::uint32_t>(p));
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < count; ++i) {
    std::string label;
    std::uint32_t cost = 0;
    if (!(is >> label >> cost)) throw std::runtime_error("read_generator_set: missing \"label cost\" line");
    gens.push_back({label, read_matrix_body(is, mod, n, n), cost});
  }
  return {GeneratorSet(n, mod, std::move(gens), symmetric), Groumvirate(n, t, mod, groumvirate_cost)};
}

}  // namespace sldiam
