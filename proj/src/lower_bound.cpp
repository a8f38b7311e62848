#include "sldiam/lower_bound.hpp"

#include <algorithm>
#include <string>

namespace sldiam {

std::size_t lb_block_size(std::size_t n) { return (n + 2) / 3; }

GFMatrix signed_swap(FieldModulus mod, std::size_t n, std::size_t i) {
  if (i + 1 >= n) throw std::invalid_argument("signed_swap: need i + 1 < n");
  GFMatrix s = GFMatrix::identity(mod, n);
  s.set(i, i, 0);
  s.set(i + 1, i + 1, 0);
  s.set(i + 1, i, -1);
  s.set(i, i + 1, 1);
  return s;
}

CayleySetup lb_generating_set(std::size_t n, FieldModulus mod) {
  if (n < 3) throw std::invalid_argument("lb_generating_set: need n >= 3");
  const auto t = lb_block_size(n);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < t; ++i) {
    auto s = signed_swap(mod, n, i);
    auto s_inv = mat_inv(s);
    const auto label = "s" + std::to_string(i + 1);
    const bool involution = s_inv == s;
    gens.push_back({label, std::move(s), 1});
    if (!involution) gens.push_back({label + "inv", std::move(s_inv), 1});
  }
  return {GeneratorSet(n, mod, std::move(gens), true), Groumvirate(n, t, mod, 1)};
}

GFMatrix block_swap(FieldModulus mod, std::size_t n, std::size_t t) {
  if (t == 0 || 2 * t > n) throw std::invalid_argument("block_swap: need 1 <= t and 2t <= n");
  GFMatrix b = GFMatrix::identity(mod, n);
  for (std::size_t i = 0; i < t; ++i) {
    b.set(i, i, 0);
    b.set(t + i, t + i, 0);
    b.set(t + i, i, 1);
    b.set(i, t + i, 1);
  }
  return b;
}

std::uint64_t potential_d0(std::size_t t) { return static_cast<std::uint64_t>(t) * (t + 1) / 2; }
std::uint64_t binomial_t2(std::size_t t) { return t == 0 ? 0 : static_cast<std::uint64_t>(t) * (t - 1) / 2; }

namespace {

// 0-based j with v = ±e_j (or +e_j under the literal reading), else nullopt.
std::optional<std::size_t> basis_position(const GFVector& v, SignReading reading) {
  std::optional<std::size_t> pos;
  const auto minus_one = v.modulus().neg(1);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    if (pos) return std::nullopt;
    const bool unit = v[j] == 1 || (reading == SignReading::insensitive && v[j] == minus_one);
    if (!unit) return std::nullopt;
    pos = j;
  }
  return pos;
}

}  // namespace

PotentialTrace potential_trace(const Word& word, const CayleySetup& setup, SignReading reading) {
  const auto& gs = setup.generators;
  const auto& gv = setup.groumvirate;
  const auto n = gs.n();
  const auto t = gv.t();
  const auto mod = gs.modulus();

  PotentialTrace tr;
  tr.t = t;
  tr.reading = reading;
  std::vector<GFVector> images;
  std::vector<std::size_t> frozen;
  for (std::size_t i = 0; i < t; ++i) {
    images.push_back(GFVector::unit(mod, n, i));
    frozen.push_back(i);
  }
  const auto potential = [&]() {
    std::uint64_t d = 0;
    for (const auto i : frozen) d += t - *basis_position(images[i], reading);
    return d;
  };
  tr.d.push_back(potential());
  tr.frozen.push_back(frozen);

  const auto& steps = word.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto m = step_matrix(*it, gs, gv);
    for (auto& v : images) v = m.apply(v);
    std::vector<std::size_t> still;
    for (const auto i : frozen) {
      const auto pos = basis_position(images[i], reading);
      if (pos && *pos < t) still.push_back(i);
    }
    frozen = std::move(still);
    tr.d.push_back(potential());
    tr.frozen.push_back(frozen);
  }
  return tr;
}

std::optional<std::size_t> first_descent_violation(const std::vector<std::uint64_t>& d) {
  for (std::size_t l = 0; l + 1 < d.size(); ++l)
    if (d[l + 1] + 1 < d[l]) return l;
  return std::nullopt;
}

bool verify_descent(const std::vector<std::uint64_t>& d) { return !first_descent_violation(d); }
bool verify_descent(const PotentialTrace& trace) { return verify_descent(trace.d); }

bool verify_frozen_monotone(const PotentialTrace& trace) {
  for (std::size_t l = 0; l + 1 < trace.frozen.size(); ++l)
    if (!std::includes(trace.frozen[l].begin(), trace.frozen[l].end(), trace.frozen[l + 1].begin(), trace.frozen[l + 1].end()))
      return false;
  return true;
}

std::uint64_t lower_bound_certificate(const Word& word, const CayleySetup& setup) {
  const auto& gs = setup.generators;
  const auto t = setup.groumvirate.t();
  if (!(evaluate_word(word, gs, setup.groumvirate) == block_swap(gs.modulus(), gs.n(), t)))
    throw CertificateError("lower_bound_certificate: word does not evaluate to the block swap");
  const auto trace = potential_trace(word, setup, SignReading::insensitive);
  const auto d0 = trace.d.front();
  if (trace.d.back() != 0) throw std::logic_error("lower_bound_certificate: d_k != 0 for the block swap");
  if (!verify_descent(trace)) throw std::logic_error("lower_bound_certificate: descent inequality violated");
  if (word.length() < d0) throw std::logic_error("lower_bound_certificate: word shorter than d_0");
  return d0;
}

std::optional<std::uint64_t> sl_order(std::size_t n, std::uint32_t p) {
  if (n == 0) return std::nullopt;
  std::uint64_t order = 1;
  const auto times = [&](std::uint64_t& acc, std::uint64_t f) {
    if (f != 0 && acc > UINT64_MAX / f) return false;
    acc *= f;
    return true;
  };
  for (std::size_t e = 0; e < n * (n - 1) / 2; ++e)
    if (!times(order, p)) return std::nullopt;
  for (std::size_t k = 2; k <= n; ++k) {
    std::uint64_t pk = 1;
    for (std::size_t e = 0; e < k; ++e)
      if (!times(pk, p)) return std::nullopt;
    if (!times(order, pk - 1)) return std::nullopt;
  }
  return order;
}

std::vector<GFMatrix> enumerate_sl(FieldModulus mod, std::size_t m, std::uint64_t cap) {
  const auto order = sl_order(m, mod.value());
  if (!order || *order > cap)
    throw std::length_error("enumerate_sl: |SL_" + std::to_string(m) + "(F_" + std::to_string(mod.value()) + ")| exceeds the cap");
  std::vector<GFMatrix> gens;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) {
        auto e = GFMatrix::identity(mod, m);
        e.set(i, j, 1);
        gens.push_back(std::move(e));
      }
  std::vector<GFMatrix> all{GFMatrix::identity(mod, m)};
  std::unordered_map<GFMatrix, bool, GFMatrixHash> seen{{all.front(), true}};
  // Transvections have finite order, so right-multiplying closes to the group.
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const auto& g : gens) {
      auto x = all[k] * g;
      if (seen.emplace(x, true).second) all.push_back(std::move(x));
    }
  return all;
}

// ---------------------------------------------------------------- BFS

CayleyBfs::CayleyBfs(const CayleySetup& setup, bool include_groumvirate, std::uint64_t cap) : setup_(setup), cap_(cap) {
  const auto& gs = setup.generators;
  std::vector<GFMatrix> seen;
  const auto add = [&](WordStep step, GFMatrix m) {
    if (std::find(seen.begin(), seen.end(), m) != seen.end()) return;
    seen.push_back(m);
    steps_.push_back({std::move(step), std::move(m)});
  };
  for (std::size_t i = 0; i < gs.size(); ++i) {
    add(GeneratorStep{i, false, gs[i].cost}, gs[i].matrix);
    add(GeneratorStep{i, true, gs[i].cost}, gs.inverse_matrix(i));
  }
  if (include_groumvirate) {
    const auto& gv = setup.groumvirate;
    for (auto& x : enumerate_sl(gv.modulus(), gv.block_dim(), cap)) {
      if (x.is_identity()) continue;
      auto m = gv.embed(x);
      add(GroumvirateStep{std::move(x), gv.step_cost()}, std::move(m));
    }
  }
}

BfsReport CayleyBfs::run(std::size_t max_depth) {
  const auto& gs = setup_.generators;
  const auto order = sl_order(gs.n(), gs.modulus().value());
  if (!order || *order > cap_) throw std::length_error("CayleyBfs: group order exceeds the cap");

  BfsReport rep;
  rep.group_order = *order;
  visited_.clear();
  auto [root, inserted] = visited_.emplace(GFMatrix::identity(gs.modulus(), gs.n()), Parent{0, nullptr, 0});
  (void)inserted;
  std::vector<const GFMatrix*> level{&root->first};
  rep.reached.push_back(1);
  rep.frontier.push_back(1);
  if (*order == 1) rep.covering_number = 0;

  for (std::size_t depth = 1; depth <= max_depth && !rep.covering_number; ++depth) {
    std::vector<const GFMatrix*> next;
    for (const auto* x : level)
      for (std::uint32_t s = 0; s < steps_.size(); ++s) {
        auto y = steps_[s].matrix * *x;
        auto [it, fresh] = visited_.try_emplace(std::move(y), Parent{s, x, static_cast<std::uint32_t>(depth)});
        if (fresh) next.push_back(&it->first);
      }
    if (next.empty()) {
      rep.generating = false;
      break;
    }
    rep.frontier.push_back(next.size());
    rep.reached.push_back(visited_.size());
    if (visited_.size() == *order) rep.covering_number = depth;
    level = std::move(next);
  }
  rep.exhausted = !rep.covering_number && rep.generating;
  return rep;
}

std::optional<Word> CayleyBfs::shortest_word(const GFMatrix& target) const {
  auto it = visited_.find(target);
  if (it == visited_.end()) return std::nullopt;
  Word w;
  // Each element is steps_[step] · from, so the last step applied comes first.
  for (const auto* node = &*it; node->second.from != nullptr; node = &*visited_.find(*node->second.from)) {
    const auto& st = steps_[node->second.step].word_step;
    if (const auto* g = std::get_if<GeneratorStep>(&st)) {
      w.push_generator(g->index, g->inverse, g->cost);
    } else {
      const auto& v = std::get<GroumvirateStep>(st);
      w.push_groumvirate(v.payload, v.cost);
    }
  }
  return w;
}

}  // namespace sldiam
