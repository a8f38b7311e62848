#include "sldiam/word_builder.hpp"

#include <algorithm>
#include <string>

#include "sldiam/bruhat.hpp"
#include "sldiam/subspace.hpp"

namespace sldiam {

namespace {

GFVector head(const GFVector& v, std::size_t t) {
  GFVector h(v.modulus(), t);
  for (std::size_t i = 0; i < t; ++i) h.set(i, v[i]);
  return h;
}

std::vector<GFVector> column_tails(const GFMatrix& a, std::size_t count, std::size_t t) {
  std::vector<GFVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(tail(a.column(i), t));
  return out;
}

Subspace span_of(FieldModulus mod, std::size_t n, const std::vector<GFVector>& vs) {
  return Subspace::span(mod, n, std::span<const GFVector>(vs));
}

Subspace span_of(const GFVector& v) { return Subspace::span(v.modulus(), v.size(), std::span<const GFVector>(&v, 1)); }

}  // namespace

WordBuilder::WordBuilder(CayleySetup setup, BuilderConfig config)
    : setup_(std::move(setup)), config_(config), rng_(config.seed) {
  if (setup_.generators.n() != setup_.groumvirate.n()) throw ParameterError("WordBuilder: generator set and groumvirate disagree on n");
  if (!(setup_.generators.modulus() == setup_.groumvirate.modulus())) throw ParameterError("WordBuilder: modulus mismatch");
}

GFMatrix WordBuilder::evaluate(const Word& w) const { return evaluate_word(w, setup_.generators, setup_.groumvirate); }

void WordBuilder::require_regime(const char* where) const {
  if (3 * t() > n())
    throw ParameterError(std::string(where) + ": need n - 2t >= t (n = " + std::to_string(n()) + ", t = " + std::to_string(t()) + ")");
}

std::vector<std::pair<std::size_t, bool>> WordBuilder::step_choices() const {
  std::vector<std::pair<std::size_t, bool>> out;
  for (std::size_t i = 0; i < setup_.generators.size(); ++i) {
    out.emplace_back(i, false);
    if (!setup_.generators.symmetric()) out.emplace_back(i, true);
  }
  return out;
}

std::size_t WordBuilder::search_depth() const noexcept { return config_.search_depth == 0 ? n() : config_.search_depth; }

Word WordBuilder::step_word(std::size_t index, bool inverse) const { return generator_word(setup_.generators, index, inverse); }

Word WordBuilder::payload_word(const GFMatrix& x) const {
  if (x.is_identity()) return {};
  return groumvirate_step(x, setup_.groumvirate);
}

GFMatrix WordBuilder::payload_matrix(const GFMatrix& x) const { return setup_.groumvirate.embed(x); }

Word WordBuilder::escape_word(const GFVector& u) const {
  // Breadth-first over span representatives: if g·x escapes E1 for x in the
  // span of visited vectors, then g escapes for one of the visited vectors.
  struct Node {
    GFVector vec;
    Word word;
  };
  const auto& gs = setup_.generators;
  std::vector<Node> level{{u, {}}};
  auto seen = span_of(u);
  for (std::size_t depth = 0; depth < search_depth() && !level.empty(); ++depth) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (const auto& [i, inv] : step_choices()) {
        const auto& g = inv ? gs.inverse_matrix(i) : gs[i].matrix;
        auto x = g.apply(node.vec);
        auto w = step_word(i, inv) + node.word;
        if (!project_pi2(x, t()).is_zero()) return w;
        if (!seen.contains(x)) {
          seen = subspace_sum(seen, span_of(x));
          next.push_back({std::move(x), std::move(w)});
        }
      }
    }
    level = std::move(next);
  }
  throw SearchExhausted("escape search: every generator word keeps the vector inside <e_1..e_t>");
}

// ---------------------------------------------------------------- moving E1 into E2

Word WordBuilder::tail_rank_word() {
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  Word a;
  GFMatrix am = GFMatrix::identity(mod, nn);
  for (;;) {
    const auto tails = column_tails(am, tt, tt);
    const auto r = rank_of(tails);
    if (r == tt) return a;

    const auto ker = kernel(GFMatrix::from_columns(tails));
    GFVector u(mod, nn);
    for (std::size_t i = 0; i < tt; ++i) u = u + am.column(i).scaled(ker.front()[i]);

    Word g;
    try {
      g = escape_word(u);
    } catch (const SearchExhausted&) {
      throw SearchExhausted("tail_rank_word: stuck at index " + std::to_string(r + 1) + "; the span of a e_1..a e_t meets <e_1..e_t> in a subspace no generator word moves");
    }
    const auto gm = evaluate(g);
    bool advanced = false;
    for (std::size_t attempt = 0; attempt <= config_.random_attempts && !advanced; ++attempt) {
      const auto x = attempt == 0 ? GFMatrix::identity(mod, nn - tt) : random_sl(mod, nn - tt, rng_);
      auto next = gm * payload_matrix(x) * am;
      if (rank_of(column_tails(next, tt, tt)) > r) {
        a = g + payload_word(x) + a;
        am = std::move(next);
        advanced = true;
      }
    }
    if (!advanced) throw SearchExhausted("tail_rank_word: no groumvirate payload raises the rank at index " + std::to_string(r + 1));
  }
}

std::vector<FramePair> WordBuilder::frame_pairs() {
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  const auto& gs = setup_.generators;

  // Spanning set of S = E2 + span{a_j v_j}; `frame` names the pair behind an image.
  struct Spanner {
    GFVector vec;
    std::optional<std::size_t> frame;
  };
  std::vector<Spanner> spanners;
  for (std::size_t k = tt; k < nn; ++k) spanners.push_back({GFVector::unit(mod, nn, k), std::nullopt});

  std::vector<FramePair> frames;
  for (std::size_t i = 0; i < tt; ++i) {
    std::vector<GFVector> vs;
    for (const auto& s : spanners) vs.push_back(s.vec);
    const auto big_s = span_of(mod, nn, vs);
    bool found = false;
    for (const auto& [gi, inv] : step_choices()) {
      const auto& g = inv ? gs.inverse_matrix(gi) : gs[gi].matrix;
      for (const auto& s : spanners) {
        auto x = g.apply(s.vec);
        if (big_s.contains(x)) continue;
        if (s.frame) {
          frames.push_back({frames[*s.frame].v, step_word(gi, inv) + frames[*s.frame].a});
        } else {
          frames.push_back({s.vec, step_word(gi, inv)});
        }
        spanners.push_back({std::move(x), frames.size() - 1});
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found)
      throw SearchExhausted("frame_pairs: <e_{t+1}..e_n> plus " + std::to_string(i) +
                            " frame images is invariant under every generator");
  }
  return frames;
}

Word WordBuilder::frame_return_word(std::span<const FramePair> frames) {
  require_regime("frame_return_word");
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  const auto m = nn - tt;
  if (frames.size() != tt) throw std::invalid_argument("frame_return_word: expected t frame pairs");
  const auto e2 = Subspace::coordinate(mod, nn, tt, nn);

  std::vector<GFVector> images;
  for (const auto& f : frames) {
    if (!e2.contains(f.v)) throw std::invalid_argument("frame_return_word: frame vector outside <e_{t+1}..e_n>");
    images.push_back(evaluate(f.a).apply(f.v));
  }

  Word b = frames[0].a.inverse();
  GFMatrix bm = evaluate(b);
  for (std::size_t i = 1; i < tt; ++i) {
    const auto an = evaluate(frames[i].a);
    const auto ani = mat_inv(an);
    const auto h = bm * an;
    const auto admissible = [&](const GFMatrix& x) {
      const auto next = h * payload_matrix(x) * ani;
      for (std::size_t j = 0; j <= i; ++j)
        if (!e2.contains(next.apply(images[j]))) return false;
      return true;
    };

    // Fix pi_2 of the earlier pulled-back images, send v_i into h^{-1}E2 ∩ E2.
    std::vector<GFVector> fixed_tails;
    for (std::size_t j = 0; j < i; ++j) fixed_tails.push_back(tail(ani.apply(images[j]), tt));
    const auto fixed_span = span_of(mod, m, fixed_tails);
    const auto target = subspace_intersect(e2.image(mat_inv(h)), e2);
    const auto v = tail(frames[i].v, tt);

    std::optional<GFMatrix> x;
    if (admissible(GFMatrix::identity(mod, m))) x = GFMatrix::identity(mod, m);
    if (!x && !fixed_span.contains(v)) {
      for (const auto& y_full : target.basis()) {
        const auto y = tail(y_full, tt);
        if (fixed_span.contains(y)) continue;
        auto us = fixed_span.basis();
        auto ws = fixed_span.basis();
        us.push_back(v);
        ws.push_back(y);
        auto cand = sl_map_frame(us, ws, m);
        if (admissible(cand)) x = std::move(cand);
        break;
      }
    }
    for (std::size_t attempt = 0; !x && attempt < config_.random_attempts; ++attempt) {
      auto cand = random_sl(mod, m, rng_);
      if (admissible(cand)) x = std::move(cand);
    }
    if (!x) throw SearchExhausted("frame_return_word: no groumvirate payload keeps the first " + std::to_string(i + 1) + " frame images in <e_{t+1}..e_n>");
    b = b + frames[i].a + payload_word(*x) + frames[i].a.inverse();
    bm = h * payload_matrix(*x) * ani;
  }
  for (const auto& img : images)
    if (!e2.contains(bm.apply(img))) throw std::logic_error("frame_return_word: result does not map the frame images into <e_{t+1}..e_n>");
  return b;
}

Word WordBuilder::move_word() {
  require_regime("move_word");
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  const auto m = nn - tt;
  const auto& gs = setup_.generators;
  const auto e2 = Subspace::coordinate(mod, nn, tt, nn);

  if (config_.allow_shortcuts) {
    for (const auto& [gi, inv] : step_choices()) {
      const auto& g = inv ? gs.inverse_matrix(gi) : gs[gi].matrix;
      bool ok = true;
      for (std::size_t i = 0; i < tt && ok; ++i) ok = e2.contains(g.column(i));
      if (ok) return step_word(gi, inv);
    }
  }

  const auto a = tail_rank_word();
  const auto frames = frame_pairs();
  const auto b = frame_return_word(frames);
  const auto am = evaluate(a);
  const auto bm = evaluate(b);

  std::vector<GFVector> images;
  std::vector<GFVector> heads;
  for (const auto& f : frames) {
    images.push_back(evaluate(f.a).apply(f.v));
    heads.push_back(head(images.back(), tt));
  }
  const auto p1_inv = mat_inv(GFMatrix::from_columns(heads));

  // r_i: the element of span{a_j v_j} agreeing with a e_i on E1.
  std::vector<GFVector> r;
  std::vector<GFVector> z;
  for (std::size_t i = 0; i < tt; ++i) {
    const auto col = am.column(i);
    const auto alpha = p1_inv.apply(head(col, tt));
    GFVector ri(mod, nn);
    for (std::size_t j = 0; j < tt; ++j) ri = ri + images[j].scaled(alpha[j]);
    r.push_back(std::move(ri));
    z.push_back(tail(col, tt));
  }

  const auto q2 = subspace_intersect(e2.image(mat_inv(bm)), e2);
  std::uniform_int_distribution<std::uint32_t> residue(0, mod.value() - 1);
  for (std::size_t attempt = 0; attempt <= config_.random_attempts; ++attempt) {
    std::vector<GFVector> y;
    for (std::size_t i = 0; i < tt; ++i) {
      GFVector q(mod, nn);
      if (attempt == 0) {
        q = q2.basis()[i];
      } else {
        for (const auto& bv : q2.basis()) q = q + bv.scaled(residue(rng_));
      }
      y.push_back(tail(r[i] + q, tt));
    }
    if (rank_of(y) != tt) continue;
    const auto x = sl_map_frame(z, y, m);
    auto word = b + payload_word(x) + a;
    const auto mm = evaluate(word);
    for (std::size_t i = 0; i < tt; ++i)
      if (!e2.contains(mm.column(i))) throw std::logic_error("move_word: result does not move e_i into <e_{t+1}..e_n>");
    return word.simplified();
  }
  throw SearchExhausted("move_word: no choice of complements gives independent targets");
}

// ---------------------------------------------------------------- block swap

GFMatrix WordBuilder::swap_target() const {
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  GFMatrix s = GFMatrix::identity(mod, nn);
  for (std::size_t i = 0; i < tt; ++i) {
    s.set(i, i, 0);
    s.set(tt + i, tt + i, 0);
    s.set(tt + i, i, 1);
    s.set(i, tt + i, 1);
  }
  if (tt % 2 == 1 && mod.value() != 2) s.set(nn - 1, nn - 1, -1);
  return s;
}

const Word& WordBuilder::swap_word() {
  if (swap_) return *swap_;
  require_regime("swap_word");
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  const auto m = nn - tt;
  const auto e2 = Subspace::coordinate(mod, nn, tt, nn);

  const auto mw = move_word();
  const auto mm = evaluate(mw);
  const auto mi = mat_inv(mm);

  // b = m^{-1} X m swaps e_i and v_i (up to the sign sigma_0) for v_i in E2 ∩ m^{-1}E2.
  const auto v_space = subspace_intersect(e2.image(mi), e2);
  std::vector<GFVector> vs(v_space.basis().begin(), v_space.basis().begin() + static_cast<std::ptrdiff_t>(tt));
  std::vector<GFVector> us_src;
  std::vector<GFVector> us_dst;
  for (std::size_t i = 0; i < tt; ++i) us_src.push_back(tail(mm.column(i), tt));
  for (std::size_t i = 0; i < tt; ++i) us_src.push_back(tail(mm.apply(vs[i]), tt));
  for (std::size_t i = 0; i < tt; ++i) us_dst.push_back(us_src[tt + i]);
  for (std::size_t i = 0; i < tt; ++i) us_dst.push_back(us_src[i]);
  std::vector<std::uint32_t> sigma(tt, 1);
  GFMatrix xs = GFMatrix::identity(mod, m);
  if (2 * tt < m) {
    xs = sl_map_frame(us_src, us_dst, m);
  } else {
    xs = basis_map(us_src, us_dst);
    if (det(xs).value() != 1) {
      sigma[0] = mod.neg(1);
      us_dst[tt] = us_dst[tt].scaled(sigma[0]);
      xs = basis_map(us_src, us_dst);
    }
  }
  const auto b = mw.inverse() + payload_word(xs) + mw;

  std::vector<GFVector> units;
  std::vector<GFVector> v_tails;
  std::vector<GFVector> v_signed;
  for (std::size_t i = 0; i < tt; ++i) {
    units.push_back(GFVector::unit(mod, m, i));
    v_tails.push_back(tail(vs[i], tt));
    v_signed.push_back(v_tails.back().scaled(sigma[i]));
  }
  const auto g1 = sl_map_frame(v_tails, units, m);
  const auto g2 = sl_map_frame(units, v_signed, m);
  const auto c0 = payload_matrix(g1) * evaluate(b) * payload_matrix(g2);

  // G3 clears rows 0..t-1 of columns 2t..n-1 using the columns t..2t-1, which c0 sends to E1.
  GFMatrix g3 = GFMatrix::identity(mod, m);
  for (std::size_t j = 2 * tt; j < nn; ++j)
    for (std::size_t k = 0; k < tt; ++k) g3.set(k, j - tt, mod.neg(c0(k, j)));
  const auto c1 = c0 * payload_matrix(g3);

  // G4 = [[I, Q], [0, S]] on E2 turns the remaining block into [0; diag(1..1, sign)].
  const auto w = nn - 2 * tt;
  const auto c2 = c1.block(tt, 2 * tt, tt, w);
  const auto c3 = c1.block(2 * tt, 2 * tt, w, w);
  const auto c3_inv = mat_inv(c3);
  GFMatrix c3_target = GFMatrix::identity(mod, w);
  c3_target.set(w - 1, w - 1, swap_target()(nn - 1, nn - 1));
  const auto s_blk = c3_target * c3_inv;
  GFMatrix q_blk = c2 * c3_inv;
  GFMatrix g4 = GFMatrix::identity(mod, m);
  for (std::size_t i = 0; i < tt; ++i)
    for (std::size_t j = 0; j < w; ++j) g4.set(i, tt + j, mod.neg(q_blk(i, j)));
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) g4.set(tt + i, tt + j, s_blk(i, j));

  auto word = (payload_word(g4 * g1) + b + payload_word(g2 * g3)).simplified();
  if (!(evaluate(word) == swap_target())) throw std::logic_error("swap_word: constructed word does not evaluate to the block swap");
  swap_matrix_ = swap_target();
  swap_inverse_ = word.inverse();
  swap_ = std::move(word);
  return *swap_;
}

// ---------------------------------------------------------------- upgrading groumvirate elements

std::pair<GFMatrix, GFMatrix> WordBuilder::upgrade_conjugator(std::span<const std::size_t> moved) {
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  const auto m = nn - tt;
  if (moved.size() != nn - 2 * tt) throw std::invalid_argument("upgrade: moved set must have n - 2t elements");
  std::vector<bool> is_moved(nn, false);
  for (const auto j : moved) {
    if (j < tt || j >= nn) throw std::invalid_argument("upgrade: moved index " + std::to_string(j) + " outside [t, n)");
    if (is_moved[j]) throw std::invalid_argument("upgrade: repeated moved index " + std::to_string(j));
    is_moved[j] = true;
  }
  std::vector<std::size_t> fixed;
  for (std::size_t j = tt; j < nn; ++j)
    if (!is_moved[j]) fixed.push_back(j);

  GFMatrix p(mod, m, m);
  for (std::size_t i = 0; i < tt; ++i) p.set(fixed[i] - tt, i, 1);
  for (std::size_t k = 0; k < moved.size(); ++k) p.set(moved[k] - tt, tt + k, 1);
  if (det(p).value() != 1) p.set(fixed[0] - tt, 0, -1);

  swap_word();
  return {p, payload_matrix(p) * *swap_matrix_};
}

Word WordBuilder::upgrade_word(const GFMatrix& t_elem, std::span<const std::size_t> moved) {
  require_regime("upgrade_word");
  const auto payload = setup_.groumvirate.payload_of(t_elem);
  auto [p, conj] = upgrade_conjugator(moved);
  if (payload.is_identity()) return {};
  return payload_word(p) + *swap_ + payload_word(payload) + *swap_inverse_ + payload_word(mat_inv(p));
}

Word WordBuilder::coordinate_block_word(const GFMatrix& u, std::span<const std::size_t> moved) {
  require_regime("coordinate_block_word");
  const auto nn = n();
  const auto tt = t();
  if (!u.is_square() || u.rows() != nn) throw std::invalid_argument("coordinate_block_word: matrix must be n x n");
  std::vector<bool> in_k(nn, false);
  for (std::size_t i = 0; i < tt; ++i) in_k[i] = true;
  for (const auto j : moved)
    if (j < nn) in_k[j] = true;
  for (std::size_t j = 0; j < nn; ++j)
    for (std::size_t i = 0; i < nn; ++i) {
      const bool ok = in_k[j] ? (in_k[i] || u(i, j) == 0) : (u(i, j) == (i == j ? 1u : 0u));
      if (!ok) throw std::invalid_argument("coordinate_block_word: matrix does not act on the chosen coordinate block only");
    }
  if (det(u).value() != 1) throw std::invalid_argument("coordinate_block_word: det != 1");
  if (u.is_identity()) return {};
  const auto [p, conj] = upgrade_conjugator(moved);
  const auto inner = mat_inv(conj) * u * conj;
  if (!setup_.groumvirate.contains(inner)) throw std::logic_error("coordinate_block_word: conjugate is not a groumvirate element");
  return upgrade_word(inner, moved);
}

// ---------------------------------------------------------------- Bruhat factors

Word WordBuilder::lower_triangular_word(const GFMatrix& l) {
  require_regime("lower_triangular_word");
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  if (!l.is_square() || l.rows() != nn) throw std::invalid_argument("lower_triangular_word: matrix must be n x n");
  if (!is_lower_triangular(l)) throw std::invalid_argument("lower_triangular_word: matrix is not lower triangular");
  if (det(l).value() != 1) throw std::invalid_argument("lower_triangular_word: det != 1");
  if (l.is_identity()) return {};

  const auto l11 = l.block(0, 0, tt, tt);
  const auto l22 = l.block(tt, tt, nn - tt, nn - tt);
  const auto lambda = det(l11).value();
  const auto l11_inv = mat_inv(l11);

  // L = U_a · U_b · (D·F2); U_b carries L11 and the rows 2t..n-1 of L21,
  // U_a the rows t..2t-1, D·F2 the block L22.
  GFMatrix ub = GFMatrix::identity(mod, nn);
  for (std::size_t i = 0; i < tt; ++i)
    for (std::size_t j = 0; j < tt; ++j) ub.set(i, j, l11(i, j));
  for (std::size_t i = 2 * tt; i < nn; ++i)
    for (std::size_t j = 0; j < tt; ++j) ub.set(i, j, l(i, j));
  ub.set(2 * tt, 2 * tt, mod.inv(lambda));

  const auto l21a = l.block(tt, 0, tt, tt);
  const auto c = l21a * l11_inv;
  GFMatrix ua = GFMatrix::identity(mod, nn);
  for (std::size_t i = 0; i < tt; ++i)
    for (std::size_t j = 0; j < tt; ++j) ua.set(tt + i, j, c(i, j));

  // D·F2 is L22 with row t scaled by lambda: det = det L22 · det L11 = 1.
  GFMatrix df2 = l22;
  for (std::size_t j = 0; j < nn - tt; ++j) df2.set(tt, j, mod.mul(df2(tt, j), lambda));

  std::vector<std::size_t> moved_a;
  for (std::size_t j = tt; j < nn - tt; ++j) moved_a.push_back(j);
  std::vector<std::size_t> moved_b;
  for (std::size_t j = 2 * tt; j < nn; ++j) moved_b.push_back(j);
  return coordinate_block_word(ua, moved_a) + coordinate_block_word(ub, moved_b) + payload_word(df2);
}

Word WordBuilder::monomial_word(const GFMatrix& w) {
  require_regime("monomial_word");
  const auto mod = modulus();
  const auto nn = n();
  const auto tt = t();
  if (!w.is_square() || w.rows() != nn) throw std::invalid_argument("monomial_word: matrix must be n x n");
  if (!is_monomial(w)) throw std::invalid_argument("monomial_word: matrix is not monomial");
  if (det(w).value() != 1) throw std::invalid_argument("monomial_word: det != 1");
  if (w.is_identity()) return {};

  const auto sigma = monomial_permutation(w);
  std::vector<bool> in_i0(nn, false);
  std::vector<std::size_t> moved;
  for (std::size_t i = 0; i < nn; ++i)
    if (sigma[i] < tt) {
      in_i0[i] = true;
      if (i >= tt) moved.push_back(i);
    }
  for (std::size_t j = tt; j < nn && moved.size() < nn - 2 * tt; ++j)
    if (!in_i0[j]) moved.push_back(j);
  std::sort(moved.begin(), moved.end());

  // W_in agrees with W on the columns sent into E1 and maps the rest of K
  // onto the moved coordinates in order; W_out = W · W_in^{-1} then fixes E1.
  std::vector<std::size_t> domain;
  for (std::size_t i = 0; i < tt; ++i)
    if (!in_i0[i]) domain.push_back(i);
  for (const auto j : moved)
    if (!in_i0[j]) domain.push_back(j);
  std::sort(domain.begin(), domain.end());
  GFMatrix w_in = GFMatrix::identity(mod, nn);
  std::vector<std::size_t> k_cols;
  for (std::size_t i = 0; i < tt; ++i) k_cols.push_back(i);
  k_cols.insert(k_cols.end(), moved.begin(), moved.end());
  for (const auto j : k_cols) w_in.set(j, j, 0);
  for (std::size_t i = 0; i < nn; ++i)
    if (in_i0[i]) w_in.set(sigma[i], i, w(sigma[i], i));
  for (std::size_t k = 0; k < domain.size(); ++k) w_in.set(moved[k], domain[k], 1);
  const auto d = det(w_in).value();
  if (!domain.empty()) {
    w_in.set(moved.back(), domain.back(), mod.inv(d));
  } else if (d != 1) {
    throw std::logic_error("monomial_word: no free column to absorb the determinant");
  }
  const auto w_out = w * mat_inv(w_in);
  return payload_word(setup_.groumvirate.payload_of(w_out)) + coordinate_block_word(w_in, moved);
}

BuildReport WordBuilder::construct_word(const GFMatrix& target) {
  const auto start = std::chrono::steady_clock::now();
  const auto mod = modulus();
  const auto nn = n();
  if (!target.is_square() || target.rows() != nn || !(target.modulus() == mod))
    throw std::invalid_argument("construct_word: target must be an n x n matrix over F_p");
  if (det(target).value() != 1) throw std::invalid_argument("construct_word: det(M) != 1");

  BuildReport report{target, {}, 0, config_.budget_constant * nn * nn, 0, {}, false, {}};
  const auto& gs = setup_.generators;
  Word word;
  bool done = target.is_identity();
  if (!done && config_.allow_shortcuts) {
    for (const auto& [gi, inv] : step_choices()) {
      if ((inv ? gs.inverse_matrix(gi) : gs[gi].matrix) == target) {
        word = step_word(gi, inv);
        done = true;
        break;
      }
    }
    if (!done && setup_.groumvirate.contains(target)) {
      word = payload_word(setup_.groumvirate.payload_of(target));
      done = true;
    }
  }
  if (!done) {
    require_regime("construct_word");
    auto [b1, w, b2] = bruhat_decompose(target);
    // Move det b1 and det w into b2's first row so all three factors have det 1.
    const auto d1 = det(b1).value();
    const auto dw = det(w).value();
    const auto d1_inv = mod.inv(d1);
    for (std::size_t i = 0; i < nn; ++i) b1.set(i, 0, mod.mul(b1(i, 0), d1_inv));
    for (std::size_t j = 0; j < nn; ++j) w.set(0, j, mod.mul(w(0, j), d1));
    const auto e = mod.inv(mod.mul(d1, dw));
    for (std::size_t i = 0; i < nn; ++i) w.set(i, 0, mod.mul(w(i, 0), e));
    const auto e_inv = mod.inv(e);
    for (std::size_t j = 0; j < nn; ++j) b2.set(0, j, mod.mul(b2(0, j), e_inv));
    word = (lower_triangular_word(b1) + monomial_word(w) + lower_triangular_word(b2)).simplified();
  }
  if (!(evaluate(word) == target)) throw std::logic_error("construct_word: word does not evaluate to the target");
  report.word = std::move(word);
  report.cost = report.word.cost();
  report.steps = report.word.length();
  report.success = report.cost <= report.budget;
  if (!report.success)
    report.failure = "cost " + std::to_string(report.cost) + " exceeds budget " + std::to_string(report.budget);
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

}  // namespace sldiam
