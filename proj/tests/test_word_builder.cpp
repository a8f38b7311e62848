#include <random>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"
#include "sldiam/bruhat.hpp"
#include "sldiam/experiment.hpp"
#include "sldiam/lower_bound.hpp"
#include "sldiam/subspace.hpp"
#include "sldiam/word_builder.hpp"

using namespace sldiam;

namespace {

const std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> kContractGrid{{3, 1, 2}, {3, 1, 5}, {6, 2, 3}, {9, 3, 2}};

WordBuilder builder_for(std::size_t n, std::size_t t, std::uint32_t p, bool shortcuts = true, std::uint64_t seed = 1) {
  BuilderConfig cfg;
  cfg.seed = seed;
  cfg.allow_shortcuts = shortcuts;
  return WordBuilder(default_generating_set(n, t, FieldModulus(p)), cfg);
}

GFMatrix random_lower_sl(FieldModulus mod, std::size_t n, std::mt19937_64& rng, bool unit_diagonal) {
  std::uniform_int_distribution<std::uint32_t> residue(0, mod.value() - 1);
  std::uniform_int_distribution<std::uint32_t> unit(1, mod.value() - 1);
  GFMatrix l(mod, n, n);
  std::uint32_t prod = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) l.set(i, j, residue(rng));
    const auto d = unit_diagonal ? 1u : unit(rng);
    l.set(i, i, d);
    if (i + 1 < n) prod = mod.mul(prod, d);
  }
  l.set(n - 1, n - 1, mod.inv(prod));
  return l;
}

GFMatrix random_monomial_sl(FieldModulus mod, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::uint32_t> unit(1, mod.value() - 1);
  GFMatrix w(mod, n, n);
  for (std::size_t j = 0; j < n; ++j) w.set(perm[j], j, unit(rng));
  const auto d = det(w).value();
  w.set(perm[0], 0, mod.mul(w(perm[0], 0), mod.inv(d)));
  return w;
}

}  // namespace

TEST_CASE("tail rank word: pi_2 images of e_1..e_t are independent") {
  for (const auto& [n, t, p] : kContractGrid)
    for (const bool shortcuts : {true, false}) {
      auto b = builder_for(n, t, p, shortcuts);
      const auto a = b.evaluate(b.tail_rank_word());
      std::vector<GFVector> tails;
      for (std::size_t i = 0; i < t; ++i) {
        CHECK_FALSE(project_pi2(a.column(i), t).is_zero());
        tails.push_back(tail(a.column(i), t));
      }
      CHECK(rank_of(tails) == t);
    }
  auto b = builder_for(3, 1, 5);
  const auto w = b.tail_rank_word();
  REQUIRE(w.length() == 1);
  CHECK(project_pi2(b.evaluate(w).column(0), 1) == GFVector(FieldModulus(5), {0, 4, 0}));
}

TEST_CASE("frame pairs: frame images are independent modulo E2") {
  for (const auto& [n, t, p] : kContractGrid) {
    auto b = builder_for(n, t, p);
    const auto frames = b.frame_pairs();
    REQUIRE(frames.size() == t);
    const auto e2 = Subspace::coordinate(FieldModulus(p), n, t, n);
    std::vector<GFVector> heads;
    for (const auto& f : frames) {
      CHECK(e2.contains(f.v));
      const auto img = b.evaluate(f.a).apply(f.v);
      heads.push_back(project_pi1(img, t));
    }
    CHECK(rank_of(heads) == t);
  }
  auto b = builder_for(3, 1, 2);
  const auto frames = b.frame_pairs();
  CHECK(frames[0].v == GFVector::unit(FieldModulus(2), 3, 1));
  CHECK(project_pi1(b.evaluate(frames[0].a).apply(frames[0].v), 1) == GFVector::unit(FieldModulus(2), 3, 0));
}

TEST_CASE("frame return word: b sends every frame image into E2") {
  for (const auto& [n, t, p] : kContractGrid) {
    auto b = builder_for(n, t, p);
    const auto frames = b.frame_pairs();
    const auto bm = b.evaluate(b.frame_return_word(frames));
    const auto e2 = Subspace::coordinate(FieldModulus(p), n, t, n);
    for (const auto& f : frames) CHECK(e2.contains(bm.apply(b.evaluate(f.a).apply(f.v))));
    if (t == 1) CHECK(b.frame_return_word(frames) == frames[0].a.inverse());
  }
  WordBuilder bad(default_generating_set(5, 2, FieldModulus(3)));
  CHECK_THROWS_AS(bad.frame_return_word(bad.frame_pairs()), ParameterError);
}

TEST_CASE("move word: m e_i lies in E2") {
  for (const auto& [n, t, p] : kContractGrid)
    for (const bool shortcuts : {true, false}) {
      auto b = builder_for(n, t, p, shortcuts);
      const auto m = b.evaluate(b.move_word());
      const auto e2 = Subspace::coordinate(FieldModulus(p), n, t, n);
      for (std::size_t i = 0; i < t; ++i) CHECK(e2.contains(m.column(i)));
    }
}

TEST_CASE("searches fail loudly on a non-generating set") {
  const FieldModulus f3(3);
  CayleySetup only_block{GeneratorSet(6, f3, {}, true), Groumvirate(6, 2, f3)};
  WordBuilder b(only_block);
  CHECK_THROWS_AS(b.tail_rank_word(), SearchExhausted);
  CHECK_THROWS_AS(b.frame_pairs(), SearchExhausted);
}

TEST_CASE("swap word") {
  SUBCASE("n = 3, t = 1 over F_2 is the displayed block matrix") {
    auto b = builder_for(3, 1, 2);
    const auto s = b.evaluate(b.swap_word());
    CHECK(s == GFMatrix::from_rows(FieldModulus(2), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    CHECK((s * s).is_identity());
  }
  SUBCASE("exact block swap whenever it lies in SL_n") {
    for (std::size_t t = 1; t <= 4; ++t)
      for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        auto b = builder_for(3 * t, t, p);
        const auto s = b.evaluate(b.swap_word());
        CHECK(s == b.swap_target());
        CHECK((s * s).is_identity());
        const bool in_sl = p == 2 || t % 2 == 0;
        CHECK((s == block_swap(FieldModulus(p), 3 * t, t)) == in_sl);
      }
  }
  SUBCASE("cached and deterministic") {
    auto b1 = builder_for(6, 2, 3, true, 9);
    auto b2 = builder_for(6, 2, 3, true, 9);
    const auto& w = b1.swap_word();
    CHECK(&w == &b1.swap_word());
    CHECK(w == b2.swap_word());
  }
}

TEST_CASE("upgrade word") {
  const FieldModulus f5(5);
  auto b = builder_for(3, 1, 5);
  const std::vector<std::size_t> identity_partition{2};
  CHECK(b.evaluate(b.upgrade_word(GFMatrix::identity(f5, 3), identity_partition)).is_identity());

  const auto x = GFMatrix::from_rows(f5, {{1, 2}, {3, 2}});
  REQUIRE(det(x).value() == 1);
  const auto tm = embed_block(x, 1);
  const auto up = b.evaluate(b.upgrade_word(tm, identity_partition));
  const auto s = b.swap_target();
  CHECK(up == s * tm * mat_inv(s));
  CHECK(up.column(1) == GFVector::unit(f5, 3, 1));

  std::mt19937_64 rng(61);
  auto b9 = builder_for(9, 3, 7);
  const std::vector<std::size_t> moved{3, 5, 8};
  for (int trial = 0; trial < 5; ++trial) {
    const auto t9 = embed_block(random_sl(FieldModulus(7), 6, rng), 3);
    const auto u = b9.evaluate(b9.upgrade_word(t9, moved));
    // Fixed coordinates are {4, 6, 7}.
    for (const std::size_t j : {4u, 6u, 7u}) CHECK(u.column(j) == GFVector::unit(FieldModulus(7), 9, j));
  }
  CHECK_THROWS(b9.upgrade_word(GFMatrix::identity(FieldModulus(7), 9), std::vector<std::size_t>{3, 3, 8}));
}

TEST_CASE("lower triangular word") {
  std::mt19937_64 rng(67);
  auto b3 = builder_for(3, 1, 5);
  CHECK(b3.lower_triangular_word(GFMatrix::identity(FieldModulus(5), 3)).empty());
  for (int trial = 0; trial < 20; ++trial) {
    const auto l = random_lower_sl(FieldModulus(5), 3, rng, true);
    CHECK(b3.evaluate(b3.lower_triangular_word(l)) == l);
  }
  for (const auto& [n, t, p] : kContractGrid) {
    auto b = builder_for(n, t, p);
    for (int trial = 0; trial < 10; ++trial) {
      const auto l = random_lower_sl(FieldModulus(p), n, rng, false);
      CHECK(b.evaluate(b.lower_triangular_word(l)) == l);
    }
  }
  auto zero_diag = GFMatrix::identity(FieldModulus(5), 3);
  zero_diag.set(1, 1, 0);
  CHECK_THROWS(b3.lower_triangular_word(zero_diag));
}

TEST_CASE("monomial word") {
  std::mt19937_64 rng(71);
  const FieldModulus f2(2);
  auto b2 = builder_for(3, 1, 2);
  CHECK(b2.monomial_word(GFMatrix::identity(f2, 3)).empty());
  const auto swap = block_swap(f2, 3, 1);
  const auto via_monomial = b2.monomial_word(swap);
  CHECK(b2.evaluate(via_monomial) == swap);
  CHECK(b2.evaluate(b2.swap_word()) == swap);

  const FieldModulus f7(7);
  auto b7 = builder_for(3, 1, 7);
  const auto diag = GFMatrix::from_rows(f7, {{3, 0, 0}, {0, 5, 0}, {0, 0, 1}});
  CHECK(b7.evaluate(b7.monomial_word(diag)) == diag);

  for (const auto& [n, t, p] : kContractGrid) {
    auto b = builder_for(n, t, p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto w = random_monomial_sl(FieldModulus(p), n, rng);
      CHECK(b.evaluate(b.monomial_word(w)) == w);
    }
  }
}

TEST_CASE("construct word") {
  const FieldModulus f5(5);
  auto b = builder_for(3, 1, 5);
  const auto id = b.construct_word(GFMatrix::identity(f5, 3));
  CHECK(id.cost == 0);
  CHECK(id.success);
  const auto& g = b.setup().generators[0].matrix;
  CHECK(b.construct_word(g).word == generator_word(b.setup().generators, 0));
  CHECK_THROWS(b.construct_word(GFMatrix::from_rows(f5, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})));

  std::mt19937_64 rng(73);
  const auto& setup = b.setup();
  for (int trial = 0; trial < 100; ++trial) {
    const auto target = evaluate_word(random_word(setup, 12, rng), setup.generators, setup.groumvirate);
    const auto rep = b.construct_word(target);
    REQUIRE(b.evaluate(rep.word) == target);
    CHECK(rep.success);
  }

  SUBCASE("uniform targets without shortcuts") {
    for (const auto& [n, t, p] : kContractGrid) {
      auto bb = builder_for(n, t, p, false);
      for (int trial = 0; trial < 20; ++trial) {
        const auto target = random_sl(FieldModulus(p), n, rng);
        const auto rep = bb.construct_word(target);
        REQUIRE(bb.evaluate(rep.word) == target);
        CHECK(rep.cost <= 64 * n * n);
      }
    }
  }

  SUBCASE("assembly cost stays quadratic in n") {
    for (std::size_t t = 1; t <= 4; ++t) {
      const auto n = 3 * t;
      auto bb = builder_for(n, t, 5);
      std::uint64_t worst = 0;
      for (int trial = 0; trial < 5; ++trial) worst = std::max(worst, bb.construct_word(random_sl(FieldModulus(5), n, rng)).cost);
      CHECK(worst <= 64 * n * n);
    }
  }
}
