#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sldiam/lower_bound.hpp"
#include "sldiam/subspace.hpp"

using namespace sldiam;

TEST_CASE("field arithmetic is exhaustively consistent for small primes") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const FieldModulus f(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == (a + b) % p);
        CHECK(f.sub(a, b) == (a + p - b) % p);
        for (std::uint32_t c = 0; c < p; ++c) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(FieldModulus(4), std::invalid_argument);
  CHECK_THROWS_AS(FieldModulus(1), std::invalid_argument);
  CHECK_NOTHROW(FieldModulus(2147483647u));
  CHECK_THROWS_AS(static_cast<void>(FieldModulus(5).inv(0)), std::domain_error);
  const FieldModulus big(2147483647u);
  CHECK(big.mul(big.value() - 1, big.value() - 1) == 1);
  CHECK(GFScalar(FieldModulus(7), -1).value() == 6);
  CHECK_THROWS(GFScalar(FieldModulus(7), 1) + GFScalar(FieldModulus(5), 1));
}

TEST_CASE("mat_mul") {
  const FieldModulus f5(5);
  std::mt19937_64 rng(11);
  SUBCASE("identity is neutral") {
    const auto m = oracle::random_matrix(f5, 3, 3, rng);
    CHECK(GFMatrix::identity(f5, 3) * m == m);
  }
  SUBCASE("hand product over F_2") {
    const FieldModulus f2(2);
    const auto a = GFMatrix::from_rows(f2, {{1, 1}, {0, 1}});
    const auto b = GFMatrix::from_rows(f2, {{1, 0}, {1, 1}});
    CHECK(a * b == GFMatrix::from_rows(f2, {{0, 1}, {1, 1}}));
    CHECK(a * b == oracle::naive_mul(a, b));
  }
  SUBCASE("block swap squares to the identity") {
    const auto s = block_swap(f5, 3, 1);
    CHECK(s * s == GFMatrix::identity(f5, 3));
  }
  SUBCASE("agrees with the scalar-loop oracle and is associative") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = oracle::random_matrix(f5, 4, 3, rng);
      const auto b = oracle::random_matrix(f5, 3, 5, rng);
      const auto c = oracle::random_matrix(f5, 5, 2, rng);
      CHECK(a * b == oracle::naive_mul(a, b));
      CHECK((a * b) * c == a * (b * c));
    }
  }
  CHECK_THROWS(GFMatrix(f5, 2, 3) * GFMatrix(f5, 2, 3));
}

TEST_CASE("mat_inv and det") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const FieldModulus f(p);
    CHECK(mat_inv(GFMatrix::identity(f, 4)) == GFMatrix::identity(f, 4));
    const auto rot = GFMatrix::from_rows(f, {{0, 1}, {-1, 0}});
    CHECK(mat_inv(rot) == GFMatrix::from_rows(f, {{0, -1}, {1, 0}}));
  }
  const FieldModulus f7(7);
  std::mt19937_64 rng(3);
  SUBCASE("random invertible 4x4 over F_7 built from row operations") {
    std::uniform_int_distribution<std::uint32_t> residue(1, 6);
    for (int trial = 0; trial < 20; ++trial) {
      GFMatrix m = GFMatrix::identity(f7, 4);
      for (int op = 0; op < 30; ++op) {
        const auto i = rng() % 4, j = rng() % 4;
        if (i == j) continue;
        const auto c = residue(rng);
        for (std::size_t k = 0; k < 4; ++k) m.set(i, k, m(i, k) + static_cast<std::int64_t>(c) * m(j, k));
      }
      CHECK(m * mat_inv(m) == GFMatrix::identity(f7, 4));
      CHECK(det(m).value() == 1);
    }
  }
  SUBCASE("det agrees with the Leibniz expansion") {
    for (std::size_t n = 1; n <= 5; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        const auto m = oracle::random_matrix(f7, n, n, rng);
        CHECK(det(m).value() == oracle::leibniz_det(m));
        if (oracle::leibniz_det(m) == 0) CHECK_THROWS_AS(mat_inv(m), SingularMatrixError);
      }
  }
  CHECK(det(GFMatrix::from_rows(f7, {{2, 0}, {0, 4}})).value() == 1);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t i = 0; i + 1 < 4; ++i) CHECK(det(signed_swap(FieldModulus(p), 4, i)).value() == 1);
}

TEST_CASE("rref, rank and kernel") {
  const FieldModulus f5(5);
  const auto z = rref(GFMatrix(f5, 3, 3));
  CHECK(z.rank == 0);
  CHECK(z.pivot_cols.empty());
  CHECK(z.matrix.is_zero());
  const auto id = rref(GFMatrix::identity(f5, 3));
  CHECK(id.rank == 3);
  CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1, 2});
  CHECK(rank(GFMatrix::from_rows(f5, {{1, 2}, {2, 4}})) == 1);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_matrix(f5, 3, 5, rng);
    const auto r = rref(a);
    CHECK(rref(r.matrix).matrix == r.matrix);
    const auto ker = kernel(a);
    CHECK(ker.size() == 5 - r.rank);
    for (const auto& v : ker) CHECK(a.apply(v).is_zero());
  }
}

TEST_CASE("subspaces") {
  const FieldModulus f3(3);
  const std::vector<GFVector> e12{GFVector::unit(f3, 3, 0), GFVector::unit(f3, 3, 1)};
  const auto s = subspace_span(f3, 3, e12);
  CHECK(s.dim() == 2);
  CHECK(s.pivot_cols() == std::vector<std::size_t>{0, 1});
  const GFVector v(f3, {1, 2, 0});
  const std::vector<GFVector> vv{v, v.scaled(2)};
  CHECK(subspace_span(f3, 3, vv).dim() == 1);
  const FieldModulus f2(2);
  const std::vector<GFVector> tri{GFVector(f2, {1, 1, 0}), GFVector(f2, {0, 1, 1}), GFVector(f2, {1, 0, 1})};
  CHECK(subspace_span(f2, 3, tri).dim() == 2);

  CHECK(subspace_intersect(s, s) == s);
  const FieldModulus f7(7);
  CHECK(subspace_intersect(Subspace::coordinate(f7, 2, 0, 1), Subspace::coordinate(f7, 2, 1, 2)).dim() == 0);

  SUBCASE("intersection matches brute-force enumeration") {
    std::mt19937_64 rng(17);
    for (std::uint32_t p : {2u, 3u}) {
      const FieldModulus f(p);
      const std::size_t n = p == 2 ? 6 : 4;
      const auto all = oracle::all_vectors(f, n);
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<GFVector> ga, gb;
        for (int k = 0; k < (p == 2 ? 4 : 2); ++k) {
          ga.push_back(oracle::random_vector(f, n, rng));
          gb.push_back(oracle::random_vector(f, n, rng));
        }
        const auto u = subspace_span(f, n, ga);
        const auto w = subspace_span(f, n, gb);
        const auto uw = subspace_intersect(u, w);
        const auto in_u = oracle::span_by_enumeration(f, n, ga);
        const auto in_w = oracle::span_by_enumeration(f, n, gb);
        for (const auto& x : all) {
          const bool expected = std::find(in_u.begin(), in_u.end(), x) != in_u.end() && std::find(in_w.begin(), in_w.end(), x) != in_w.end();
          CHECK(uw.contains(x) == expected);
        }
        CHECK(uw.dim() + subspace_sum(u, w).dim() == u.dim() + w.dim());
        if (p == 2 && u.dim() == 4 && w.dim() == 4) CHECK(uw.dim() >= 2);
      }
    }
  }
}

TEST_CASE("projections") {
  const FieldModulus f5(5);
  CHECK(project_pi2(GFVector::unit(f5, 3, 0), 1).is_zero());
  CHECK(project_pi1(GFVector(f5, {1, 0, 1}), 2) == GFVector::unit(f5, 3, 0));
  const GFVector v(f5, {1, 2, 3, 4});
  CHECK(project_pi1(v, 2) + project_pi2(v, 2) == v);
  CHECK(embed_tail(tail(v, 1), 4) == project_pi2(v, 1));
}

TEST_CASE("complete_to_basis") {
  const FieldModulus f3(3);
  const auto whole = Subspace::whole(f3, 3);
  const auto std_basis = complete_to_basis({}, whole);
  REQUIRE(std_basis.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std_basis[i] == GFVector::unit(f3, 3, i));

  const FieldModulus f2(2);
  const std::vector<GFVector> one{GFVector(f2, {1, 1, 0})};
  const auto b = complete_to_basis(one, Subspace::whole(f2, 3));
  CHECK(b.size() == 3);
  CHECK(rank_of(b) == 3);
  CHECK(b.front() == one.front());

  const FieldModulus f5(5);
  const std::vector<GFVector> e12{GFVector::unit(f5, 4, 0), GFVector::unit(f5, 4, 1)};
  const auto b4 = complete_to_basis(e12, Subspace::whole(f5, 4));
  CHECK(b4[2] == GFVector::unit(f5, 4, 2));
  CHECK(b4[3] == GFVector::unit(f5, 4, 3));
  const std::vector<GFVector> dependent{GFVector::unit(f5, 4, 0), GFVector::unit(f5, 4, 0).scaled(2)};
  CHECK_THROWS(complete_to_basis(dependent, Subspace::whole(f5, 4)));
}

TEST_CASE("sl_map_vector and sl_map_frame") {
  const FieldModulus f7(7);
  const auto e1 = GFVector::unit(f7, 2, 0);
  const auto e2 = GFVector::unit(f7, 2, 1);
  CHECK(sl_map_vector(e1, e1, 2).apply(e1) == e1);
  const auto rot = sl_map_vector(e1, e2, 2);
  CHECK(rot.apply(e1) == e2);
  CHECK(det(rot).value() == 1);
  CHECK(sl_map_vector(e1, e1.scaled(3), 2) == GFMatrix::from_rows(f7, {{3, 0}, {0, 5}}));
  CHECK_THROWS(sl_map_vector(GFVector(f7, 2), e1, 2));

  const FieldModulus f5(5);
  const std::vector<GFVector> u1{GFVector::unit(f5, 3, 0)};
  const std::vector<GFVector> w1{GFVector::unit(f5, 3, 1)};
  const auto x = sl_map_frame(u1, w1, 3);
  CHECK(x.apply(u1[0]) == w1[0]);
  CHECK(det(x).value() == 1);

  SUBCASE("random contracts") {
    std::mt19937_64 rng(23);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const FieldModulus f(p);
      for (std::size_t m = 2; m <= 4; ++m)
        for (int trial = 0; trial < 1000; ++trial) {
          const auto k = 1 + rng() % (m - 1);
          std::vector<GFVector> us, ws;
          while (us.size() < k) {
            auto c = oracle::random_vector(f, m, rng);
            us.push_back(c);
            if (rank_of(us) < us.size()) us.pop_back();
          }
          while (ws.size() < k) {
            auto c = oracle::random_vector(f, m, rng);
            ws.push_back(c);
            if (rank_of(ws) < ws.size()) ws.pop_back();
          }
          const auto xm = sl_map_frame(us, ws, m);
          REQUIRE(det(xm).value() == 1);
          for (std::size_t j = 0; j < k; ++j) REQUIRE(xm.apply(us[j]) == ws[j]);
          const auto xv = sl_map_vector(us[0], ws[0], m);
          REQUIRE(det(xv).value() == 1);
          REQUIRE(xv.apply(us[0]) == ws[0]);
        }
    }
  }
}

TEST_CASE("matrix serialization round-trips") {
  const FieldModulus f7(7);
  std::mt19937_64 rng(31);
  const auto m = oracle::random_matrix(f7, 3, 4, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);
  std::istringstream bad("7 2 2\n1 2\n3 9\n");
  CHECK_THROWS(read_matrix(bad));
}
