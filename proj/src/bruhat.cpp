#include "sldiam/bruhat.hpp"

#include <stdexcept>

namespace sldiam {

bool is_lower_triangular(const GFMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("is_lower_triangular: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_monomial(const GFMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("is_monomial: matrix is not square");
  const auto n = m.rows();
  std::vector<int> row_count(n, 0);
  std::vector<int> col_count(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) {
        ++row_count[i];
        ++col_count[j];
      }
  for (std::size_t i = 0; i < n; ++i)
    if (row_count[i] != 1 || col_count[i] != 1) return false;
  return true;
}

std::vector<std::size_t> monomial_permutation(const GFMatrix& w) {
  if (!is_monomial(w)) throw std::invalid_argument("monomial_permutation: matrix is not monomial");
  std::vector<std::size_t> perm(w.cols());
  for (std::size_t j = 0; j < w.cols(); ++j)
    for (std::size_t i = 0; i < w.rows(); ++i)
      if (w(i, j) != 0) perm[j] = i;
  return perm;
}

BruhatTriple bruhat_decompose(const GFMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("bruhat_decompose: matrix is not square");
  const auto mod = m.modulus();
  const auto n = m.rows();
  GFMatrix core = m;
  // Accumulate row_ops · m · col_ops = core; b1 = row_ops^{-1}, b2 = col_ops^{-1}.
  GFMatrix row_ops = GFMatrix::identity(mod, n);
  GFMatrix col_ops = GFMatrix::identity(mod, n);
  std::vector<bool> claimed(n, false);

  for (std::size_t jj = n; jj-- > 0;) {
    std::size_t r = 0;
    while (r < n && (claimed[r] || core(r, jj) == 0)) ++r;
    if (r == n) throw SingularMatrixError("bruhat_decompose: matrix is singular");
    claimed[r] = true;
    const auto inv = mod.inv(core(r, jj));
    for (std::size_t i = r + 1; i < n; ++i) {
      if (core(i, jj) == 0) continue;
      const auto f = mod.mul(core(i, jj), inv);  // row_i -= f · row_r
      for (std::size_t c = 0; c < n; ++c) {
        core.set(i, c, mod.sub(core(i, c), mod.mul(f, core(r, c))));
        row_ops.set(i, c, mod.sub(row_ops(i, c), mod.mul(f, row_ops(r, c))));
      }
    }
    for (std::size_t c = 0; c < jj; ++c) {
      if (core(r, c) == 0) continue;
      const auto f = mod.mul(core(r, c), inv);  // col_c -= f · col_jj
      for (std::size_t i = 0; i < n; ++i) {
        core.set(i, c, mod.sub(core(i, c), mod.mul(f, core(i, jj))));
        col_ops.set(i, c, mod.sub(col_ops(i, c), mod.mul(f, col_ops(i, jj))));
      }
    }
  }
  return {mat_inv(row_ops), core, mat_inv(col_ops)};
}

}  // namespace sldiam
