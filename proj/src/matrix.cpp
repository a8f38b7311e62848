#include "sldiam/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>
#include <utility>

namespace sldiam {

namespace {

void require_same_modulus(FieldModulus a, FieldModulus b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": modulus mismatch");
}

}  // namespace

// ---------------------------------------------------------------- GFVector

GFVector::GFVector(FieldModulus mod, const std::vector<std::int64_t>& values) : mod_(mod), data_(values.size()) {
  for (std::size_t i = 0; i < values.size(); ++i) data_[i] = mod.reduce(values[i]);
}

GFVector GFVector::unit(FieldModulus mod, std::size_t n, std::size_t i) {
  GFVector v(mod, n);
  v.data_.at(i) = 1 % mod.value();
  return v;
}

bool GFVector::is_zero() const noexcept {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

GFVector GFVector::scaled(std::uint32_t c) const {
  GFVector r = *this;
  for (auto& x : r.data_) x = mod_.mul(x, c);
  return r;
}

GFVector operator+(const GFVector& a, const GFVector& b) {
  require_same_modulus(a.mod_, b.mod_, "GFVector +");
  if (a.size() != b.size()) throw std::invalid_argument("GFVector +: length mismatch");
  GFVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.data_[i] = a.mod_.add(a.data_[i], b.data_[i]);
  return r;
}

GFVector operator-(const GFVector& a, const GFVector& b) {
  require_same_modulus(a.mod_, b.mod_, "GFVector -");
  if (a.size() != b.size()) throw std::invalid_argument("GFVector -: length mismatch");
  GFVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.data_[i] = a.mod_.sub(a.data_[i], b.data_[i]);
  return r;
}

// ---------------------------------------------------------------- GFMatrix

GFMatrix::GFMatrix(FieldModulus mod, std::size_t rows, std::size_t cols)
    : mod_(mod), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("GFMatrix: dimensions must be positive");
}

GFMatrix::GFMatrix(FieldModulus mod, std::size_t rows, std::size_t cols, std::vector<std::uint32_t> entries)
    : mod_(mod), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("GFMatrix: dimensions must be positive");
  if (data_.size() != rows * cols) throw std::invalid_argument("GFMatrix: entry count does not match shape");
  for (auto& x : data_) x %= mod.value();
}

GFMatrix GFMatrix::identity(FieldModulus mod, std::size_t n) {
  GFMatrix m(mod, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % mod.value();
  return m;
}

GFMatrix GFMatrix::from_rows(FieldModulus mod, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  GFMatrix m(mod, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("GFMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (auto v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

GFMatrix GFMatrix::from_columns(std::span<const GFVector> columns) {
  if (columns.empty()) throw std::invalid_argument("GFMatrix::from_columns: no columns");
  const auto mod = columns[0].modulus();
  const auto n = columns[0].size();
  GFMatrix m(mod, n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_same_modulus(mod, columns[j].modulus(), "GFMatrix::from_columns");
    if (columns[j].size() != n) throw std::invalid_argument("GFMatrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < n; ++i) m.data_[i * m.cols_ + j] = columns[j][i];
  }
  return m;
}

GFVector GFMatrix::column(std::size_t c) const {
  GFVector v(mod_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.set(i, (*this)(i, c));
  return v;
}

GFVector GFMatrix::row(std::size_t r) const {
  GFVector v(mod_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) v.set(j, (*this)(r, j));
  return v;
}

GFMatrix GFMatrix::transpose() const {
  GFMatrix t(mod_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

GFMatrix GFMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("GFMatrix::block: out of range");
  GFMatrix b(mod_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return b;
}

GFVector GFMatrix::apply(const GFVector& v) const {
  require_same_modulus(mod_, v.modulus(), "GFMatrix::apply");
  if (v.size() != cols_) throw std::invalid_argument("GFMatrix::apply: dimension mismatch");
  GFVector r(mod_, rows_);
  const std::uint64_t p = mod_.value();
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + static_cast<std::uint64_t>(data_[i * cols_ + j]) * v[j]) % p;
    r.set(i, static_cast<std::int64_t>(acc));
  }
  return r;
}

bool GFMatrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (data_[i * cols_ + j] != (i == j ? 1u % mod_.value() : 0u)) return false;
  return true;
}

bool GFMatrix::is_zero() const noexcept {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

std::uint64_t GFMatrix::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 4; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ULL;
    }
  };
  mix(mod_.value());
  mix(rows_);
  mix(cols_);
  for (auto x : data_) mix(x);
  return h;
}

GFMatrix operator*(const GFMatrix& a, const GFMatrix& b) {
  require_same_modulus(a.mod_, b.mod_, "mat_mul");
  if (a.cols_ != b.rows_) throw std::invalid_argument("mat_mul: dimension mismatch");
  GFMatrix c(a.mod_, a.rows_, b.cols_);
  const std::uint64_t p = a.mod_.value();
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t aik = a.data_[i * a.cols_ + k];
      if (aik == 0) continue;
      const auto* brow = &b.data_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * c.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
  }
  return c;
}

GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b) { return a * b; }

// ---------------------------------------------------------------- elimination

RrefResult rref(const GFMatrix& a) {
  const auto mod = a.modulus();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::uint32_t> m = a.entries();
  auto at = [&](std::size_t r, std::size_t c) -> std::uint32_t& { return m[r * cols + c]; };

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    const auto inv = mod.inv(at(r, c));
    for (std::size_t j = c; j < cols; ++j) at(r, j) = mod.mul(at(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const auto f = at(i, c);
      for (std::size_t j = c; j < cols; ++j) at(i, j) = mod.sub(at(i, j), mod.mul(f, at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {GFMatrix(mod, rows, cols, std::move(m)), std::move(pivots), r};
}

std::size_t rank(const GFMatrix& a) { return rref(a).rank; }

std::size_t rank_of(std::span<const GFVector> vectors) {
  if (vectors.empty()) return 0;
  return rank(GFMatrix::from_columns(vectors));
}

std::vector<GFVector> kernel(const GFMatrix& a) {
  const auto res = rref(a);
  const auto mod = a.modulus();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : res.pivot_cols) is_pivot[c] = true;
  std::vector<GFVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    GFVector v(mod, a.cols());
    v.set(f, 1);
    for (std::size_t i = 0; i < res.rank; ++i) v.set(res.pivot_cols[i], -static_cast<std::int64_t>(res.matrix(i, f)));
    basis.push_back(std::move(v));
  }
  return basis;
}

GFScalar det(const GFMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("det: matrix is not square");
  const auto mod = a.modulus();
  const std::size_t n = a.rows();
  std::vector<std::uint32_t> m = a.entries();
  auto at = [&](std::size_t r, std::size_t c) -> std::uint32_t& { return m[r * n + c]; };
  std::uint32_t d = 1 % mod.value();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && at(piv, c) == 0) ++piv;
    if (piv == n) return {mod, 0};
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      d = mod.neg(d);
    }
    d = mod.mul(d, at(c, c));
    const auto inv = mod.inv(at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (at(i, c) == 0) continue;
      const auto f = mod.mul(at(i, c), inv);
      for (std::size_t j = c; j < n; ++j) at(i, j) = mod.sub(at(i, j), mod.mul(f, at(c, j)));
    }
  }
  return {mod, d};
}

GFMatrix mat_inv(const GFMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("mat_inv: matrix is not square");
  const auto mod = a.modulus();
  const std::size_t n = a.rows();
  GFMatrix aug(mod, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a(i, j));
    aug.set(i, n + i, 1);
  }
  const auto res = rref(aug);
  if (res.rank < n || res.pivot_cols[n - 1] != n - 1) throw SingularMatrixError("mat_inv: matrix is singular");
  return res.matrix.block(0, n, n, n);
}

// ---------------------------------------------------------------- projections

GFVector project_pi1(const GFVector& v, std::size_t t) {
  if (t > v.size()) throw std::invalid_argument("project_pi1: t exceeds dimension");
  GFVector r = v;
  for (std::size_t i = t; i < v.size(); ++i) r.set(i, 0);
  return r;
}

GFVector project_pi2(const GFVector& v, std::size_t t) {
  if (t > v.size()) throw std::invalid_argument("project_pi2: t exceeds dimension");
  GFVector r = v;
  for (std::size_t i = 0; i < t; ++i) r.set(i, 0);
  return r;
}

GFVector tail(const GFVector& v, std::size_t t) {
  if (t >= v.size()) throw std::invalid_argument("tail: t must be below the dimension");
  GFVector r(v.modulus(), v.size() - t);
  for (std::size_t i = t; i < v.size(); ++i) r.set(i - t, v[i]);
  return r;
}

GFVector embed_tail(const GFVector& w, std::size_t n) {
  if (w.size() > n) throw std::invalid_argument("embed_tail: vector longer than ambient");
  GFVector r(w.modulus(), n);
  const auto t = n - w.size();
  for (std::size_t i = 0; i < w.size(); ++i) r.set(t + i, w[i]);
  return r;
}

GFMatrix embed_block(const GFMatrix& x, std::size_t t) {
  if (!x.is_square()) throw std::invalid_argument("embed_block: payload is not square");
  const auto n = t + x.rows();
  GFMatrix m = GFMatrix::identity(x.modulus(), n);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m.set(t + i, t + j, x(i, j));
  return m;
}

// ---------------------------------------------------------------- text format

void write_matrix_body(std::ostream& os, const GFMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

void write_matrix(std::ostream& os, const GFMatrix& m) {
  os << m.modulus().value() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  write_matrix_body(os, m);
}

GFMatrix read_matrix_body(std::istream& is, FieldModulus mod, std::size_t rows, std::size_t cols) {
  std::vector<std::uint32_t> entries(rows * cols);
  for (auto& e : entries) {
    std::int64_t v = 0;
    if (!(is >> v)) throw std::runtime_error("read_matrix: truncated matrix body");
    if (v < 0 || v >= static_cast<std::int64_t>(mod.value()))
      throw std::runtime_error("read_matrix: entry " + std::to_string(v) + " is not a canonical residue");
    e = static_cast<std::uint32_t>(v);
  }
  return {mod, rows, cols, std::move(entries)};
}

GFMatrix read_matrix(std::istream& is) {
  std::uint64_t p = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(is >> p >> rows >> cols)) throw std::runtime_error("read_matrix: missing \"p n m\" header");
  if (p >= (1ULL << 31)) throw std::runtime_error("read_matrix: modulus out of range");
  return read_matrix_body(is, FieldModulus(static_cast<std::uint32_t>(p)), rows, cols);
}

std::ostream& operator<<(std::ostream& os, const GFMatrix& m) {
  write_matrix(os, m);
  return os;
}

std::ostream& operator<<(std::ostream& os, const GFVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os << ')';
}

}  // namespace sldiam
