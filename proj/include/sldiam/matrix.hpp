#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "sldiam/field.hpp"

namespace sldiam {

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Column vector over F_p.
class GFVector {
 public:
  GFVector(FieldModulus mod, std::size_t n) : mod_(mod), data_(n, 0) {}
  GFVector(FieldModulus mod, const std::vector<std::int64_t>& values);
  static GFVector unit(FieldModulus mod, std::size_t n, std::size_t i);

  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return data_[i]; }
  void set(std::size_t i, std::int64_t v) { data_[i] = mod_.reduce(v); }
  [[nodiscard]] const std::vector<std::uint32_t>& entries() const noexcept { return data_; }
  [[nodiscard]] bool is_zero() const noexcept;

  [[nodiscard]] GFVector scaled(std::uint32_t c) const;
  friend GFVector operator+(const GFVector& a, const GFVector& b);
  friend GFVector operator-(const GFVector& a, const GFVector& b);
  friend bool operator==(const GFVector&, const GFVector&) = default;

 private:
  FieldModulus mod_;
  std::vector<std::uint32_t> data_;
};

/// Dense rows x cols matrix over F_p, row-major. Algebraic operations never
/// modify their operands.
class GFMatrix {
 public:
  GFMatrix(FieldModulus mod, std::size_t rows, std::size_t cols);
  GFMatrix(FieldModulus mod, std::size_t rows, std::size_t cols, std::vector<std::uint32_t> entries);

  static GFMatrix identity(FieldModulus mod, std::size_t n);
  /// Rows given as signed integers, reduced mod p (handy for "-1" entries).
  static GFMatrix from_rows(FieldModulus mod, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static GFMatrix from_columns(std::span<const GFVector> columns);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }
  [[nodiscard]] std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = mod_.reduce(v); }
  [[nodiscard]] const std::vector<std::uint32_t>& entries() const noexcept { return data_; }

  [[nodiscard]] GFVector column(std::size_t c) const;
  [[nodiscard]] GFVector row(std::size_t r) const;
  [[nodiscard]] GFMatrix transpose() const;
  [[nodiscard]] GFMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  [[nodiscard]] GFVector apply(const GFVector& v) const;
  [[nodiscard]] bool is_identity() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;
  /// FNV-1a over the entries; stable across platforms.
  [[nodiscard]] std::uint64_t hash() const noexcept;

  friend GFMatrix operator*(const GFMatrix& a, const GFMatrix& b);
  friend bool operator==(const GFMatrix&, const GFMatrix&) = default;

 private:
  FieldModulus mod_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

struct GFMatrixHash {
  std::size_t operator()(const GFMatrix& m) const noexcept { return static_cast<std::size_t>(m.hash()); }
};

GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b);
/// Throws SingularMatrixError when a is not invertible.
GFMatrix mat_inv(const GFMatrix& a);
GFScalar det(const GFMatrix& a);

struct RrefResult {
  GFMatrix matrix;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank;
};
RrefResult rref(const GFMatrix& a);
std::size_t rank(const GFMatrix& a);
/// Basis of {x : a x = 0}, one vector per free column, in column order.
std::vector<GFVector> kernel(const GFMatrix& a);
/// Rank of a list of equal-length vectors (0 for an empty list).
std::size_t rank_of(std::span<const GFVector> vectors);

/// pi_1 keeps coordinates [0, t), pi_2 keeps [t, n).
GFVector project_pi1(const GFVector& v, std::size_t t);
GFVector project_pi2(const GFVector& v, std::size_t t);

/// Coordinates [t, n) of v as a length n-t vector, and the inverse embedding.
GFVector tail(const GFVector& v, std::size_t t);
GFVector embed_tail(const GFVector& w, std::size_t n);

/// block-diag(I_t, x).
GFMatrix embed_block(const GFMatrix& x, std::size_t t);

/// "p n m" header then n rows of m residues.
void write_matrix(std::ostream& os, const GFMatrix& m);
GFMatrix read_matrix(std::istream& is);
/// Residue rows only, for callers that already know p and the shape.
void write_matrix_body(std::ostream& os, const GFMatrix& m);
GFMatrix read_matrix_body(std::istream& is, FieldModulus mod, std::size_t rows, std::size_t cols);

std::ostream& operator<<(std::ostream& os, const GFMatrix& m);
std::ostream& operator<<(std::ostream& os, const GFVector& v);

}  // namespace sldiam
