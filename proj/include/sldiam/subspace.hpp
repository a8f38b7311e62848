#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sldiam/matrix.hpp"

namespace sldiam {

/// A subspace of F_p^n stored by its reduced row echelon basis, so two
/// subspaces are equal exactly when their bases compare equal.
class Subspace {
 public:
  static Subspace zero(FieldModulus mod, std::size_t n);
  static Subspace whole(FieldModulus mod, std::size_t n);
  /// <e_first, ..., e_{last-1}> (0-based, half open).
  static Subspace coordinate(FieldModulus mod, std::size_t n, std::size_t first, std::size_t last);
  static Subspace span(FieldModulus mod, std::size_t n, std::span<const GFVector> vectors);

  [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return n_; }
  [[nodiscard]] FieldModulus modulus() const noexcept { return mod_; }
  [[nodiscard]] const std::vector<GFVector>& basis() const noexcept { return basis_; }
  [[nodiscard]] const std::vector<std::size_t>& pivot_cols() const noexcept { return pivots_; }

  [[nodiscard]] bool contains(const GFVector& v) const;
  [[nodiscard]] bool contains(const Subspace& other) const;
  /// { m v : v in this }.
  [[nodiscard]] Subspace image(const GFMatrix& m) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  Subspace(FieldModulus mod, std::size_t n) : mod_(mod), n_(n) {}

  FieldModulus mod_;
  std::size_t n_;
  std::vector<GFVector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_span(FieldModulus mod, std::size_t n, std::span<const GFVector> vectors);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);

/// Extends independent `vectors` inside `ambient` to a basis of `ambient`,
/// adding ambient's canonical basis vectors greedily in order. The input comes
/// first in the result.
std::vector<GFVector> complete_to_basis(std::span<const GFVector> vectors, const Subspace& ambient);

/// X in SL_m(F_p) with X u = w. Built by extending u and w to bases and scaling
/// the last image so det X = 1.
GFMatrix sl_map_vector(const GFVector& u, const GFVector& w, std::size_t m);

/// X in SL_m(F_p) with X us[j] = ws[j] for all j; requires us.size() < m so a
/// complement direction can absorb the determinant. Frames must be non-empty.
GFMatrix sl_map_frame(std::span<const GFVector> us, std::span<const GFVector> ws, std::size_t m);

/// The unique linear map sending the basis us onto ws (both of size m); no
/// determinant patch.
GFMatrix basis_map(std::span<const GFVector> us, std::span<const GFVector> ws);

}  // namespace sldiam
