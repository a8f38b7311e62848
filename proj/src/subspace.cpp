#include "sldiam/subspace.hpp"

#include <string>

namespace sldiam {

namespace {

void check_lengths(std::span<const GFVector> vectors, std::size_t n, const char* what) {
  for (const auto& v : vectors)
    if (v.size() != n) throw std::invalid_argument(std::string(what) + ": vector length does not match ambient dimension");
}

}  // namespace

Subspace Subspace::zero(FieldModulus mod, std::size_t n) { return Subspace(mod, n); }

Subspace Subspace::whole(FieldModulus mod, std::size_t n) { return coordinate(mod, n, 0, n); }

Subspace Subspace::coordinate(FieldModulus mod, std::size_t n, std::size_t first, std::size_t last) {
  if (first > last || last > n) throw std::invalid_argument("Subspace::coordinate: bad index range");
  Subspace s(mod, n);
  for (std::size_t i = first; i < last; ++i) {
    s.basis_.push_back(GFVector::unit(mod, n, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(FieldModulus mod, std::size_t n, std::span<const GFVector> vectors) {
  check_lengths(vectors, n, "Subspace::span");
  Subspace s(mod, n);
  if (vectors.empty() || n == 0) return s;
  GFMatrix stacked(mod, vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) stacked.set(i, j, vectors[i][j]);
  auto res = rref(stacked);
  for (std::size_t i = 0; i < res.rank; ++i) s.basis_.push_back(res.matrix.row(i));
  s.pivots_ = std::move(res.pivot_cols);
  return s;
}

bool Subspace::contains(const GFVector& v) const {
  if (v.size() != n_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  // Reduce v against the RREF basis; membership iff the remainder vanishes.
  GFVector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto c = r[pivots_[i]];
    if (c != 0) r = r - basis_[i].scaled(c);
  }
  return r.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

Subspace Subspace::image(const GFMatrix& m) const {
  if (m.cols() != n_) throw std::invalid_argument("Subspace::image: dimension mismatch");
  std::vector<GFVector> imgs;
  imgs.reserve(basis_.size());
  for (const auto& b : basis_) imgs.push_back(m.apply(b));
  return span(mod_, m.rows(), imgs);
}

Subspace subspace_span(FieldModulus mod, std::size_t n, std::span<const GFVector> vectors) {
  return Subspace::span(mod, n, vectors);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspace_sum: ambient mismatch");
  std::vector<GFVector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.modulus(), u.ambient_dim(), all);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("subspace_intersect: ambient mismatch");
  const auto mod = u.modulus();
  const auto n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(mod, n);
  // Solve sum a_i u_i - sum b_j v_j = 0; each solution gives sum a_i u_i in u ∩ v.
  std::vector<GFVector> cols = u.basis();
  for (const auto& b : v.basis()) cols.push_back(GFVector(mod, n) - b);
  const auto relations = kernel(GFMatrix::from_columns(cols));
  std::vector<GFVector> common;
  for (const auto& rel : relations) {
    GFVector w(mod, n);
    for (std::size_t i = 0; i < u.dim(); ++i)
      if (rel[i] != 0) w = w + u.basis()[i].scaled(rel[i]);
    common.push_back(std::move(w));
  }
  return Subspace::span(mod, n, common);
}

std::vector<GFVector> complete_to_basis(std::span<const GFVector> vectors, const Subspace& ambient) {
  const auto n = ambient.ambient_dim();
  check_lengths(vectors, n, "complete_to_basis");
  std::vector<GFVector> out(vectors.begin(), vectors.end());
  if (rank_of(out) != out.size()) throw std::invalid_argument("complete_to_basis: input vectors are dependent");
  for (const auto& v : out)
    if (!ambient.contains(v)) throw std::invalid_argument("complete_to_basis: input vector lies outside the ambient subspace");
  auto current = Subspace::span(ambient.modulus(), n, out);
  for (const auto& b : ambient.basis()) {
    if (out.size() == ambient.dim()) break;
    if (current.contains(b)) continue;
    out.push_back(b);
    current = Subspace::span(ambient.modulus(), n, out);
  }
  return out;
}

GFMatrix basis_map(std::span<const GFVector> us, std::span<const GFVector> ws) {
  if (us.size() != ws.size() || us.empty()) throw std::invalid_argument("basis_map: need equally many vectors");
  const auto m = us.size();
  check_lengths(us, m, "basis_map");
  check_lengths(ws, m, "basis_map");
  const auto bu = GFMatrix::from_columns(us);
  const auto bw = GFMatrix::from_columns(ws);
  GFMatrix bu_inv = [&] {
    try {
      return mat_inv(bu);
    } catch (const SingularMatrixError&) {
      throw std::invalid_argument("basis_map: source vectors are dependent");
    }
  }();
  if (rank(bw) != m) throw std::invalid_argument("basis_map: target vectors are dependent");
  return bw * bu_inv;
}

GFMatrix sl_map_frame(std::span<const GFVector> us, std::span<const GFVector> ws, std::size_t m) {
  if (us.size() != ws.size()) throw std::invalid_argument("sl_map_frame: frames differ in size");
  if (m == 0) throw std::invalid_argument("sl_map_frame: m must be positive");
  check_lengths(us, m, "sl_map_frame");
  check_lengths(ws, m, "sl_map_frame");
  const auto k = us.size();
  if (k == 0) throw std::invalid_argument("sl_map_frame: empty frame");
  const auto mod = us[0].modulus();
  if (rank_of(us) != k) throw std::invalid_argument("sl_map_frame: source frame is dependent");
  if (rank_of(ws) != k) throw std::invalid_argument("sl_map_frame: target frame is dependent");
  if (k >= m) throw std::invalid_argument("sl_map_frame: frame must be smaller than the dimension");
  const auto whole = Subspace::whole(mod, m);
  const auto full_u = complete_to_basis(us, whole);
  auto full_w = complete_to_basis(ws, whole);
  auto x = basis_map(full_u, full_w);
  const auto d = det(x);
  if (d.value() != 1) {
    full_w.back() = full_w.back().scaled(d.inverse().value());
    x = basis_map(full_u, full_w);
  }
  return x;
}

GFMatrix sl_map_vector(const GFVector& u, const GFVector& w, std::size_t m) {
  if (u.size() != m || w.size() != m) throw std::invalid_argument("sl_map_vector: vector length must equal m");
  if (u.is_zero() || w.is_zero()) throw std::invalid_argument("sl_map_vector: zero vector");
  if (m == 1) {
    if (u == w) return GFMatrix::identity(u.modulus(), 1);
    throw std::invalid_argument("sl_map_vector: SL_1 is trivial, cannot map u to a different w");
  }
  const GFVector us[] = {u};
  const GFVector ws[] = {w};
  return sl_map_frame(us, ws, m);
}

}  // namespace sldiam
