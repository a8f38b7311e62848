#pragma once

#include <cstddef>
#include <vector>

#include "sldiam/matrix.hpp"

namespace sldiam {

/// m = b1 · w · b2 with b1, b2 lower triangular and w monomial.
struct BruhatTriple {
  GFMatrix b1;
  GFMatrix w;
  GFMatrix b2;
};

bool is_lower_triangular(const GFMatrix& m);
bool is_monomial(const GFMatrix& m);

/// Row index of the nonzero entry in each column of a monomial matrix.
std::vector<std::size_t> monomial_permutation(const GFMatrix& w);

/// Eliminates columns right to left. In each column the pivot is the
/// lowest-index row not yet claimed; entries below it are cleared by adding
/// the pivot row downwards, entries to its left by adding the pivot column
/// leftwards. Both kinds of operation are lower triangular, so what remains is
/// the monomial core. Throws SingularMatrixError for singular input.
BruhatTriple bruhat_decompose(const GFMatrix& m);

}  // namespace sldiam
