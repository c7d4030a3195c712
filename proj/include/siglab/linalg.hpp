#pragma once

#include "siglab/types.hpp"

namespace siglab {

/// Determinant by fraction-free (Bareiss) elimination; exact.
Rat bareiss_determinant(MatR M);

/// Exact inverse by Gauss-Jordan elimination; throws InvariantError if singular.
MatR exact_inverse(MatR M);

/// Exact rank by row elimination.
int exact_rank(MatR M);

}  // namespace siglab
