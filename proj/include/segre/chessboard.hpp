#pragma once

// Simplicial complexes of grid subsets with row and column multiplicity
// caps. With all caps equal to one these are the classical chessboard
// complexes of non-attacking rook placements.

#include <vector>

#include "segre/bases.hpp"
#include "segre/linalg.hpp"

namespace segre {

// Face counts by size, starting with the empty face at index 0; trailing
// zero counts are trimmed.
std::vector<long> chessboard_f_vector(const Dims& d, const Exponents& rowcap,
                                      const Exponents& colcap);

// Reduced simplicial homology in one degree; the empty face sits in
// degree -1.
AbelianGroupInvariants chessboard_homology(const Dims& d,
                                           const Exponents& rowcap,
                                           const Exponents& colcap, int degree,
                                           Ring ring);

}  // namespace segre
