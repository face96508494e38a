#pragma once

// Strand decomposition. Every differential assembled in this project
// couples basis vectors carrying equal bidegree keys, so each complex is
// the direct sum of its strands and homology can be computed one strand at
// a time.

#include <vector>

#include "segre/complexes.hpp"

namespace segre {

// Restriction of a complex to the basis vectors carrying one key. Position
// indices are kept; bases become the selected subsets in their original
// order.
ChainComplex strand_restrict(const ChainComplex& c, const StrandKey& key);

// Distinct keys appearing anywhere in the complex, sorted.
std::vector<StrandKey> strand_keys(const ChainComplex& c);

// Verifies that every differential entry couples basis vectors with equal
// keys.
ComplexReport verify_key_conservation(const ChainComplex& c);

// Basis of one strand of a module, enumerated without materializing the
// module: a grid subset z with rows(z) <= key.first and cols(z) <= key.second
// componentwise determines the unique strand monomial with exterior part z.
// Empty unless the key sums match (m + p, n + p).
std::vector<Monomial> strand_module_basis(const Dims& d, TriDegree t,
                                          const StrandKey& key);

// Matrix of an elementwise map between two explicit bases. Image monomials
// must land in dst; anything outside it is an error.
SparseExactMatrix strand_matrix(const Dims& d,
                                ModElement (*f)(const Dims&, const Monomial&),
                                const std::vector<Monomial>& src,
                                const std::vector<Monomial>& dst);

}  // namespace segre
