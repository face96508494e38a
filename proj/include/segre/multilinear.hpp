#pragma once

// Elementary exact operations: divided-power contraction, symmetric
// multiplication, wedge and interior products, top-form evaluation, the
// bowtie expansions pairing a divided power against an exterior factor, the
// splice products tau, the truncation projections, and the module pairing.
//
// Convention: a wedge of basis vectors acts on an exterior monomial by
// iterated interior products with the last factor acting first, and the
// interior product of the t-th factor of a monomial carries sign (-1)^(t+1).
// Consequently a full declared-order set evaluates against the top form to
// (-1)^(N(N-1)/2), N = e*g; evaluate_top normalizes this to +1.

#include <map>
#include <utility>
#include <vector>

#include "segre/bases.hpp"

namespace segre {

// Z-linear combination of exterior monomials.
using ExtElement = std::map<PairSet, Int>;

// Z-linear combination of module monomials of a fixed kind and tridegree.
using ModElement = std::map<Monomial, Int>;

void add_term(ExtElement& e, const PairSet& z, const Int& c);
void add_term(ModElement& e, const Monomial& m, const Int& c);

// Merges two strictly increasing sets; returns the permutation sign, or 0
// if they intersect.
int wedge_merge(const PairSet& a, const PairSet& b, PairSet& out);

ExtElement wedge(const ExtElement& a, const ExtElement& b);

// Interior product of a single dual basis vector: removes the code if
// present, with sign (-1)^(t+1) at 1-based position t.
ExtElement interior(int code, const ExtElement& z);

// Iterated interior of the whole set a against z, last factor first.
// Zero unless a is a subset of z.
ExtElement interior_set(const PairSet& a, const ExtElement& z);

// Evaluation of a k-set against the top form: the signed complement.
// sign 0 never occurs; the full set gives (+1, empty).
std::pair<int, PairSet> evaluate_top(const Dims& d, const PairSet& z);

ExtElement evaluate_top(const Dims& d, const ExtElement& z);

// Pairing of equal-size sets under the iterated-interior convention:
// (-1)^(p(p-1)/2) when the sets match, 0 otherwise.
Int set_pairing(const PairSet& a, const PairSet& z);

// Full module pairing of a symmetric-side monomial against a divided-power
// monomial of the same tridegree: exponents pair coefficient-freely.
Int pairing(const Dims& d, const Monomial& sym_side, const Monomial& div_side);

// Divided-power contraction by the k-th dual vector (1-based), coefficient
// free: just lowers the exponent. Returns false when the exponent is zero.
bool contract_divided(int k, Exponents& a);

// Symmetric multiplication by the k-th vector (1-based).
void sym_multiply(int k, Exponents& b);

// Expansion of a divided power of E-vectors against a wedge of G-side basis
// vectors (given as an increasing column list): the sum over all words of
// the exponent content, each word wedged slotwise with the columns.
// Degrees must match.
ExtElement bowtie_DE(const Dims& d, const Exponents& u, const std::vector<int>& cols);

// Mirror expansion: an increasing row list against a divided power on the
// G-side.
ExtElement bowtie_ED(const Dims& d, const std::vector<int>& rows, const Exponents& y);

// Splice of two G-side exponent vectors at slot j (1-based): keeps the
// first argument below j and the second above j, adds their slot-j
// exponents plus one. Zero unless the first argument vanishes above j and
// the second vanishes below j. Returns false for the zero result.
bool tau(int j, const Exponents& above, const Exponents& below, Exponents& out);

// Truncation projections on G-side exponent vectors.
// proj_L(j, b): identity if b vanishes at slots 1..j, zero otherwise; legal
// j in [0, g]. proj_Upsilon(j, b): identity if b vanishes at slots j..g,
// zero otherwise; legal j in [1, g+1].
bool proj_L(const Dims& d, int j, const Exponents& b);
bool proj_Upsilon(const Dims& d, int j, const Exponents& b);

// Column intervals as increasing lists: y_minus(j) = {1..j} for j in [0,g],
// y_plus(j) = {j..g} for j in [1, g+1].
std::vector<int> y_minus(const Dims& d, int j);
std::vector<int> y_plus(const Dims& d, int j);

// The two differentials on single monomials.
// apply_D: contract one exponent on each leg and wedge the matching grid
// vector on the left (divided-power family, exterior degree rises).
// apply_K: raise one exponent on each leg and take the interior product by
// the matching grid vector (symmetric family, exterior degree falls).
ModElement apply_D(const Dims& d, const Monomial& t);
ModElement apply_K(const Dims& d, const Monomial& s);

ModElement apply_linear(ModElement (*f)(const Dims&, const Monomial&),
                        const Dims& d, const ModElement& x);

}  // namespace segre
