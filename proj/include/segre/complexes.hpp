#pragma once

// Chain complexes built from the two module families: the one-family
// complexes (symmetric side and divided-power side), the two-parameter
// spliced complexes that glue a divided-power tail to a symmetric head
// through the coordinate-dependent duality maps, and the comparison map
// between neighboring spliced complexes.

#include <map>
#include <string>
#include <vector>

#include "segre/multilinear.hpp"

namespace segre {

// A direct summand of one chain position. Grid means a bare exterior power
// of the e*g grid module, with tri = {0, 0, p}.
enum class Family { Div, Sym, Grid };

struct Slot {
  Family family;
  TriDegree tri;
  long dim = 0;
};

// Bidegree label attached to each basis vector of a position; differentials
// preserve it, so complexes split into strands indexed by these labels.
using StrandKey = std::pair<Exponents, Exponents>;

struct ChainComplex {
  Dims dims;
  std::string label;
  std::map<int, std::vector<Slot>> slots;      // nonzero positions only
  std::map<int, SparseExactMatrix> diffs;      // diffs[i] : position i -> i-1
  std::map<int, std::vector<StrandKey>> keys;  // per basis vector

  bool has_position(int i) const { return slots.count(i) != 0; }
  long dim_at(int i) const;
  int lo() const;
  int hi() const;
  long total_dim() const;

  // Stored differential, or a zero matrix of the right shape.
  SparseExactMatrix differential(int i) const;
};

struct ComplexReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Checks d * d = 0 at every position.
ComplexReport verify_complex(const ChainComplex& c);

struct ChainMap {
  std::string label;
  ChainComplex source;
  ChainComplex target;
  std::map<int, SparseExactMatrix> maps;  // maps[i] : source_i -> target_i
  int resolved_sign = 1;                  // sign chosen for contraction blocks

  SparseExactMatrix map_at(int i) const;
};

// Checks target.d * f = f * source.d at every position.
ComplexReport verify_chain_map(const ChainMap& f);

// Matrices of the structure maps in the deterministic monomial bases.
// The divided-power differential (raises exterior degree).
SparseExactMatrix matrix_D(const Dims& d, TriDegree t);
// The symmetric differential (lowers exterior degree).
SparseExactMatrix matrix_K(const Dims& d, TriDegree t);
// The coordinate-dependent duality map into the complementary symmetric
// module; rows carry the dual-basis normalization.
SparseExactMatrix matrix_M(const Dims& d, TriDegree t);
// Companion map used by the comparison map between spliced complexes.
SparseExactMatrix matrix_N_map(const Dims& d, TriDegree t);
// Contraction by the last G-basis vector on the divided-power side.
SparseExactMatrix matrix_x_contract(const Dims& d, TriDegree t);
// Multiplication by the last G-basis vector on the symmetric side.
SparseExactMatrix matrix_x_multiply(const Dims& d, TriDegree t);

// The two shapes of the corner maps through a bare exterior power:
// ZeroE has divided-power source/test module of shape (0, e, *), GZero of
// shape (g, 0, *).
enum class GammaVariant { ZeroE, GZero };
SparseExactMatrix matrix_gamma(const Dims& d, GammaVariant v, int p);
SparseExactMatrix matrix_Gamma(const Dims& d, GammaVariant v, int p);
// Corner block of the comparison map at its lowest parameter.
SparseExactMatrix matrix_nu(const Dims& d, int s);

// Functional evaluations behind the matrices (also used directly when the
// modules are too large to materialize).
Int eval_M(const Dims& d, int m, const Monomial& t, const Monomial& tp);
Int eval_N(const Dims& d, int m, const Monomial& t, const Monomial& tp);

// One-family complexes. The symmetric complex puts (P, Q, 0) at position 0;
// the divided-power complex puts (P, Q, 0) at position P+Q+1.
ChainComplex build_N_complex(const Dims& d, int P, int Q);
ChainComplex build_M_complex(const Dims& d, int P, int Q);

// The spliced complex; legal for 0 <= r <= e+g. negate_first_M flips the
// sign of the duality block at its lowest position (negative control).
ChainComplex build_C(const Dims& d, int r, int s, bool negate_first_M = false);

// Comparison map between spliced complexes, legal for 1 <= r <= e+g-1.
// For r = 1 the sign of the contraction blocks is resolved by search and
// recorded in resolved_sign.
ChainMap build_psi(const Dims& d, int r, int s);

// The distinguished cycle in the divided-power module of tridegree
// (g-1, e-1, alpha).
ModElement build_zeta(const Dims& d);

// Image of an element of that module under the top duality map, an element
// of the base ring.
Int apply_M_top(const Dims& d, const ModElement& x);

// The differential applied elementwise (no matrices; usable at any size).
ModElement apply_D_element(const Dims& d, const ModElement& x);

}  // namespace segre
