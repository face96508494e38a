#pragma once

// Monomial bases of the two families of trigraded modules built from a pair
// of free modules of ranks e and g: a divided-power side and a symmetric
// side, each tensored with an exterior power of the e*g grid module.

#include <compare>
#include <cstddef>
#include <vector>

#include "segre/errors.hpp"
#include "segre/linalg.hpp"

namespace segre {

struct Dims {
  int e = 1;
  int g = 1;

  int alpha() const { return (e - 1) * (g - 1); }
  int grid() const { return e * g; }
  bool operator==(const Dims&) const = default;
};

// Exponent vector of a divided-power or symmetric monomial.
using Exponents = std::vector<int>;

// Strictly increasing list of grid positions. Position (row k, col l) with
// 1 <= k <= e, 1 <= l <= g is coded row-major as (k-1)*g + (l-1), so the
// declared basis order (1,1) < (1,2) < ... < (e,g) is the code order.
using PairSet = std::vector<int>;

inline int pair_code(const Dims& d, int k, int l) { return (k - 1) * d.g + (l - 1); }
inline int code_row(const Dims& d, int code) { return code / d.g + 1; }
inline int code_col(const Dims& d, int code) { return code % d.g + 1; }

// Which of the two module families a monomial belongs to.
// M: divided powers on both tensor legs, exterior factor in the grid module.
// N: symmetric powers on both legs, exterior factor in the dual grid module.
enum class Kind { M, N };

struct TriDegree {
  int m = 0;
  int n = 0;
  int p = 0;
  auto operator<=>(const TriDegree&) const = default;
};

struct Monomial {
  Exponents a;  // E-side exponents, length e
  Exponents b;  // G-side exponents, length g
  PairSet z;    // exterior factor
  auto operator<=>(const Monomial&) const = default;
};

long binomial(long n, long k);

// Number of monomials; zero when m or n is negative or p is outside [0, e*g].
long module_dim(const Dims& d, TriDegree t);
inline bool module_zero(const Dims& d, TriDegree t) { return module_dim(d, t) == 0; }

// All exponent vectors of the given length and total degree, lexicographic
// with the largest first coordinate first.
const std::vector<Exponents>& exponent_vectors(int len, int deg);

// All strictly increasing p-subsets of {0, ..., n-1} in lexicographic order.
const std::vector<PairSet>& subsets(int n, int p);

// Deterministic ordered basis: a outer, then b, then z, each in the order
// above. Cached per (d, kind, tri); the reference stays valid.
const std::vector<Monomial>& module_basis(const Dims& d, Kind k, TriDegree t);

// Position of a monomial in module_basis; the monomial must belong to it.
long basis_index(const Dims& d, Kind k, TriDegree t, const Monomial& mono);

// Natural bidegree of a monomial: exponents plus row/column multiplicities
// of its exterior factor. Differentials of a fixed family preserve it.
std::pair<Exponents, Exponents> natural_content(const Dims& d, const Monomial& mono);

// Row and column multiplicities of a bare grid subset.
std::pair<Exponents, Exponents> set_content(const Dims& d, const PairSet& z);

}  // namespace segre
