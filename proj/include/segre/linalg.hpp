#pragma once

// Exact sparse linear algebra over Z, Q and prime fields: Smith normal form,
// ranks, and invariants of ker/im for a composable pair of differentials.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "segre/errors.hpp"

namespace segre {

using Int = mpz_class;

// Coefficient ring selector. All matrices in this library are constructed
// with integer entries; the tag decides how they are interpreted (over GF(p)
// entries are kept canonical in [0, p)).
struct Ring {
  enum Kind { Z, Q, GF };
  Kind kind = Z;
  std::uint64_t p = 0;  // modulus, GF only

  static Ring integers() { return {Z, 0}; }
  static Ring rationals() { return {Q, 0}; }
  static Ring gf(std::uint64_t p) { return {GF, p}; }

  bool is_field() const { return kind != Z; }
  bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const Ring& o) const { return !(*this == o); }
  std::string name() const;

  // Throws NotPrime if kind == GF and p is not prime.
  void check_valid() const;
};

// Parses "z", "q", "gf<p>" (also accepts "int", "rational", "gf:<p>").
Ring parse_ring(const std::string& text);

// Isomorphism class of a finitely generated abelian group:
// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, every di >= 2.
// Over a field the torsion list is empty and free_rank is a dimension.
struct AbelianGroupInvariants {
  long free_rank = 0;
  std::vector<Int> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const AbelianGroupInvariants& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const AbelianGroupInvariants& o) const { return !(*this == o); }
  std::string str() const;
};

// Sparse matrix in column-major form; per column a row-sorted list of
// nonzero entries. Rows and columns may be zero (legal degenerate shapes).
class SparseExactMatrix {
 public:
  using Column = std::vector<std::pair<long, Int>>;

  SparseExactMatrix() = default;
  SparseExactMatrix(long rows, long cols, Ring ring = Ring::integers());

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  long nnz() const;
  bool is_zero() const { return nnz() == 0; }

  // Adds v to entry (r, c), dropping the entry if the sum is zero.
  void add(long r, long c, const Int& v);
  void set(long r, long c, const Int& v);
  Int get(long r, long c) const;

  // Installs a whole column at once from an accumulator map.
  void set_column(long c, const std::map<long, Int>& entries);
  const Column& column(long c) const { return cols_data_[c]; }

  SparseExactMatrix transpose() const;

  // Matrix product this * rhs over the common ring.
  SparseExactMatrix multiply(const SparseExactMatrix& rhs) const;

  // Same entries under a different ring tag (entries canonicalized mod p
  // when the target is a prime field).
  SparseExactMatrix with_ring(Ring ring) const;

  void negate_in_place();

  bool operator==(const SparseExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && cols_data_ == o.cols_data_;
  }

 private:
  long rows_ = 0;
  long cols_ = 0;
  Ring ring_ = Ring::integers();
  std::vector<Column> cols_data_;

  Int canon(const Int& v) const;
};

struct SmithResult {
  std::vector<Int> factors;  // nonzero invariant factors, d1 | d2 | ...
  long rank = 0;             // equals factors.size()
};

// Smith normal form over Z. Pivots are chosen with smallest absolute value,
// ties broken by least fill-in.
SmithResult smith_normal_form(const SparseExactMatrix& a);

// Rank over Q (for Z- or Q-tagged matrices) or over GF(p).
long rank_over_field(const SparseExactMatrix& a, Ring field);

// Invariants of ker(d_out) / im(d_in) where d_in : C_{i+1} -> C_i and
// d_out : C_i -> C_{i-1}. Throws CompositionNotZero unless d_out * d_in = 0.
// Since ker(d_out) is a direct summand of the ambient lattice, the torsion
// equals the nonunit invariant factors of d_in taken in ambient coordinates,
// and the free rank follows from the two ranks.
AbelianGroupInvariants homology_pair(const SparseExactMatrix& d_in,
                                     const SparseExactMatrix& d_out,
                                     Ring ring);

// Ring taken from the tag on d_in.
AbelianGroupInvariants homology_pair(const SparseExactMatrix& d_in,
                                     const SparseExactMatrix& d_out);

// Combines invariants of a direct sum: free ranks add, torsion multisets
// merge into a single divisibility chain (pairwise gcd/lcm exchanges).
AbelianGroupInvariants direct_sum(const AbelianGroupInvariants& a,
                                  const AbelianGroupInvariants& b);

// Normalizes a list of nonzero diagonal entries into a divisibility chain.
std::vector<Int> divisibility_chain(std::vector<Int> factors);

}  // namespace segre
