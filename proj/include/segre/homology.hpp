#pragma once

// Homology of the one-family complexes (graded Betti numbers and Tor), the
// duality between the two families, and whole-complex exactness checks.

#include <map>
#include <string>
#include <vector>

#include "segre/complexes.hpp"

namespace segre {

// How homology at one position gets computed. Auto picks the direct route
// for small modules and the strand route otherwise; Direct refuses modules
// above strand_threshold.
enum class Route { Auto, Direct, Strands };

struct EngineOptions {
  Route route = Route::Auto;
  long strand_threshold = 200000;
  long direct_preferred = 20000;
  int threads = 0;  // 0 reads SEGREHOM_THREADS, missing means 1
};

// Homology of the symmetric-side complex at the module (m, n, p).
AbelianGroupInvariants homology_N(const Dims& d, int m, int n, int p,
                                  Ring ring, EngineOptions opt = {});

// Homology of the divided-power-side complex at the module (m, n, p).
AbelianGroupInvariants homology_M(const Dims& d, int m, int n, int p,
                                  Ring ring, EngineOptions opt = {});

// Tor_{p,q} of the cokernel module with parameter ell, equal to the
// symmetric-side homology at (q - p + ell, q - p, p).
AbelianGroupInvariants tor_group(const Dims& d, int ell, int p, int q,
                                 Ring ring, EngineOptions opt = {});

// Graded Betti numbers over a field, indexed by (p, q); zero entries are
// omitted. Throws HypothesisViolation when ring is not a field.
struct BettiTable {
  int ell = 0;
  std::string ring;
  std::map<std::pair<int, int>, long> entries;
};

BettiTable betti_table(const Dims& d, int ell, int qmax, Ring ring,
                       EngineOptions opt = {});

// The duality between the two families: homology_N at (m, n, p) against
// homology_M at the complementary degrees. Only stated inside the band
// 1 - e <= m - n <= g - 1; outside it throws HypothesisViolation.
struct DualityResult {
  AbelianGroupInvariants sym_side;
  AbelianGroupInvariants div_side;
  bool match = false;
};

DualityResult check_duality(const Dims& d, int m, int n, int p, Ring ring,
                            EngineOptions opt = {});

// Integral homology of the spliced complex at every position, strand by
// strand; any nonvanishing position is a failure. negate_first_M flips one
// duality block first (the negative control; the check should then fail).
ComplexReport check_split_exact(const Dims& d, int r, int s,
                                bool negate_first_M = false);

// The distinguished cycle: whether its differential vanishes and what the
// top duality map sends it to (a unit when everything is in order).
struct ZetaReport {
  bool is_cycle = false;
  Int top_image = 0;
  long terms = 0;
};

ZetaReport check_zeta(const Dims& d);

// Dimension of homology_N(m, n, p) over each of the given coefficient
// fields, keyed by ring name. Entries for Z report the free rank.
std::map<std::string, long> characteristic_scan(const Dims& d, int m, int n,
                                                int p,
                                                const std::vector<Ring>& rings,
                                                EngineOptions opt = {});

// Homology of a single strand of a one-family complex.
AbelianGroupInvariants strand_homology(const Dims& d, Kind kind, TriDegree t,
                                       const StrandKey& key, Ring ring);

// Strandwise refinement of the duality: the divided-power strand of
// (m, n, p) with key (a, c) matches the symmetric strand at the
// complementary degrees with key (b, d) whenever a_i + b_i = g - 1 and
// c_j + d_j = e - 1. Both preconditions and the band restriction on m - n
// are enforced with HypothesisViolation.
struct StrandPairResult {
  AbelianGroupInvariants div_side;
  AbelianGroupInvariants sym_side;
  bool match = false;
};

StrandPairResult check_strand_duality(const Dims& d, TriDegree t,
                                      const StrandKey& div_key,
                                      const StrandKey& sym_key);

// For e = 3 and Q - 2 <= P <= 2Q - 1: at every slot (m, n, p) of the
// divided-power complex with m + p = P and n + p = Q, the integral homology
// matches the symmetric side at m' = Q - 1 - m, n' = 2 - n, p' = 2Q - 2 - p.
ComplexReport check_e3_homology_symmetry(const Dims& d, int P, int Q,
                                         EngineOptions opt = {});

// For e = 3 over a field and -2 <= ell <= q - 1: Betti numbers in column q
// pair up between parameters ell and q - 3 - ell at complementary p.
ComplexReport check_e3_betti_symmetry(const Dims& d, int ell, int q, Ring ring,
                                      EngineOptions opt = {});

// For e = g: transposing the generic matrix identifies Tor_{p,q} at
// parameter ell with Tor_{p,q+ell} at parameter -ell.
bool check_transpose_betti(const Dims& d, int ell, int p, int q, Ring ring,
                           EngineOptions opt = {});

// The (rowcap, colcap) strand of the symmetric-side homology in
// homological degree p against the reduced homology of the capped grid
// complex in degree p - 1, both over Z. The parameter ell is redundant
// bookkeeping and must equal sum(rowcap) - sum(colcap).
struct BridgeResult {
  AbelianGroupInvariants tor_side;
  AbelianGroupInvariants complex_side;
  bool match = false;
};

BridgeResult check_chessboard_bridge(const Dims& d, const Exponents& rowcap,
                                     const Exponents& colcap, int ell, int p);

}  // namespace segre
