#include "segre/homology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "segre/chessboard.hpp"
#include "segre/errors.hpp"
#include "segre/strands.hpp"

namespace segre {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SEGREHOM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void parallel_for(int threads, long count,
                  const std::function<void(long)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  int n = (int)std::min<long>(threads, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

bool sorted_desc(const Exponents& v) {
  return std::is_sorted(v.rbegin(), v.rend());
}

// Number of distinct rearrangements of an exponent vector,
// n! / prod(multiplicities!).
long rearrangements(const Exponents& v) {
  long fact = 1;
  for (long i = 2; i <= (long)v.size(); ++i) fact *= i;
  std::map<int, long> mult;
  for (int x : v) ++mult[x];
  for (const auto& [value, count] : mult) {
    (void)value;
    for (long i = 2; i <= count; ++i) fact /= i;
  }
  return fact;
}

struct FamilyMaps {
  TriDegree in, mid, out;
  ModElement (*f)(const Dims&, const Monomial&);
};

FamilyMaps family_maps(Kind kind, int m, int n, int p) {
  if (kind == Kind::N)
    return {{m - 1, n - 1, p + 1}, {m, n, p}, {m + 1, n + 1, p - 1}, apply_K};
  return {{m + 1, n + 1, p - 1}, {m, n, p}, {m - 1, n - 1, p + 1}, apply_D};
}

AbelianGroupInvariants one_family_direct(const Dims& d, Kind kind, int m,
                                         int n, int p, Ring ring) {
  FamilyMaps fm = family_maps(kind, m, n, p);
  SparseExactMatrix d_in = (kind == Kind::N) ? matrix_K(d, fm.in)
                                             : matrix_D(d, fm.in);
  SparseExactMatrix d_out = (kind == Kind::N) ? matrix_K(d, fm.mid)
                                              : matrix_D(d, fm.mid);
  return homology_pair(d_in, d_out, ring);
}

AbelianGroupInvariants one_family_strands(const Dims& d, Kind kind, int m,
                                          int n, int p, Ring ring,
                                          int threads) {
  FamilyMaps fm = family_maps(kind, m, n, p);

  struct Task {
    SparseExactMatrix d_in, d_out;
    long mult;
  };
  std::vector<Task> tasks;
  for (const auto& gamma : exponent_vectors(d.e, m + p)) {
    if (!sorted_desc(gamma)) continue;
    long gm = rearrangements(gamma);
    for (const auto& delta : exponent_vectors(d.g, n + p)) {
      if (!sorted_desc(delta)) continue;
      StrandKey key{gamma, delta};
      auto mid = strand_module_basis(d, fm.mid, key);
      if (mid.empty()) continue;
      auto src = strand_module_basis(d, fm.in, key);
      auto dst = strand_module_basis(d, fm.out, key);
      tasks.push_back({strand_matrix(d, fm.f, src, mid),
                       strand_matrix(d, fm.f, mid, dst),
                       gm * rearrangements(delta)});
    }
  }

  std::vector<AbelianGroupInvariants> results(tasks.size());
  parallel_for(threads, (long)tasks.size(), [&](long i) {
    results[i] = homology_pair(tasks[i].d_in, tasks[i].d_out, ring);
  });

  AbelianGroupInvariants acc;
  std::vector<Int> torsion;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    acc.free_rank += tasks[i].mult * results[i].free_rank;
    for (long c = 0; c < tasks[i].mult; ++c)
      torsion.insert(torsion.end(), results[i].torsion.begin(),
                     results[i].torsion.end());
  }
  acc.torsion = divisibility_chain(torsion);
  return acc;
}

AbelianGroupInvariants one_family_homology(const Dims& d, Kind kind, int m,
                                           int n, int p, Ring ring,
                                           const EngineOptions& opt) {
  ring.check_valid();
  TriDegree mid{m, n, p};
  if (module_zero(d, mid)) return {};
  FamilyMaps fm = family_maps(kind, m, n, p);
  long max_dim = std::max({module_dim(d, fm.in), module_dim(d, fm.mid),
                           module_dim(d, fm.out)});
  Route route = opt.route;
  if (route == Route::Direct && max_dim > opt.strand_threshold)
    throw OutOfRange("homology: module too large for the direct route");
  if (route == Route::Auto)
    route = (max_dim > opt.direct_preferred) ? Route::Strands : Route::Direct;
  if (route == Route::Direct) return one_family_direct(d, kind, m, n, p, ring);
  return one_family_strands(d, kind, m, n, p, ring,
                            resolve_threads(opt.threads));
}

}  // namespace

AbelianGroupInvariants homology_N(const Dims& d, int m, int n, int p,
                                  Ring ring, EngineOptions opt) {
  return one_family_homology(d, Kind::N, m, n, p, ring, opt);
}

AbelianGroupInvariants homology_M(const Dims& d, int m, int n, int p,
                                  Ring ring, EngineOptions opt) {
  return one_family_homology(d, Kind::M, m, n, p, ring, opt);
}

AbelianGroupInvariants tor_group(const Dims& d, int ell, int p, int q,
                                 Ring ring, EngineOptions opt) {
  return homology_N(d, q - p + ell, q - p, p, ring, opt);
}

BettiTable betti_table(const Dims& d, int ell, int qmax, Ring ring,
                       EngineOptions opt) {
  if (!ring.is_field())
    throw HypothesisViolation("betti_table: coefficients must form a field");
  BettiTable table;
  table.ell = ell;
  table.ring = ring.name();
  for (int p = 0; p <= d.grid(); ++p) {
    for (int q = p; q <= qmax; ++q) {
      auto h = tor_group(d, ell, p, q, ring, opt);
      if (h.free_rank != 0) table.entries[{p, q}] = h.free_rank;
    }
  }
  return table;
}

DualityResult check_duality(const Dims& d, int m, int n, int p, Ring ring,
                            EngineOptions opt) {
  if (m - n < 1 - d.e || m - n > d.g - 1)
    throw HypothesisViolation(
        "duality: m - n must lie in [1 - e, g - 1]");
  DualityResult res;
  res.sym_side = homology_N(d, m, n, p, ring, opt);
  res.div_side =
      homology_M(d, d.g - 1 - m, d.e - 1 - n, d.alpha() - p, ring, opt);
  res.match = res.sym_side == res.div_side;
  return res;
}

ComplexReport check_split_exact(const Dims& d, int r, int s,
                                bool negate_first_M) {
  ChainComplex c = build_C(d, r, s, negate_first_M);
  ComplexReport rep = verify_complex(c);
  if (!rep.ok) return rep;
  auto cons = verify_key_conservation(c);
  if (!cons.ok) return cons;
  for (const auto& key : strand_keys(c)) {
    ChainComplex strand = strand_restrict(c, key);
    for (int i = strand.lo(); i <= strand.hi(); ++i) {
      auto h = homology_pair(strand.differential(i + 1),
                             strand.differential(i), Ring::integers());
      if (!h.trivial()) {
        rep.ok = false;
        rep.failures.push_back(c.label + ": homology " + h.str() +
                               " at position " + std::to_string(i));
        if (rep.failures.size() >= 32) return rep;
      }
    }
  }
  return rep;
}

ZetaReport check_zeta(const Dims& d) {
  ZetaReport rep;
  ModElement zeta = build_zeta(d);
  rep.terms = (long)zeta.size();
  rep.is_cycle = apply_D_element(d, zeta).empty();
  rep.top_image = apply_M_top(d, zeta);
  return rep;
}

std::map<std::string, long> characteristic_scan(const Dims& d, int m, int n,
                                                int p,
                                                const std::vector<Ring>& rings,
                                                EngineOptions opt) {
  std::map<std::string, long> out;
  for (const auto& ring : rings)
    out[ring.name()] = homology_N(d, m, n, p, ring, opt).free_rank;
  return out;
}

AbelianGroupInvariants strand_homology(const Dims& d, Kind kind, TriDegree t,
                                       const StrandKey& key, Ring ring) {
  ring.check_valid();
  FamilyMaps fm = family_maps(kind, t.m, t.n, t.p);
  auto mid = strand_module_basis(d, fm.mid, key);
  if (mid.empty()) return {};
  auto src = strand_module_basis(d, fm.in, key);
  auto dst = strand_module_basis(d, fm.out, key);
  return homology_pair(strand_matrix(d, fm.f, src, mid),
                       strand_matrix(d, fm.f, mid, dst), ring);
}

StrandPairResult check_strand_duality(const Dims& d, TriDegree t,
                                      const StrandKey& div_key,
                                      const StrandKey& sym_key) {
  if (t.m - t.n < 1 - d.e || t.m - t.n > d.g - 1)
    throw HypothesisViolation(
        "strand duality: m - n must lie in [1 - e, g - 1]");
  if ((int)div_key.first.size() != d.e || (int)sym_key.first.size() != d.e ||
      (int)div_key.second.size() != d.g || (int)sym_key.second.size() != d.g)
    throw HypothesisViolation("strand duality: key lengths must be e and g");
  for (int i = 0; i < d.e; ++i)
    if (div_key.first[i] + sym_key.first[i] != d.g - 1)
      throw HypothesisViolation(
          "strand duality: row contents must sum to g - 1");
  for (int j = 0; j < d.g; ++j)
    if (div_key.second[j] + sym_key.second[j] != d.e - 1)
      throw HypothesisViolation(
          "strand duality: column contents must sum to e - 1");
  StrandPairResult res;
  TriDegree tp{d.g - 1 - t.m, d.e - 1 - t.n, d.alpha() - t.p};
  res.div_side = strand_homology(d, Kind::M, t, div_key, Ring::integers());
  res.sym_side = strand_homology(d, Kind::N, tp, sym_key, Ring::integers());
  res.match = res.div_side == res.sym_side;
  return res;
}

ComplexReport check_e3_homology_symmetry(const Dims& d, int P, int Q,
                                         EngineOptions opt) {
  if (d.e != 3)
    throw HypothesisViolation("homology symmetry: stated for e = 3");
  if (P < Q - 2 || P > 2 * Q - 1)
    throw HypothesisViolation(
        "homology symmetry: needs Q - 2 <= P <= 2Q - 1");
  ComplexReport rep;
  for (int j = 0; j <= std::min({P, Q, d.grid()}); ++j) {
    int m = P - j, n = Q - j, p = j;
    auto lhs = homology_M(d, m, n, p, Ring::integers(), opt);
    auto rhs =
        homology_N(d, Q - 1 - m, 2 - n, 2 * Q - 2 - p, Ring::integers(), opt);
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.failures.push_back("P=" + std::to_string(P) + " Q=" +
                             std::to_string(Q) + " p=" + std::to_string(p) +
                             ": " + lhs.str() + " vs " + rhs.str());
    }
  }
  return rep;
}

ComplexReport check_e3_betti_symmetry(const Dims& d, int ell, int q, Ring ring,
                                      EngineOptions opt) {
  if (d.e != 3)
    throw HypothesisViolation("betti symmetry: stated for e = 3");
  if (ell < -2 || ell > q - 1)
    throw HypothesisViolation("betti symmetry: needs -2 <= ell <= q - 1");
  if (!ring.is_field())
    throw HypothesisViolation("betti symmetry: coefficients must be a field");
  ComplexReport rep;
  int ellp = q - 3 - ell;
  for (int p = 0; p <= d.grid(); ++p) {
    long lhs = tor_group(d, ell, p, q, ring, opt).free_rank;
    long rhs = tor_group(d, ellp, 2 * q - 2 - p, q, ring, opt).free_rank;
    if (lhs != rhs) {
      rep.ok = false;
      rep.failures.push_back("ell=" + std::to_string(ell) + " q=" +
                             std::to_string(q) + " p=" + std::to_string(p) +
                             ": " + std::to_string(lhs) + " vs " +
                             std::to_string(rhs));
    }
  }
  return rep;
}

bool check_transpose_betti(const Dims& d, int ell, int p, int q, Ring ring,
                           EngineOptions opt) {
  if (d.e != d.g)
    throw HypothesisViolation("transpose symmetry: stated for e = g");
  return tor_group(d, ell, p, q, ring, opt) ==
         tor_group(d, -ell, p, q + ell, ring, opt);
}

BridgeResult check_chessboard_bridge(const Dims& d, const Exponents& rowcap,
                                     const Exponents& colcap, int ell, int p) {
  long rsum = 0, csum = 0;
  for (int v : rowcap) rsum += v;
  for (int v : colcap) csum += v;
  int m = (int)rsum - p, n = (int)csum - p;
  if (ell != m - n)
    throw DegreeMismatch(
        "bridge: ell must equal sum(rowcap) - sum(colcap)");
  BridgeResult res;
  res.tor_side = strand_homology(d, Kind::N, {m, n, p}, {rowcap, colcap},
                                 Ring::integers());
  res.complex_side =
      chessboard_homology(d, rowcap, colcap, p - 1, Ring::integers());
  res.match = res.tor_side == res.complex_side;
  return res;
}

}  // namespace segre
