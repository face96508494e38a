#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "segre/bases.hpp"
#include "segre/linalg.hpp"

using namespace segre;

namespace {

SparseExactMatrix dense(long rows, long cols, const std::vector<std::vector<int>>& entries,
                        Ring ring = Ring::integers()) {
  SparseExactMatrix a(rows, cols, ring);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      if (entries[r][c] != 0) a.set(r, c, entries[r][c]);
  return a;
}

Int det_dense(std::vector<std::vector<Int>> m) {
  size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int out = 0;
  int sgn = 1;
  for (size_t r = 0; r < n; ++r) {
    if (m[r][0] != 0) {
      std::vector<std::vector<Int>> minor;
      for (size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        minor.push_back(std::vector<Int>(m[i].begin() + 1, m[i].end()));
      }
      out += sgn * m[r][0] * det_dense(minor);
    }
    sgn = -sgn;
  }
  return out;
}

// Independent invariant-factor oracle: the gcd of the k by k minors is the
// product of the first k invariant factors.
std::vector<Int> minor_gcd_factors(const SparseExactMatrix& a) {
  long rows = a.rows(), cols = a.cols();
  std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols, 0));
  for (long c = 0; c < cols; ++c)
    for (const auto& [r, v] : a.column(c)) m[r][c] = v;

  std::vector<Int> gcds;
  for (long k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    for (const PairSet& rs : subsets(static_cast<int>(rows), static_cast<int>(k)))
      for (const PairSet& cs : subsets(static_cast<int>(cols), static_cast<int>(k))) {
        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
        for (long i = 0; i < k; ++i)
          for (long j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
        g = gcd(g, det_dense(sub));
        }
    if (g == 0) break;
    gcds.push_back(abs(g));
  }

  std::vector<Int> factors;
  Int prev = 1;
  for (const Int& g : gcds) {
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

}  // namespace

TEST_CASE("smith normal form on fixed matrices") {
  CHECK(smith_normal_form(dense(2, 2, {{2, 4}, {6, 8}})).factors ==
        std::vector<Int>{2, 4});

  SparseExactMatrix diag(3, 3);
  diag.set(0, 0, 6);
  diag.set(1, 1, 10);
  diag.set(2, 2, 15);
  auto s = smith_normal_form(diag);
  REQUIRE(s.factors.size() == 3);
  CHECK(s.factors[0] == 1);
  CHECK(s.factors[1] == 30);
  CHECK(s.factors[2] == 30);

  CHECK(smith_normal_form(SparseExactMatrix(3, 4)).rank == 0);
  CHECK(smith_normal_form(dense(2, 2, {{1, 0}, {0, 1}})).factors ==
        std::vector<Int>{1, 1});
  CHECK(smith_normal_form(dense(1, 1, {{-7}})).factors == std::vector<Int>{7});
}

TEST_CASE("smith normal form matches the minor gcd oracle") {
  std::mt19937 rng(20240615);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> rdim(1, 4), cdim(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    long rows = rdim(rng), cols = cdim(rng);
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (auto& row : m)
      for (int& v : row) v = entry(rng);
    SparseExactMatrix a = dense(rows, cols, m);

    auto s = smith_normal_form(a);
    auto oracle = minor_gcd_factors(a);
    INFO("trial " << trial << " " << rows << "x" << cols);
    CHECK(s.factors == oracle);
    CHECK(s.rank == static_cast<long>(oracle.size()));
    for (size_t i = 0; i + 1 < s.factors.size(); ++i)
      CHECK(s.factors[i + 1] % s.factors[i] == 0);
    CHECK(s.rank == rank_over_field(a, Ring::rationals()));
  }
}

TEST_CASE("rank over prime fields differs from the rational rank") {
  SparseExactMatrix a = dense(2, 2, {{1, 1}, {1, -1}});
  CHECK(rank_over_field(a, Ring::rationals()) == 2);
  CHECK(rank_over_field(a, Ring::gf(2)) == 1);

  SparseExactMatrix b = dense(2, 2, {{3, 1}, {0, 3}});
  CHECK(rank_over_field(b, Ring::rationals()) == 2);
  CHECK(rank_over_field(b, Ring::gf(3)) == 1);
}

TEST_CASE("homology of a two step lattice quotient") {
  SparseExactMatrix d_in = dense(2, 1, {{2}, {0}});
  SparseExactMatrix d_out(0, 2);
  auto h = homology_pair(d_in, d_out, Ring::integers());
  CHECK(h.free_rank == 1);
  CHECK(h.torsion == std::vector<Int>{2});
  CHECK(h.str() == "Z + Z/2");

  CHECK(homology_pair(d_in, d_out, Ring::rationals()).free_rank == 1);
  CHECK(homology_pair(d_in, d_out, Ring::gf(2)).free_rank == 2);
  CHECK(homology_pair(d_in, d_out, Ring::gf(3)).free_rank == 1);
}

TEST_CASE("homology of the square with identified sides") {
  // One vertex, three edges, two faces; the gluing with a flip.
  SparseExactMatrix d2 = dense(3, 2, {{1, 1}, {1, -1}, {-1, 1}});
  SparseExactMatrix d1(1, 3);
  SparseExactMatrix d3(2, 0);
  SparseExactMatrix d0(0, 1);

  auto h1 = homology_pair(d2, d1, Ring::integers());
  CHECK(h1.free_rank == 1);
  CHECK(h1.torsion == std::vector<Int>{2});

  CHECK(homology_pair(d3, d2, Ring::integers()).trivial());
  auto h0 = homology_pair(d1, d0, Ring::integers());
  CHECK(h0.free_rank == 1);
  CHECK(h0.torsion.empty());

  CHECK(homology_pair(d2.with_ring(Ring::rationals()), d1.with_ring(Ring::rationals()),
                      Ring::rationals())
            .free_rank == 1);
  CHECK(homology_pair(d2.with_ring(Ring::gf(2)), d1.with_ring(Ring::gf(2)), Ring::gf(2))
            .free_rank == 2);
}

TEST_CASE("homology of the boundary of a solid tetrahedron") {
  // Chain groups indexed by vertex subsets of each size, boundary with
  // alternating signs on deletions.
  auto boundary = [](int verts, int k) {
    const auto& faces = subsets(verts, k + 1);
    const auto& below = subsets(verts, k);
    SparseExactMatrix out(static_cast<long>(below.size()), static_cast<long>(faces.size()));
    for (size_t c = 0; c < faces.size(); ++c) {
      int sgn = 1;
      for (size_t i = 0; i < faces[c].size(); ++i) {
        PairSet f = faces[c];
        f.erase(f.begin() + i);
        auto it = std::lower_bound(below.begin(), below.end(), f);
        out.add(static_cast<long>(it - below.begin()), static_cast<long>(c), sgn);
        sgn = -sgn;
      }
    }
    return out;
  };

  SparseExactMatrix d1 = boundary(4, 1), d2 = boundary(4, 2);
  SparseExactMatrix top(static_cast<long>(subsets(4, 3).size()), 0);
  SparseExactMatrix bot(0, static_cast<long>(subsets(4, 1).size()));

  auto h2 = homology_pair(top, d2, Ring::integers());
  CHECK(h2.free_rank == 1);
  CHECK(h2.torsion.empty());
  CHECK(homology_pair(d2, d1, Ring::integers()).trivial());
  auto h0 = homology_pair(d1, bot, Ring::integers());
  CHECK(h0.free_rank == 1);
}

TEST_CASE("nonzero composites are rejected") {
  SparseExactMatrix one = dense(1, 1, {{1}});
  CHECK_THROWS_AS(homology_pair(one, one, Ring::integers()), CompositionNotZero);
}

TEST_CASE("divisibility chains") {
  CHECK(divisibility_chain({4, 6}) == std::vector<Int>{2, 12});
  CHECK(divisibility_chain({2, 2, 3}) == std::vector<Int>{1, 2, 6});
  CHECK(divisibility_chain({1, 5}) == std::vector<Int>{1, 5});
  CHECK(divisibility_chain({}) == std::vector<Int>{});
  for (size_t i = 0; i + 1 < 3; ++i) {
    auto c = divisibility_chain({6, 10, 15});
    REQUIRE(c.size() == 3);
    CHECK(c[i + 1] % c[i] == 0);
  }
}

TEST_CASE("direct sums of invariants") {
  AbelianGroupInvariants a{1, {2}};
  AbelianGroupInvariants b{2, {3}};
  auto s = direct_sum(a, b);
  CHECK(s.free_rank == 3);
  CHECK(s.torsion == std::vector<Int>{6});

  AbelianGroupInvariants t{0, {2, 4}};
  auto u = direct_sum(t, AbelianGroupInvariants{0, {4}});
  CHECK(u.free_rank == 0);
  CHECK(u.torsion == std::vector<Int>{2, 4, 4});
}

TEST_CASE("ring parsing and names") {
  CHECK(parse_ring("z") == Ring::integers());
  CHECK(parse_ring("int") == Ring::integers());
  CHECK(parse_ring("integers") == Ring::integers());
  CHECK(parse_ring("q") == Ring::rationals());
  CHECK(parse_ring("rational") == Ring::rationals());
  CHECK(parse_ring("gf7") == Ring::gf(7));
  CHECK(parse_ring("gf:7") == Ring::gf(7));
  CHECK(parse_ring("gf(7)") == Ring::gf(7));
  CHECK(parse_ring("GF2") == Ring::gf(2));
  CHECK_THROWS_AS(parse_ring("gf6"), NotPrime);
  CHECK_THROWS_AS(parse_ring("field"), OutOfRange);
  CHECK(Ring::integers().name() == "Z");
  CHECK(Ring::rationals().name() == "Q");
  CHECK(Ring::gf(5).name() == "GF(5)");
  CHECK_FALSE(Ring::integers().is_field());
  CHECK(Ring::gf(2).is_field());
}

TEST_CASE("invariant printing") {
  CHECK(AbelianGroupInvariants{}.str() == "0");
  CHECK(AbelianGroupInvariants{2, {}}.str() == "Z^2");
  CHECK(AbelianGroupInvariants{1, {}}.str() == "Z");
  CHECK(AbelianGroupInvariants{0, {3}}.str() == "Z/3");
  CHECK(AbelianGroupInvariants{2, {2, 6}}.str() == "Z^2 + Z/2 + Z/6");
}

TEST_CASE("sparse matrix plumbing") {
  SparseExactMatrix a = dense(2, 3, {{1, 0, -2}, {0, 3, 0}});
  CHECK(a.nnz() == 3);
  CHECK(a.get(0, 2) == -2);
  CHECK(a.get(1, 0) == 0);
  CHECK(a.transpose().transpose() == a);
  CHECK(a.transpose().rows() == 3);

  a.add(0, 2, 2);
  CHECK(a.nnz() == 2);
  CHECK(a.get(0, 2) == 0);

  SparseExactMatrix b = dense(3, 2, {{1, 0}, {0, 1}, {1, 1}});
  auto ab = dense(2, 3, {{1, 0, -2}, {0, 3, 0}}).multiply(b);
  CHECK(ab.rows() == 2);
  CHECK(ab.cols() == 2);
  CHECK(ab.get(0, 0) == -1);
  CHECK(ab.get(0, 1) == -2);
  CHECK(ab.get(1, 0) == 0);
  CHECK(ab.get(1, 1) == 3);

  SparseExactMatrix c = dense(1, 2, {{5, -1}});
  auto c3 = c.with_ring(Ring::gf(3));
  CHECK(c3.get(0, 0) == 2);
  CHECK(c3.get(0, 1) == 2);

  SparseExactMatrix n = dense(1, 1, {{4}});
  n.negate_in_place();
  CHECK(n.get(0, 0) == -4);
}
