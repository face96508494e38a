#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "segre/homology.hpp"

using namespace segre;

TEST_CASE("homology of the trivial positions") {
  for (Dims d : {Dims{1, 1}, Dims{2, 2}, Dims{2, 3}}) {
    auto h = homology_N(d, 0, 0, 0, Ring::integers());
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());
    auto hm = homology_M(d, 0, 0, 0, Ring::integers());
    CHECK(hm.free_rank == 1);
    CHECK(hm.torsion.empty());
  }
}

TEST_CASE("the middle of the rank two symmetric complex") {
  Dims d{2, 2};
  auto h = homology_N(d, 1, 1, 1, Ring::integers());
  CHECK(h.free_rank == 1);
  CHECK(h.torsion.empty());
  CHECK(homology_N(d, 1, 1, 1, Ring::rationals()).free_rank == 1);
  CHECK(homology_N(d, 1, 1, 1, Ring::gf(2)).free_rank == 1);
}

TEST_CASE("routes agree") {
  Dims d{2, 2};
  EngineOptions direct;
  direct.route = Route::Direct;
  EngineOptions strands;
  strands.route = Route::Strands;
  for (Ring ring : {Ring::integers(), Ring::gf(2)}) {
    CHECK(homology_N(d, 1, 1, 1, ring, direct) == homology_N(d, 1, 1, 1, ring, strands));
    CHECK(homology_N(d, 0, 1, 2, ring, direct) == homology_N(d, 0, 1, 2, ring, strands));
    CHECK(homology_M(d, 1, 0, 1, ring, direct) == homology_M(d, 1, 0, 1, ring, strands));
  }
  Dims d23{2, 3};
  CHECK(homology_N(d23, 1, 2, 2, Ring::integers(), direct) ==
        homology_N(d23, 1, 2, 2, Ring::integers(), strands));
}

TEST_CASE("the direct route refuses oversized modules") {
  EngineOptions opt;
  opt.route = Route::Direct;
  opt.strand_threshold = 5;
  CHECK_THROWS_AS(homology_N(Dims{2, 2}, 1, 1, 1, Ring::integers(), opt), OutOfRange);
}

TEST_CASE("graded Betti numbers of the plain quotient at rank two") {
  Dims d{2, 2};
  BettiTable t = betti_table(d, 0, 2, Ring::rationals());
  std::map<std::pair<int, int>, long> want{{{0, 0}, 1}, {{1, 2}, 1}};
  CHECK(t.entries == want);
  CHECK(t.ell == 0);
  CHECK(t.ring == "Q");

  CHECK(tor_group(d, 0, 1, 2, Ring::rationals()).free_rank == 1);
  CHECK(tor_group(d, 0, 1, 1, Ring::rationals()).free_rank == 0);
  CHECK(tor_group(d, 1, 0, 0, Ring::rationals()).free_rank == 2);
  CHECK_THROWS_AS(betti_table(d, 0, 2, Ring::integers()), HypothesisViolation);
}

TEST_CASE("homology duality inside the band") {
  Dims d{2, 2};
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      if (m - n < 1 - d.e || m - n > d.g - 1) continue;
      for (int p = 0; p <= 2; ++p) {
        auto r = check_duality(d, m, n, p, Ring::integers());
        INFO("m=" << m << " n=" << n << " p=" << p << " sym=" << r.sym_side.str()
                  << " div=" << r.div_side.str());
        CHECK(r.match);
      }
    }
  Dims d23{2, 3};
  for (auto [m, n, p] : std::vector<std::array<int, 3>>{
           {0, 0, 0}, {1, 0, 1}, {1, 1, 2}, {2, 1, 1}, {0, 1, 2}}) {
    auto r = check_duality(d23, m, n, p, Ring::integers());
    INFO("m=" << m << " n=" << n << " p=" << p);
    CHECK(r.match);
  }
  CHECK_THROWS_AS(check_duality(d, 2, 0, 1, Ring::integers()), HypothesisViolation);
}

TEST_CASE("strandwise duality at rank two") {
  Dims d{2, 2};
  StrandKey ones{{1, 1}, {1, 1}};
  StrandKey zeros{{0, 0}, {0, 0}};
  auto r = check_strand_duality(d, {1, 1, 1}, ones, zeros);
  CHECK(r.match);
  CHECK(r.div_side == r.sym_side);

  CHECK_THROWS_AS(check_strand_duality(d, {1, 1, 1}, StrandKey{{2, 0}, {1, 1}}, ones),
                  HypothesisViolation);
  CHECK_THROWS_AS(check_strand_duality(d, {2, 0, 1}, ones, ones), HypothesisViolation);
}

TEST_CASE("whole complex exactness checks") {
  Dims d{2, 2};
  CHECK(check_split_exact(d, 2, 1).ok);
  CHECK(check_split_exact(d, 0, 0).ok);
  CHECK_FALSE(check_split_exact(d, 2, 1, true).ok);
}

TEST_CASE("the distinguished cycle reports") {
  for (Dims d : {Dims{1, 2}, Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
    ZetaReport z = check_zeta(d);
    INFO("e=" << d.e << " g=" << d.g);
    CHECK(z.is_cycle);
    CHECK((z.top_image == 1 || z.top_image == -1));
    CHECK(z.terms == binomial(d.e + d.g - 2, d.e - 1));
  }
}

TEST_CASE("field dimensions can exceed the rational ones") {
  Dims d{5, 5};
  auto scan = characteristic_scan(d, 2, 2, 3, {Ring::rationals(), Ring::gf(3)});
  REQUIRE(scan.count("Q") == 1);
  REQUIRE(scan.count("GF(3)") == 1);
  CHECK(scan.at("GF(3)") > scan.at("Q"));
}

TEST_CASE("symmetry of homology along the third row") {
  Dims d{3, 3};
  auto rep = check_e3_homology_symmetry(d, 3, 3);
  INFO((rep.failures.empty() ? "" : rep.failures.front()));
  CHECK(rep.ok);
  CHECK(check_e3_homology_symmetry(d, 2, 2).ok);
  Dims d34{3, 4};
  CHECK(check_e3_homology_symmetry(d34, 3, 2).ok);
}

TEST_CASE("symmetry of Betti numbers along the third row") {
  Dims d{3, 3};
  for (int q : {2, 3})
    for (int ell = -2; ell <= q - 1; ++ell) {
      auto rep = check_e3_betti_symmetry(d, ell, q, Ring::rationals());
      INFO("ell=" << ell << " q=" << q
                  << (rep.failures.empty() ? "" : " first: " + rep.failures.front()));
      CHECK(rep.ok);
    }
}

TEST_CASE("transposing the grid shifts the internal degree") {
  Dims d{3, 3};
  CHECK(check_transpose_betti(d, 1, 1, 2, Ring::rationals()));
  CHECK(check_transpose_betti(d, 2, 2, 2, Ring::rationals()));
  CHECK(check_transpose_betti(d, -1, 2, 3, Ring::integers()));
}

TEST_CASE("the capped grid complex matches the strand of the resolution") {
  Dims d{2, 2};
  auto r = check_chessboard_bridge(d, {1, 1}, {1, 1}, 0, 1);
  CHECK(r.match);
  CHECK(r.tor_side.free_rank == 1);
  CHECK_THROWS_AS(check_chessboard_bridge(d, {1, 1}, {1, 1}, 1, 1), DegreeMismatch);
}
