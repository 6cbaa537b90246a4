#include <doctest.h>

#include <algorithm>
#include <random>

#include "pentalab/dioph.hpp"
#include "pentalab/errors.hpp"

using namespace pentalab;

TEST_CASE("symmetric invariants of small tuples") {
  SymmetricInvariants a = symmetric_invariants({-1, -2, 3});
  CHECK(a.m1() == rat(6));
  CHECK(a.m2() == rat(7));
  CHECK(a.m3() == rat(0));
  CHECK(a.m5() == rat(7));
  CHECK(a.m5() + a.m2() == rat(14));  // sum of squares

  SymmetricInvariants b = symmetric_invariants({1, 2, 3});
  CHECK(b.m1() == rat(6));
  CHECK(b.m2() == rat(-11));
  CHECK(b.m3() == rat(6));
  CHECK(b.m4() == b.m3() * b.m2() + b.m1());

  CHECK_THROWS_AS(symmetric_invariants({1, 1, 2}), Error);
}

TEST_CASE("power dots reproduce the closed forms") {
  // t^4 . A^{-1} e1 = M1 M3, t^5 . A^{-1} e1 = M1 M5 for triples.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> t;
    while (t.size() < 3) {
      long v = entry(rng);
      if (std::find(t.begin(), t.end(), v) == t.end()) t.push_back(v);
    }
    SymmetricInvariants inv = symmetric_invariants(t);
    CHECK(power_dot_inverse_e1(t, 3) == inv.m1());
    CHECK(power_dot_inverse_e1(t, 4) == inv.m1() * inv.m3());
    CHECK(power_dot_inverse_e1(t, 5) == inv.m1() * inv.m5());
  }
}

TEST_CASE("rp3 candidate internals") {
  Rp3Candidate ansatz = rp3_candidate({5, -2, 3}, {-5, 2, 3}, {-5, -1, -6});
  CHECK(ansatz.c1_holds);
  CHECK(ansatz.rank_full);
  REQUIRE(ansatz.q.has_value());
  CHECK(*ansatz.q == rat(1, 8));
  CHECK(ansatz.gamma3 == rat(-5));

  SUBCASE("q is invariant under permutations inside a triple") {
    std::mt19937_64 rng(9);
    Triple m{5, -2, 3}, n{-5, 2, 3}, r{-5, -1, -6};
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(m.begin(), m.end(), rng);
      std::shuffle(n.begin(), n.end(), rng);
      std::shuffle(r.begin(), r.end(), rng);
      Rp3Candidate c = rp3_candidate(m, n, r);
      REQUIRE(c.q.has_value());
      CHECK(*c.q == rat(1, 8));
    }
  }

  Rp3Candidate degenerate = rp3_candidate({1, 2, 3}, {1, 2, 3}, {1, 2, 3});
  CHECK_FALSE(degenerate.rank_full);

  Rp3Candidate square = rp3_candidate({-1, -2, 3}, {-1, 2, -3}, {1, -2, -3});
  CHECK(square.sum_squares_equal);
  REQUIRE(square.q.has_value());
  CHECK(*square.q == rat(7, 60));
}

TEST_CASE("admissibility ratio") {
  CHECK(rp3_admissibility_ratio(-2, 3, -5) == rat(-5, 4));
  CHECK(rp3_admissibility_ratio(-2, 2, -2) == rat(-2 - 1 + (-2) * (2 - 1), 2 + 2));
  CHECK(rp3_admissibility_ratio(0, 2, 1) == rat(0));
  CHECK_THROWS_AS(rp3_admissibility_ratio(1, 2, 2), Error);
}

TEST_CASE("rp3 search finds the lemma-square family at max_abs 3") {
  auto hits = rp3_search(3, rat(7, 60), 2);
  // canonical form: triples sorted, then the set of triples sorted
  std::array<Triple, 3> want{Triple{-3, -2, 1}, Triple{-3, -1, 2}, Triple{-2, -1, 3}};
  std::sort(want.begin(), want.end());
  bool found = false;
  for (const auto& h : hits)
    if (std::array<Triple, 3>{h.m, h.n, h.r} == want) found = true;
  CHECK(found);
}

TEST_CASE("rp4 checks") {
  Rp4Check good = rp4_three_plane_check({7, -1, -7}, {3, -1, -3}, {6, -3, -4});
  CHECK(good.condition1);
  CHECK(good.rank_full);
  CHECK(good.det_identity);
  CHECK_FALSE(good.det_identity_printed_sign);

  Rp4Check bad = rp4_three_plane_check({1, 2, 3}, {1, 2, 3}, {1, 2, 3});
  CHECK_FALSE(bad.passes());
}

TEST_CASE("rp4 two-subspace ratio") {
  CHECK(rp4_two_subspace_ratio({1, 5, -6}, {2, 3, -5}) == rat(3, 10));
  CHECK_THROWS_AS(rp4_two_subspace_ratio({1, 5, -6}, {1, 5, -6}), Error);
  CHECK_THROWS_AS(rp4_two_subspace_ratio({1, 5, -6}, {2, 3, -4}), Error);
}

TEST_CASE("enumeration bounds") {
  std::vector<Triple> t2 = enumerate_triples(2);
  CHECK(t2.size() == 4);  // C(4,3)
  CHECK_THROWS_AS(rp3_search(1, rat(1, 8), 1), Error);
}
