#include <random>

#include "doctest.h"
#include "eqdecomp/error.hpp"
#include "eqdecomp/permutation.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eqd;

TEST_SUITE("permutation") {
  TEST_CASE("parse_cycles reads cycle notation") {
    const auto phi = parse_cycles(fx::kPhi, 10);
    CHECK(phi(2) == 5);
    CHECK(phi(3) == 6);
    CHECK(phi(10) == 3);
    CHECK(phi(1) == 1);
    CHECK(phi.to_string() == fx::kPhi);
  }

  TEST_CASE("parse_cycles accepts spaces and empty text") {
    CHECK(parse_cycles("(1 2 3) (4,5)", 5) == parse_cycles("(1,2,3)(4,5)", 5));
    const auto id = parse_cycles("", 4);
    CHECK(id.is_identity());
    CHECK(id.size() == 4);
    CHECK(id.to_string() == "()");
  }

  TEST_CASE("parse_cycles rejects malformed input") {
    CHECK_THROWS_AS(parse_cycles("(1,2)(1,3)", 3), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(1,4)", 3), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(0,1)", 3), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(1,2", 3), ValidationError);
    CHECK_THROWS_AS(parse_cycles("1,2)", 3), ValidationError);
    CHECK_THROWS_AS(parse_cycles("(1,a)", 3), ValidationError);
  }

  TEST_CASE("power") {
    const auto phi = parse_cycles(fx::kPhi, 10);
    CHECK(power(phi, 2) == parse_cycles(fx::kPsi0, 10));
    CHECK(power(phi, 0).is_identity());
    CHECK(power(phi, phi.order()).is_identity());
    CHECK(power(parse_cycles("(1,2,3,4)", 4), 2) == parse_cycles("(1,3)(2,4)", 4));
  }

  TEST_CASE("orbits start at the minimum and follow phi") {
    const auto o = orbits(parse_cycles(fx::kPsi0, 10));
    REQUIRE(o.size() == 4);
    CHECK(o[0] == std::vector<Vertex>{1});
    CHECK(o[1] == std::vector<Vertex>{2, 8, 5});
    CHECK(o[2] == std::vector<Vertex>{3, 9, 7});
    CHECK(o[3] == std::vector<Vertex>{4, 10, 6});
    CHECK(orbits(Permutation(3)) == OrbitPartition{{1}, {2}, {3}});
    CHECK(orbits(parse_cycles("(1,2)(3,4)", 5)) == OrbitPartition{{1, 2}, {3, 4}, {5}});
  }

  TEST_CASE("classify") {
    const auto c0 = classify(parse_cycles(fx::kPsi0, 10));
    CHECK(c0.kind == AutoKind::basic);
    CHECK(c0.k == 3);
    CHECK(c0.N == 1);
    CHECK(c0.separable);
    CHECK(c0.primes == std::vector<std::uint64_t>{3});

    const auto c1 = classify(parse_cycles(fx::kPhi, 10));
    CHECK(c1.kind == AutoKind::general);
    CHECK_FALSE(c1.is_basic());
    CHECK(c1.order == 6);
    CHECK(c1.separable);
    CHECK(c1.primes == std::vector<std::uint64_t>{3, 2});
    CHECK(classify(parse_cycles(fx::kPhi, 10), PrimeOrder::ascending).primes == std::vector<std::uint64_t>{2, 3});

    const auto c2 = classify(parse_cycles("(1,2,3,4)", 4));
    CHECK(c2.kind == AutoKind::uniform);
    CHECK(c2.is_basic());
    CHECK(c2.k == 4);
    CHECK(c2.N == 0);
    CHECK_FALSE(c2.separable);

    CHECK(classify(Permutation(3)).kind == AutoKind::identity);
  }

  TEST_CASE("separable_power") {
    // Order 12 = 4 * 3.
    const auto phi = parse_cycles("(1,2,3,4)(5,6,7)", 7);
    const auto sp = separable_power(phi);
    CHECK(sp.exponent == 2);
    CHECK(sp.psi.order() == 6);
    CHECK(sp.psi == power(phi, 2));

    const auto six = parse_cycles(fx::kPhi, 10);
    CHECK(separable_power(six).exponent == 1);
    CHECK(separable_power(six).psi == six);

    const auto four = parse_cycles("(1,2,3,4)", 4);
    // Enumerate powers: the first with squarefree order > 1 is e = 2.
    std::uint64_t first = 0;
    for (std::uint64_t e = 1; e < 4 && !first; ++e) {
      const auto o = oracle::brute_order(power(four, e));
      if (o > 1 && oracle::squarefree_trial(o)) first = e;
    }
    CHECK(separable_power(four).exponent == first);
    CHECK(separable_power(four).psi.order() == 2);

    CHECK_THROWS_AS(separable_power(Permutation(3)), ValidationError);
  }

  TEST_CASE("order agrees with repeated composition") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      const auto p = fx::random_permutation(rng, 1 + rng() % 14);
      CHECK(p.order() == oracle::brute_order(p));
      CHECK(orbits(power(p, p.order())).size() == p.size());
    }
  }

  TEST_CASE("squarefree detection agrees with trial division") {
    for (std::uint64_t n = 1; n <= 20000; ++n) REQUIRE(is_squarefree(n) == oracle::squarefree_trial(n));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
      const std::uint64_t n = 1 + rng() % 1000000;
      REQUIRE(is_squarefree(n) == oracle::squarefree_trial(n));
    }
  }

  TEST_CASE("classify separable iff order squarefree; separable power has radical order") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const auto p = fx::random_permutation(rng, 2 + rng() % 12);
      const auto c = classify(p);
      CHECK(c.separable == oracle::squarefree_trial(oracle::brute_order(p)));
      if (p.is_identity()) continue;
      CHECK(separable_power(p).psi.order() == oracle::radical_trial(p.order()));
    }
  }

  TEST_CASE("orbits do not depend on the seed member") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
      const auto p = fx::random_permutation(rng, 12);
      for (const auto& orbit : orbits(p)) {
        CHECK(orbit.front() == *std::min_element(orbit.begin(), orbit.end()));
        for (std::size_t i = 0; i + 1 < orbit.size(); ++i) CHECK(p(orbit[i]) == orbit[i + 1]);
      }
      // Conjugating by a relabeling preserves orbit sizes.
      const auto q = fx::random_permutation(rng, 12);
      auto sizes = [](const OrbitPartition& o) {
        std::vector<std::size_t> s;
        for (const auto& x : o) s.push_back(x.size());
        std::sort(s.begin(), s.end());
        return s;
      };
      CHECK(sizes(orbits(compose(q, compose(p, q.inverse())))) == sizes(orbits(p)));
    }
  }

  TEST_CASE("compose and inverse") {
    const auto a = parse_cycles("(1,2,3)", 4);
    const auto b = parse_cycles("(3,4)", 4);
    CHECK(compose(a, b)(3) == a(b(3)));
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK_THROWS_AS(compose(a, Permutation(3)), ValidationError);
  }
}
