#include <catch2/catch_amalgamated.hpp>

#include "support/test_corpus.hpp"
#include "ufl/ring_core.hpp"

using namespace ufl;

TEST_CASE("Zn construction and arithmetic") {
  const FiniteRing z6 = make_zn(6);
  REQUIRE(z6.order() == 6);
  CHECK(z6.add(2, 5) == 1);
  CHECK(z6.mul(2, 3) == 0);
  CHECK(z6.one() == 1);
  CHECK(z6.origin().expr == "Zn(6)");

  const FiniteRing z1 = make_zn(1);
  CHECK(z1.order() == 1);
  CHECK(z1.zero() == z1.one());

  const FiniteRing z8 = make_zn(8);
  CHECK(z8.mul(3, 3) == 1);

  CHECK_THROWS_AS(make_zn(0), std::invalid_argument);
  CHECK_THROWS_AS(make_zn(-3), std::invalid_argument);
  CHECK_THROWS_AS(make_zn(max_ring_order() + 1), std::invalid_argument);
}

TEST_CASE("product rings use the pair encoding") {
  const FiniteRing z2 = make_zn(2), z3 = make_zn(3);
  const FiniteRing p = make_product(z2, z3);
  REQUIRE(p.order() == 6);
  CHECK(p.one() == pair_index(z2, z3, 1, 1));
  CHECK(p.origin().expr == "Prod(Zn(2),Zn(3))");

  SECTION("componentwise multiplication") {
    const FiniteRing q = make_product(z2, z2);
    const int e10 = pair_index(z2, z2, 1, 0);
    const int e01 = pair_index(z2, z2, 0, 1);
    CHECK(q.mul(e10, e01) == q.zero());
  }

  SECTION("Z2 x Z3 is isomorphic to Z6 (CRT, exhaustive search)") {
    CHECK(ufl_test::rings_isomorphic_brute(p, make_zn(6)));
  }

  SECTION("unit count multiplies across factors") {
    const FiniteRing z4 = make_zn(4), z6 = make_zn(6);
    const int u4 = element_classes(z4).units.count();
    const int u6 = element_classes(z6).units.count();
    CHECK(u4 * u6 == 4);
    CHECK(element_classes(make_product(z4, z6)).units.count() == u4 * u6);
  }
}

TEST_CASE("ideal closure") {
  const FiniteRing z6 = make_zn(6);
  CHECK(ideal_closure(z6, std::vector<int>{2}).to_list() == std::vector<int>{0, 2, 4});

  const FiniteRing z8 = make_zn(8);
  CHECK(ideal_closure(z8, std::vector<int>{}).to_list() == std::vector<int>{0});

  const FiniteRing z4 = make_zn(4);
  const FiniteRing p = make_product(z4, z4);
  const ElementSet closed = ideal_closure(
      p, std::vector<int>{pair_index(z4, z4, 2, 0), pair_index(z4, z4, 0, 2)});
  CHECK(closed.count() == 4);
  for (int a : {0, 2})
    for (int b : {0, 2}) CHECK(closed.contains(pair_index(z4, z4, a, b)));
}

TEST_CASE("quotient rings") {
  const FiniteRing z6 = make_zn(6);

  SECTION("Z6 / (2) has order 2") {
    const QuotientResult q = make_quotient(z6, ideal_closure(z6, std::vector<int>{2}));
    CHECK(q.ring.order() == 2);
    CHECK(q.projection[4] == 0);
    CHECK(q.projection[5] == 1);
  }

  SECTION("trivial quotient reproduces the ring") {
    const FiniteRing z8 = make_zn(8);
    const QuotientResult q = make_quotient(z8, ElementSet::from_list(8, {0}));
    REQUIRE(q.ring.order() == 8);
    for (int x = 0; x < 8; ++x) {
      CHECK(q.projection[static_cast<size_t>(x)] == x);
      for (int y = 0; y < 8; ++y) {
        CHECK(q.ring.add(x, y) == z8.add(x, y));
        CHECK(q.ring.mul(x, y) == z8.mul(x, y));
      }
    }
  }

  SECTION("(Z4 x Z4) / ({0,2} x {0,2}) has order 4 and characteristic 2") {
    const FiniteRing z4 = make_zn(4);
    const FiniteRing p = make_product(z4, z4);
    const ElementSet ideal = ideal_closure(
        p, std::vector<int>{pair_index(z4, z4, 2, 0), pair_index(z4, z4, 0, 2)});
    const QuotientResult q = make_quotient(p, ideal);
    CHECK(q.ring.order() == 4);
    CHECK(q.ring.add(q.ring.one(), q.ring.one()) == q.ring.zero());
  }

  SECTION("non-ideals are rejected") {
    const FiniteRing z4 = make_zn(4);
    CHECK_THROWS_AS(make_quotient(z4, ElementSet::from_list(4, {0, 1})), std::invalid_argument);
  }

  SECTION("projection is a surjective ring homomorphism") {
    for (int n : {2, 6, 12}) {
      const FiniteRing zn = make_zn(n);
      for (int g = 0; g < n; ++g) {
        const QuotientResult q = make_quotient(zn, ideal_closure(zn, std::vector<int>{g}));
        std::vector<bool> hit(static_cast<size_t>(q.ring.order()), false);
        for (int x = 0; x < n; ++x) {
          hit[static_cast<size_t>(q.projection[static_cast<size_t>(x)])] = true;
          for (int y = 0; y < n; ++y) {
            CHECK(q.projection[static_cast<size_t>(zn.add(x, y))] ==
                  q.ring.add(q.projection[static_cast<size_t>(x)], q.projection[static_cast<size_t>(y)]));
            CHECK(q.projection[static_cast<size_t>(zn.mul(x, y))] ==
                  q.ring.mul(q.projection[static_cast<size_t>(x)], q.projection[static_cast<size_t>(y)]));
          }
        }
        for (bool h : hit) CHECK(h);
      }
    }
  }
}

TEST_CASE("element classes") {
  CHECK(element_classes(make_zn(6)).regulars.to_list() == std::vector<int>{1, 5});
  CHECK(element_classes(make_zn(8)).units.to_list() == std::vector<int>{1, 3, 5, 7});
  CHECK(element_classes(make_zn(4)).nilpotents.to_list() == std::vector<int>{0, 2});

  SECTION("regulars and units coincide in finite rings") {
    for (const FiniteRing& r : ufl_test::small_ring_corpus(20)) {
      const ElementClasses c = element_classes(r);
      CHECK(c.units == c.regulars);
    }
  }
}

TEST_CASE("jacobson radical") {
  CHECK(jacobson_radical(make_zn(4)).to_list() == std::vector<int>{0, 2});
  CHECK(jacobson_radical(make_zn(6)).to_list() == std::vector<int>{0});
  CHECK(jacobson_radical(make_zn(7)).to_list() == std::vector<int>{0});

  SECTION("the radical is a nilpotent ideal") {
    for (const FiniteRing& r : ufl_test::small_ring_corpus(20)) {
      const ElementSet rad = jacobson_radical(r);
      CHECK(ideal_closure(r, rad) == rad);
      const ElementSet nil = element_classes(r).nilpotents;
      for (int j : rad.to_list()) CHECK(nil.contains(j));
    }
  }
}

TEST_CASE("ring axioms hold for every constructed ring") {
  for (const FiniteRing& r : ufl_test::small_ring_corpus(24))
    CHECK_FALSE(verify_ring_axioms(r).has_value());
  CHECK_FALSE(verify_ring_axioms(make_zn(512)).has_value());
  CHECK_FALSE(verify_ring_axioms(make_product(make_zn(8), make_zn(8))).has_value());
  CHECK_FALSE(verify_ring_axioms(ufl_test::z3_dual_numbers()).has_value());
}

TEST_CASE("corrupt tables are rejected") {
  const FiniteRing z4 = make_zn(4);
  std::vector<std::uint16_t> add(16), mul(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      add[static_cast<size_t>(i) * 4 + j] = static_cast<std::uint16_t>(z4.add(i, j));
      mul[static_cast<size_t>(i) * 4 + j] = static_cast<std::uint16_t>(z4.mul(i, j));
    }
  CHECK_NOTHROW(make_from_tables(4, add, mul, "Z4-copy"));
  mul[static_cast<size_t>(2) * 4 + 3] = 1;  // break distributivity
  CHECK_THROWS_AS(make_from_tables(4, add, mul, "broken"), std::invalid_argument);
}
