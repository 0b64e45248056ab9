#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/test_corpus.hpp"
#include "ufl/constructions.hpp"

using namespace ufl;

namespace {

MultSet units_of(const FiniteRing& r) {
  return mult_closure(r, element_classes(r).units.to_list());
}

}  // namespace

TEST_CASE("jacobson_decompose") {
  SECTION("Z4, j=2, f=3") {
    const FiniteRing z4 = make_zn(4);
    const JacobsonDecomposition d = jacobson_decompose(z4, 2, 3);
    CHECK(d.certificate.denominators == std::vector<int>{2, 2});
    CHECK(d.degenerate);
    CHECK(d.wset.contains(0));
    CHECK(verify_certificate(z4, d.wset, d.certificate).ok());
  }

  SECTION("Z9, j=3, f=1") {
    const FiniteRing z9 = make_zn(9);
    const JacobsonDecomposition d = jacobson_decompose(z9, 3, 1);
    CHECK(d.certificate.denominators == std::vector<int>{3, 6});  // (3*1-1)^-1 = 5, 3*5 = 6
    CHECK(d.degenerate);                                          // 3^2 = 0 mod 9
    CHECK(verify_certificate(z9, d.wset, d.certificate).ok());
  }

  SECTION("j outside the radical is rejected") {
    CHECK_THROWS_AS(jacobson_decompose(make_zn(4), 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(jacobson_decompose(make_zn(6), 2, 1), std::invalid_argument);
  }

  SECTION("j=0 gives the zero model where any f verifies") {
    const FiniteRing z6 = make_zn(6);
    for (int f = 1; f < z6.order(); ++f) {
      const JacobsonDecomposition d = jacobson_decompose(z6, 0, f);
      CHECK(d.degenerate);
      CHECK(d.certificate.denominators.size() == 2);
      CHECK(verify_certificate(z6, d.wset, d.certificate).ok());
    }
  }

  SECTION("always exactly two denominators") {
    std::mt19937 rng(7);
    for (int n : {4, 8, 9, 12, 16, 18, 25, 27}) {
      const FiniteRing r = make_zn(n);
      const std::vector<int> rad = jacobson_radical(r).to_list();
      for (int j : rad)
        for (int trial = 0; trial < 4; ++trial) {
          const int f = 1 + static_cast<int>(rng() % (n - 1));
          const JacobsonDecomposition d = jacobson_decompose(r, j, f);
          CHECK(d.certificate.denominators.size() == 2);
          CHECK(verify_certificate(r, d.wset, d.certificate).ok());
        }
    }
  }
}

TEST_CASE("compose_sum and compose_product") {
  const FiniteRing z6 = make_zn(6);
  const MultSet r6 = mult_closure(z6, element_classes(z6).regulars.to_list());

  SECTION("sum concatenates") {
    const Certificate one = make_certificate(1, {1});
    const Certificate two = compose_sum(z6, r6, one, one);
    CHECK(two.target == 2);
    CHECK(two.denominators == std::vector<int>{1, 1});
    CHECK_FALSE(two.strict);
    CHECK(verify_certificate(z6, r6, two).ok());
  }

  SECTION("product takes all pairwise products") {
    const FiniteRing z8 = make_zn(8);
    const MultSet u8 = units_of(z8);
    const Certificate a = make_certificate(2, {3, 7});
    const Certificate b = make_certificate(4, {1, 3});
    const Certificate p = compose_product(z8, u8, a, b);
    CHECK(p.target == 0);
    CHECK(p.denominators == std::vector<int>{3, 1, 7, 5});
    CHECK(p.denominators.size() == a.denominators.size() * b.denominators.size());
    CHECK(verify_certificate(z8, u8, p).ok());
  }

  SECTION("product with the empty certificate annihilates") {
    const Certificate zero = make_certificate(0, {});
    const Certificate one = make_certificate(1, {1});
    const Certificate p = compose_product(z6, r6, zero, one);
    CHECK(p.target == 0);
    CHECK(p.denominators.empty());
    CHECK(verify_certificate(z6, r6, p).ok());
  }

  SECTION("certificates over the wrong W are rejected") {
    const Certificate foreign = make_certificate(2, {2});  // 2 is not regular in Z6
    CHECK_THROWS_AS(compose_sum(z6, r6, foreign, foreign), std::invalid_argument);
    const Certificate oversized = make_certificate(2, {7});  // out of range
    CHECK_THROWS_AS(compose_product(z6, r6, oversized, oversized), std::invalid_argument);
  }
}

TEST_CASE("certify_from_generators") {
  const FiniteRing z6 = make_zn(6);
  const MultSet r6 = mult_closure(z6, element_classes(z6).regulars.to_list());
  const std::map<int, Certificate> certs{{1, make_certificate(1, {1})}};

  SECTION("g+g") {
    const GenExprPtr e = parse_gen_expr("(g0+g0)", {1});
    const Certificate c = certify_from_generators(z6, r6, certs, *e);
    CHECK(c.target == 2);
    CHECK(c.denominators == std::vector<int>{1, 1});
    CHECK(verify_certificate(z6, r6, c).ok());
  }

  SECTION("g*h over Z8") {
    const FiniteRing z8 = make_zn(8);
    const MultSet u8 = units_of(z8);
    const std::map<int, Certificate> gc{{2, make_certificate(2, {3, 7})},
                                        {4, make_certificate(4, {1, 3})}};
    const GenExprPtr e = parse_gen_expr("(g0*g1)", {2, 4});
    const Certificate c = certify_from_generators(z8, u8, gc, *e);
    CHECK(c.target == 0);
    CHECK(c.denominators.size() == 4);
    CHECK(verify_certificate(z8, u8, c).ok());
  }

  SECTION("a single leaf returns the generator's certificate") {
    const GenExprPtr e = parse_gen_expr("g0", {1});
    const Certificate c = certify_from_generators(z6, r6, certs, *e);
    CHECK(c.target == 1);
    CHECK(c.denominators == std::vector<int>{1});
  }

  SECTION("missing generator certificates are an error") {
    const GenExprPtr e = parse_gen_expr("(g0+g1)", {1, 5});
    CHECK_THROWS_AS(certify_from_generators(z6, r6, certs, *e), std::invalid_argument);
  }

  SECTION("parse errors") {
    CHECK_THROWS_AS(parse_gen_expr("(g0+g1", {1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(parse_gen_expr("g7", {1}), std::invalid_argument);
    CHECK_THROWS_AS(parse_gen_expr("(g0-g1)", {1, 5}), std::invalid_argument);
    CHECK_NOTHROW(parse_gen_expr(" ( g0 * ( g0 + g0 ) ) ", {5}));
  }

  SECTION("bounded expression search finds witnesses") {
    const GenExprPtr e = find_expression(z6, {2, 3}, 5, 3);
    REQUIRE(e != nullptr);
    CHECK(eval_expr(z6, *e) == 5);
    CHECK(find_expression(z6, {2, 4}, 1, 4) == nullptr);  // even subring
    const GenExprPtr leaf = find_expression(z6, {3}, 3, 0);
    REQUIRE(leaf != nullptr);
    CHECK(eval_expr(z6, *leaf) == 3);
  }
}

TEST_CASE("product_combine") {
  const FiniteRing z2 = make_zn(2), z3 = make_zn(3);
  const MultSet u2 = units_of(z2), u3 = units_of(z3);

  SECTION("[(1,1)] certifies (1,1)") {
    const Certificate c = product_combine(z2, z3, make_certificate(1, {1}), make_certificate(1, {1}));
    CHECK(c.target == pair_index(z2, z3, 1, 1));
    CHECK(c.denominators == std::vector<int>{pair_index(z2, z3, 1, 1)});
    const MultSet vw = product_multset(z2, z3, u2, u3);
    CHECK(verify_certificate(make_product(z2, z3), vw, c).ok());
  }

  SECTION("empty times empty certifies (0,0)") {
    const Certificate c = product_combine(z2, z3, make_certificate(0, {}), make_certificate(0, {}));
    CHECK(c.target == pair_index(z2, z3, 0, 0));
    CHECK(c.denominators.empty());
  }

  SECTION("Z8 x Z3 with a 2x2 grid of denominators") {
    const FiniteRing z8 = make_zn(8);
    const MultSet u8 = units_of(z8);
    const Certificate a = make_certificate(2, {3, 7});
    const Certificate b = make_certificate(2, {1, 1});
    const Certificate c = product_combine(z8, z3, a, b);
    CHECK(c.denominators.size() == 4);
    CHECK(c.target == pair_index(z8, z3, 2, 2));
    const MultSet vw = product_multset(z8, z3, u8, u3);
    CHECK(verify_certificate(make_product(z8, z3), vw, c).ok());
    CHECK_FALSE(c.strict);  // b repeats 1, so (3,1) and (7,1) each appear twice
  }
}

TEST_CASE("quotient_pushdown") {
  const FiniteRing z8 = make_zn(8);
  const MultSet u8 = units_of(z8);
  const QuotientResult q = make_quotient(z8, ideal_closure(z8, std::vector<int>{4}));
  REQUIRE(q.ring.order() == 4);

  SECTION("[1,1] for 2 projects unchanged") {
    const PushdownResult p =
        quotient_pushdown(z8, u8, make_certificate(2, {1, 1}), q.ring, q.projection);
    CHECK(p.certificate.target == 2);
    CHECK(p.certificate.denominators == std::vector<int>{1, 1});
    CHECK(verify_certificate(q.ring, p.wbar, p.certificate).ok());
  }

  SECTION("[3,7] for 2 loses strictness") {
    const PushdownResult p =
        quotient_pushdown(z8, u8, make_certificate(2, {3, 7}), q.ring, q.projection);
    CHECK(p.certificate.denominators == std::vector<int>{3, 3});
    CHECK_FALSE(p.certificate.strict);
    CHECK(verify_certificate(q.ring, p.wbar, p.certificate).ok());
  }

  SECTION("identity projection keeps the certificate") {
    const QuotientResult id = make_quotient(z8, ElementSet::from_list(8, {0}));
    const PushdownResult p =
        quotient_pushdown(z8, u8, make_certificate(2, {3, 7}), id.ring, id.projection);
    CHECK(p.certificate.denominators == std::vector<int>{3, 7});
    CHECK(p.certificate.strict);
  }

  SECTION("invalid input certificates are rejected") {
    CHECK_THROWS_AS(quotient_pushdown(z8, u8, make_certificate(3, {1, 1}), q.ring, q.projection),
                    std::invalid_argument);
  }

  SECTION("pushdown never breaks a verifying certificate") {
    std::mt19937 rng(11);
    for (int n : {4, 6, 8, 9, 12}) {
      const FiniteRing zn = make_zn(n);
      const MultSet w = mult_closure(zn, element_classes(zn).regulars.to_list());
      for (int g = 2; g < n; ++g) {
        if (n % g != 0) continue;
        const QuotientResult qq = make_quotient(zn, ideal_closure(zn, std::vector<int>{g}));
        for (int x = 0; x < n; ++x) {
          const ElementClassification c = classify_element(zn, w, x);
          if (!c.certificate) continue;
          const PushdownResult p = quotient_pushdown(zn, w, *c.certificate, qq.ring, qq.projection);
          REQUIRE(verify_certificate(qq.ring, p.wbar, p.certificate).ok());
        }
      }
    }
    (void)rng;
  }
}

TEST_CASE("localize_fg_algebra") {
  SECTION("Z2 -> Z2 x Z2 localized at (1,0)") {
    const FiniteRing z2 = make_zn(2);
    const FiniteRing r = make_product(z2, z2);
    RingMap phi{z2, r, {0, pair_index(z2, z2, 1, 1)}};
    const FgAlgebraLocalization fg =
        localize_fg_algebra(phi, mult_closure(z2, {}), {pair_index(z2, z2, 1, 0)});
    CHECK(fg.ru.model.order() == 2);
    CHECK_FALSE(fg.ru.is_zero_ring);
    for (int x = 0; x < fg.ru.model.order(); ++x)
      CHECK(verify_certificate(fg.ru.model, fg.vset, fg.certificate_for(x)).ok());
    CHECK(classify_ring(fg.ru.model, fg.vset).ring_egyptian);
  }

  SECTION("the trivial algebra reproduces the base localization") {
    const FiniteRing z6 = make_zn(6);
    const MultSet w = mult_closure(z6, element_classes(z6).regulars.to_list());
    const FgAlgebraLocalization fg = localize_fg_algebra(identity_map(z6), w, {1});
    CHECK(fg.ru.model.order() == 6);
    for (int x = 0; x < 6; ++x)
      CHECK(verify_certificate(fg.ru.model, fg.vset, fg.certificate_for(x)).ok());
  }

  SECTION("Z3 diagonal in Z3 x Z3 with generator (1,2)") {
    const FiniteRing z3 = make_zn(3);
    const FiniteRing r = make_product(z3, z3);
    std::vector<int> diag(3);
    for (int i = 0; i < 3; ++i) diag[i] = pair_index(z3, z3, i, i);
    RingMap phi{z3, r, diag};
    const FgAlgebraLocalization fg =
        localize_fg_algebra(phi, units_of(z3), {pair_index(z3, z3, 1, 2)});
    CHECK(classify_ring(fg.ru.model, fg.vset).ring_egyptian);
    for (int x = 0; x < fg.ru.model.order(); ++x)
      CHECK(verify_certificate(fg.ru.model, fg.vset, fg.certificate_for(x)).ok());
  }

  SECTION("generators that do not generate are rejected") {
    const FiniteRing z2 = make_zn(2);
    const FiniteRing r = make_product(z2, z2);
    RingMap phi{z2, r, {0, pair_index(z2, z2, 1, 1)}};
    CHECK_THROWS_AS(localize_fg_algebra(phi, mult_closure(z2, {}), {}), std::invalid_argument);
  }

  SECTION("a base ring that is not W-Egyptian is rejected") {
    const FiniteRing z2 = make_zn(2);
    const FiniteRing a = make_product(z2, z2);
    // W = {1}: (1,0) has no certificate over A
    CHECK_THROWS_AS(localize_fg_algebra(identity_map(a), mult_closure(a, {}), {a.one()}),
                    std::invalid_argument);
  }
}

TEST_CASE("build_retraction") {
  SECTION("identity embedding gives the localization map") {
    const FiniteRing z6 = make_zn(6);
    const RetractionResult ret = build_retraction(identity_map(z6), mult_closure(z6, {5}));
    CHECK(ret.all_ok());
    for (int x = 0; x < 6; ++x)
      CHECK(ret.retraction[static_cast<size_t>(x)] == ret.loc_a.loc_map[static_cast<size_t>(x)]);
  }

  SECTION("identity embedding with a collapsing localization") {
    const FiniteRing z6 = make_zn(6);
    const RetractionResult ret = build_retraction(identity_map(z6), mult_closure(z6, {2}));
    CHECK(ret.all_ok());
    CHECK(ret.loc_a.model.order() == 3);
    for (const Certificate& alt : ret.alt_certificates)
      CHECK(verify_certificate(ret.loc_r.source, ret.jw, alt).ok());
  }

  SECTION("diagonal Z2 in Z2 x Z2 is rejected: (1,0) has no certificate") {
    const FiniteRing z2 = make_zn(2);
    const FiniteRing r = make_product(z2, z2);
    RingMap j{z2, r, {0, pair_index(z2, z2, 1, 1)}};
    CHECK_THROWS_AS(build_retraction(j, mult_closure(z2, {})), std::invalid_argument);
  }

  SECTION("Z3 inside its dual numbers is rejected for W = units") {
    const FiniteRing z3 = make_zn(3);
    const FiniteRing dual = ufl_test::z3_dual_numbers();
    std::vector<int> embed(3);
    for (int i = 0; i < 3; ++i) embed[static_cast<size_t>(i)] = i;  // constants sit at 0,1,2
    RingMap j{z3, dual, embed};
    REQUIRE(is_ring_hom(j));
    // sums of reciprocals of {1,2} stay inside the constants, so the dual
    // number t has no certificate and classify-first rejects the input
    CHECK_THROWS_AS(build_retraction(j, units_of(z3)), std::invalid_argument);
  }

  SECTION("degenerate W passes trivially") {
    const FiniteRing z4 = make_zn(4);
    const RetractionResult ret = build_retraction(identity_map(z4), mult_closure(z4, {2}));
    CHECK(ret.all_ok());
    CHECK(ret.loc_a.is_zero_ring);
  }

  SECTION("supplied certificates are validated") {
    const FiniteRing z6 = make_zn(6);
    const MultSet w = mult_closure(z6, {5});
    std::vector<Certificate> certs;
    for (int x = 0; x < 6; ++x) certs.push_back(minimal_certificate(z6, w, x, false));
    CHECK(build_retraction(identity_map(z6), w, &certs).all_ok());
    certs[2] = make_certificate(2, {5});  // 1/5 = 5 != 2
    CHECK_THROWS_AS(build_retraction(identity_map(z6), w, &certs), std::invalid_argument);
  }

  SECTION("non-injective maps are rejected") {
    const FiniteRing z2 = make_zn(2);
    const FiniteRing z1 = make_zn(1);
    RingMap collapse{z2, z1, {0, 0}};
    CHECK_THROWS_AS(build_retraction(collapse, mult_closure(z2, {})), std::invalid_argument);
  }
}
