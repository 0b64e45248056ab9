#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ufl/series_lab.hpp"

using namespace ufl;

TEST_CASE("series inversion") {
  SECTION("geometric series") {
    const SeriesRing s(make_zn(5), 4);
    CHECK(s.invert({1, 4, 0, 0}) == TruncatedSeries{1, 1, 1, 1});  // (1 - X)^-1
    CHECK(s.invert(s.one()) == s.one());
  }

  SECTION("3 + 2X over Z8") {
    const SeriesRing s(make_zn(8), 3);
    const TruncatedSeries f{3, 2, 0};
    const TruncatedSeries g = s.invert(f);
    CHECK(g[0] == 3);  // 3*3 = 1 mod 8
    CHECK(s.mul(f, g) == s.one());
  }

  SECTION("non-unit constant terms are rejected") {
    const SeriesRing s(make_zn(4), 3);
    CHECK_THROWS_AS(s.invert({2, 1, 0}), std::domain_error);
    CHECK_THROWS_AS(s.invert(s.zero()), std::domain_error);
  }

  SECTION("f * invert(f) = 1 for all invertible f, small exhaustive sweep") {
    for (int n : {2, 3, 4, 5}) {
      const FiniteRing zn = make_zn(n);
      const SeriesRing s(zn, 4);
      for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = 0; c1 < n; ++c1)
          for (int c2 = 0; c2 < n; ++c2) {
            const TruncatedSeries f{c0, c1, c2, 1};
            bool unit = false;
            for (int t = 0; t < n; ++t) unit = unit || zn.mul(c0, t) == zn.one();
            if (!unit) continue;
            REQUIRE(s.mul(f, s.invert(f)) == s.one());
          }
    }
  }
}

TEST_CASE("series_jacobson_cert") {
  SECTION("f = 1 over Z5") {
    const SeriesRing s(make_zn(5), 5);
    const SeriesJacobsonCert c = series_jacobson_cert(s, s.one());
    CHECK(c.x_identity_ok);
    CHECK(c.identity_ok);
    CHECK_FALSE(c.used_x2_fallback);
    CHECK(c.distinct);
    CHECK(c.d1 == s.x());
    // u = (X-1)^-1 = -(1 + X + X^2 + ...)
    CHECK(c.u == TruncatedSeries{4, 4, 4, 4, 4});
  }

  SECTION("f = 0 is rejected") {
    const SeriesRing s(make_zn(5), 4);
    CHECK_THROWS_AS(series_jacobson_cert(s, s.zero()), std::domain_error);
  }

  SECTION("f = 2 over Z3 takes the first branch") {
    const SeriesRing s(make_zn(3), 4);
    const SeriesJacobsonCert c = series_jacobson_cert(s, s.constant(2));
    CHECK_FALSE(c.used_x2_fallback);
    CHECK(c.identity_ok);
    CHECK(c.distinct);
  }

  SECTION("the collision family: 2 = 0 and f supported above degree k-3") {
    const SeriesRing s(make_zn(2), 4);
    const SeriesJacobsonCert c = series_jacobson_cert(s, s.monomial(1, 2));  // f = X^2
    CHECK(c.used_x2_fallback);
    CHECK(c.x_identity_ok);
    CHECK(c.identity_ok);
    // the fallback collides under truncation as well; the report says so
    CHECK_FALSE(c.distinct);
  }

  SECTION("exhaustive sweep: identity always holds, collisions only in the known family") {
    for (int n = 2; n <= 6; ++n) {
      const FiniteRing zn = make_zn(n);
      const bool two_is_zero = (zn.add(1, 1) == 0);
      for (int k = 2; k <= 5; ++k) {
        const SeriesRing s(zn, k);
        std::vector<int> coeffs(static_cast<size_t>(k), 0);
        // enumerate all series with at most two nonzero coefficients
        for (int i = 0; i < k; ++i)
          for (int ci = 1; ci < n; ++ci)
            for (int j = i; j < k; ++j)
              for (int cj = (j == i ? 0 : 1); cj < (j == i ? 1 : n); ++cj) {
                TruncatedSeries f = s.zero();
                f[static_cast<size_t>(i)] = ci;
                if (j != i) f[static_cast<size_t>(j)] = cj;
                const SeriesJacobsonCert c = series_jacobson_cert(s, f);
                REQUIRE(c.x_identity_ok);
                REQUIRE(c.identity_ok);
                if (!c.distinct) {
                  REQUIRE(c.used_x2_fallback);
                  REQUIRE(two_is_zero);
                  // X-branch collision forces f = 0 below degree k-2
                  for (int d = 0; d + 2 < k; ++d) REQUIRE(f[static_cast<size_t>(d)] == 0);
                }
              }
        (void)coeffs;
      }
    }
  }

  SECTION("randomized sweep over Z2..Z9") {
    std::mt19937 rng(2024);
    for (int n = 2; n <= 9; ++n)
      for (int k = 2; k <= 8; ++k) {
        const SeriesRing s(make_zn(n), k);
        for (int trial = 0; trial < 50; ++trial) {
          TruncatedSeries f(static_cast<size_t>(k));
          bool zero = true;
          for (int i = 0; i < k; ++i) {
            f[static_cast<size_t>(i)] = static_cast<int>(rng() % n);
            zero = zero && f[static_cast<size_t>(i)] == 0;
          }
          if (zero) f[0] = 1;
          const SeriesJacobsonCert c = series_jacobson_cert(s, f);
          REQUIRE(c.x_identity_ok);
          REQUIRE(c.identity_ok);
          REQUIRE((c.distinct || c.used_x2_fallback));
        }
      }
  }
}
