#pragma once

// Truncated power series over a finite coefficient ring: arithmetic mod
// X^k, inversion, and the two-denominator decomposition f = 1/X +
// 1/(X*(Xf-1)^-1). Everything is a statement mod X^k; X is not regular in
// the truncation, so distinctness of the two denominators is checked
// syntactically, with the X^2 branch as fallback.

#include <stdexcept>
#include <vector>

#include "ufl/ring_core.hpp"

namespace ufl {

// Coefficient vector, low degree first, of length k.
using TruncatedSeries = std::vector<int>;

class SeriesRing {
 public:
  SeriesRing(FiniteRing coeff, int trunc) : coeff_(std::move(coeff)), trunc_(trunc) {
    if (trunc_ < 1) throw std::invalid_argument("series truncation order must be at least 1");
  }

  const FiniteRing& coeff() const { return coeff_; }
  int trunc() const { return trunc_; }

  TruncatedSeries zero() const { return TruncatedSeries(static_cast<size_t>(trunc_), 0); }
  TruncatedSeries one() const { return constant(coeff_.one()); }
  TruncatedSeries constant(int c) const {
    check_coeff(c);
    TruncatedSeries f = zero();
    f[0] = c;
    return f;
  }
  // The series X (zero when k = 1).
  TruncatedSeries x() const {
    TruncatedSeries f = zero();
    if (trunc_ >= 2) f[1] = coeff_.one();
    return f;
  }
  TruncatedSeries monomial(int c, int degree) const {
    check_coeff(c);
    if (degree < 0) throw std::invalid_argument("monomial degree must be nonnegative");
    TruncatedSeries f = zero();
    if (degree < trunc_) f[static_cast<size_t>(degree)] = c;
    return f;
  }

  bool is_zero(const TruncatedSeries& f) const {
    check_series(f);
    for (int c : f)
      if (c != 0) return false;
    return true;
  }

  TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) const {
    check_series(f);
    check_series(g);
    TruncatedSeries h = zero();
    for (int i = 0; i < trunc_; ++i)
      h[static_cast<size_t>(i)] = coeff_.add(f[static_cast<size_t>(i)], g[static_cast<size_t>(i)]);
    return h;
  }

  TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) const {
    check_series(f);
    check_series(g);
    TruncatedSeries h = zero();
    for (int i = 0; i < trunc_; ++i)
      h[static_cast<size_t>(i)] = coeff_.sub(f[static_cast<size_t>(i)], g[static_cast<size_t>(i)]);
    return h;
  }

  TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) const {
    check_series(f);
    check_series(g);
    TruncatedSeries h = zero();
    for (int i = 0; i < trunc_; ++i) {
      if (f[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; i + j < trunc_; ++j) {
        if (g[static_cast<size_t>(j)] == 0) continue;
        const size_t k = static_cast<size_t>(i + j);
        h[k] = coeff_.add(h[k], coeff_.mul(f[static_cast<size_t>(i)], g[static_cast<size_t>(j)]));
      }
    }
    return h;
  }

  // Inverse mod X^k; requires the constant term to be a unit of the
  // coefficient ring. Standard recurrence g_n = -c0^-1 * sum f_i g_{n-i}.
  TruncatedSeries invert(const TruncatedSeries& f) const {
    check_series(f);
    const int c0 = f[0];
    int c0_inv = -1;
    for (int t = 0; t < coeff_.order(); ++t)
      if (coeff_.mul(c0, t) == coeff_.one()) {
        c0_inv = t;
        break;
      }
    if (c0_inv < 0) throw std::domain_error("series_invert: constant term is not a unit");
    TruncatedSeries g = zero();
    g[0] = c0_inv;
    for (int n = 1; n < trunc_; ++n) {
      int s = 0;
      for (int i = 1; i <= n; ++i)
        s = coeff_.add(s, coeff_.mul(f[static_cast<size_t>(i)], g[static_cast<size_t>(n - i)]));
      g[static_cast<size_t>(n)] = coeff_.mul(c0_inv, coeff_.neg(s));
    }
    return g;
  }

 private:
  void check_coeff(int c) const {
    if (!coeff_.valid_element(c))
      throw std::invalid_argument("series coefficient out of range for the coefficient ring");
  }
  void check_series(const TruncatedSeries& f) const {
    if (static_cast<int>(f.size()) != trunc_)
      throw std::invalid_argument("series has the wrong number of coefficients");
    for (int c : f) check_coeff(c);
  }

  FiniteRing coeff_;
  int trunc_;
};

inline TruncatedSeries series_invert(const SeriesRing& sr, const TruncatedSeries& f) {
  return sr.invert(f);
}

struct SeriesJacobsonCert {
  TruncatedSeries d1, d2;  // the two denominators actually returned
  TruncatedSeries u;       // (Xf - 1)^-1, the first-branch inverse
  bool used_x2_fallback = false;
  bool x_identity_ok = false;  // X*u*f = u + 1 mod X^k (first branch, always checked)
  bool identity_ok = false;    // cleared identity for the returned branch
  bool distinct = false;       // d1 != d2 as truncated series
};

// Two-denominator decomposition of f over the multiplicative set generated
// by X and the units: f = 1/j + 1/(j*(jf-1)^-1) with j = X. When the two
// denominators coincide as truncated series (possible only when 2 = 0 in
// the coefficient ring and f vanishes below degree k-2), retries with
// j = X^2. The fallback can itself coincide under truncation; the report
// says so rather than papering over it.
inline SeriesJacobsonCert series_jacobson_cert(const SeriesRing& sr, const TruncatedSeries& f) {
  if (sr.trunc() < 2)
    throw std::invalid_argument("series_jacobson_cert: truncation order must be at least 2");
  if (sr.is_zero(f)) throw std::domain_error("series_jacobson_cert: f must be nonzero");

  const TruncatedSeries x = sr.x();
  const TruncatedSeries u = sr.invert(sr.sub(sr.mul(x, f), sr.one()));

  SeriesJacobsonCert out;
  out.u = u;
  out.x_identity_ok = (sr.mul(sr.mul(x, u), f) == sr.add(u, sr.one()));
  out.d1 = x;
  out.d2 = sr.mul(x, u);
  out.identity_ok = out.x_identity_ok;
  out.distinct = (out.d1 != out.d2);

  if (!out.distinct) {
    const TruncatedSeries x2 = sr.mul(x, x);
    const TruncatedSeries u2 = sr.invert(sr.sub(sr.mul(x2, f), sr.one()));
    out.used_x2_fallback = true;
    out.d1 = x2;
    out.d2 = sr.mul(x2, u2);
    out.identity_ok = (sr.mul(sr.mul(x2, u2), f) == sr.add(u2, sr.one()));
    out.distinct = (out.d1 != out.d2);
  }
  return out;
}

}  // namespace ufl
