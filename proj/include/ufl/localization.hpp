#pragma once

// Multiplicative sets and a concrete finite model of the localization
// W^-1 R. The model is the quotient R/K with K = {r : v r = 0 for some
// v in W}; images of W are regular there, hence invertible, so formal
// fractions are never needed. The definitional equality oracle loc_eq is
// kept alongside as an independent cross-check of exactly that claim.

#include <stdexcept>
#include <string>
#include <vector>

#include "ufl/certificate.hpp"
#include "ufl/ring_core.hpp"

namespace ufl {

// A multiplicatively closed subset together with the generators it was
// built from. Always contains 1.
struct MultSet {
  ElementSet members;
  std::vector<int> generators;

  bool contains(int x) const { return members.contains(x); }
};

// Smallest multiplicatively closed superset of gens (plus 1).
inline MultSet mult_closure(const FiniteRing& r, const std::vector<int>& gens) {
  for (int g : gens)
    if (!r.valid_element(g)) throw std::invalid_argument("mult_closure: generator out of range");
  ElementSet members(r.order());
  members.insert(r.one());
  for (int g : gens) members.insert(g);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<int> xs = members.to_list();
    for (int x : xs)
      for (int y : xs) {
        const int p = r.mul(x, y);
        if (!members.contains(p)) {
          members.insert(p);
          changed = true;
        }
      }
  }
  return MultSet{std::move(members), gens};
}

// A formal fraction num/den over (R, W); den must lie in W.
struct Fraction {
  int num = 0;
  int den = 1;
};

// Finite model of W^-1 R.
struct LocalizedModel {
  FiniteRing source;
  FiniteRing model;  // source / kernel
  MultSet wset;
  ElementSet kernel;          // {r : exists v in W with v r = 0}
  std::vector<int> loc_map;   // source element -> model element
  std::vector<int> recip;     // source element w in W -> inverse of its image; -1 otherwise
  bool is_zero_ring = false;  // equivalently: 0 in W, equivalently |model| = 1

  int recip_of(int w) const {
    if (!wset.contains(w)) throw std::invalid_argument("recip_of: element is not in W");
    return recip[static_cast<size_t>(w)];
  }
};

inline LocalizedModel localize(const FiniteRing& r, const MultSet& w) {
  if (w.members.universe() != r.order())
    throw std::invalid_argument("localize: multiplicative set is over a different ring");
  if (!w.contains(r.one()))
    throw std::invalid_argument("localize: multiplicative set does not contain 1");
  const std::vector<int> wlist = w.members.to_list();

  ElementSet kernel(r.order());
  for (int x = 0; x < r.order(); ++x)
    for (int v : wlist)
      if (r.mul(v, x) == 0) {
        kernel.insert(x);
        break;
      }

  QuotientResult q = make_quotient(r, kernel);
  std::vector<int> recip(static_cast<size_t>(r.order()), -1);
  for (int wv : wlist) {
    const int image = q.projection[static_cast<size_t>(wv)];
    int inv = -1;
    for (int t = 0; t < q.ring.order(); ++t)
      if (q.ring.mul(image, t) == q.ring.one()) {
        inv = t;
        break;
      }
    if (inv < 0)
      throw std::logic_error("localize: image of a W-element is not invertible in R/K");
    recip[static_cast<size_t>(wv)] = inv;
  }

  const bool zero_in_w = w.contains(0);
  if (zero_in_w != (q.ring.order() == 1))
    throw std::logic_error("localize: zero-ring flag disagrees with the model order");

  LocalizedModel m{r,           std::move(q.ring), w, std::move(kernel),
                   std::move(q.projection), std::move(recip), zero_in_w};
  return m;
}

// Definitional localization equality: a = b in W^-1 R iff some v in W
// kills a.num*b.den - b.num*a.den. Used as an independent oracle for the
// quotient model.
inline bool loc_eq(const FiniteRing& r, const MultSet& w, const Fraction& a, const Fraction& b) {
  if (!w.contains(a.den) || !w.contains(b.den))
    throw std::invalid_argument("loc_eq: fraction denominator is not in W");
  if (!r.valid_element(a.num) || !r.valid_element(b.num))
    throw std::invalid_argument("loc_eq: fraction numerator out of range");
  const int diff = r.sub(r.mul(a.num, b.den), r.mul(b.num, a.den));
  for (int v : w.members.to_list())
    if (r.mul(v, diff) == 0) return true;
  return false;
}

namespace detail {

// Shared verification core. Checks that target_num/target_den equals the
// sum of reciprocals of `denoms`, once in the model and once through the
// definitional oracle after clearing denominators.
inline CertificateCheck verify_unit_fraction_sum(const LocalizedModel& lm, int target_num,
                                                 int target_den, const std::vector<int>& denoms,
                                                 bool strict_flag) {
  const FiniteRing& r = lm.source;
  CertificateCheck out;

  out.denominators_ok = r.valid_element(target_num) && lm.wset.contains(target_den);
  for (int d : denoms)
    if (!r.valid_element(d) || !lm.wset.contains(d)) out.denominators_ok = false;
  if (!out.denominators_ok) {
    out.detail = "a denominator (or the target) lies outside W";
    return out;
  }

  const FiniteRing& m = lm.model;
  int sum = m.zero();
  for (int d : denoms) sum = m.add(sum, lm.recip[static_cast<size_t>(d)]);
  const int rhs = m.mul(lm.loc_map[static_cast<size_t>(target_num)],
                        lm.recip[static_cast<size_t>(target_den)]);
  out.model_sum_ok = (sum == rhs);

  // Cleared form: the sum of reciprocals equals S/P with P the product of
  // all denominators and S the sum of the products omitting one factor.
  int product = r.one();
  for (int d : denoms) product = r.mul(product, d);
  int cleared_sum = r.zero();
  for (size_t i = 0; i < denoms.size(); ++i) {
    int term = r.one();
    for (size_t j = 0; j < denoms.size(); ++j)
      if (j != i) term = r.mul(term, denoms[j]);
    cleared_sum = r.add(cleared_sum, term);
  }
  out.loc_eq_ok =
      loc_eq(r, lm.wset, Fraction{target_num, target_den}, Fraction{cleared_sum, product});

  out.strict_flag_ok = (strict_flag == pairwise_distinct(denoms));

  if (!out.model_sum_ok)
    out.detail = "reciprocal sum does not match the target in the localized model";
  else if (!out.loc_eq_ok)
    out.detail = "cleared-denominator identity fails the definitional oracle";
  else if (!out.strict_flag_ok)
    out.detail = "strict flag disagrees with pairwise distinctness";
  return out;
}

}  // namespace detail

// Certificate for a genuine fraction target r/w, as produced by rescaling.
struct FractionCertificate {
  Fraction target;
  std::vector<int> denominators;
  bool strict = true;
};

inline CertificateCheck verify_fraction_certificate(const FiniteRing& r, const MultSet& w,
                                                    const FractionCertificate& cert) {
  return detail::verify_unit_fraction_sum(localize(r, w), cert.target.num, cert.target.den,
                                          cert.denominators, cert.strict);
}

// Turns a certificate for r/1 into one for r/w by multiplying every
// denominator by w. Strictness is recomputed: multiplication by w can
// merge previously distinct denominators.
inline FractionCertificate rescale_certificate(const FiniteRing& r, const MultSet& w,
                                               const Certificate& cert, int scale) {
  if (!w.contains(scale))
    throw std::invalid_argument("rescale_certificate: scaling element is not in W");
  if (!r.valid_element(cert.target))
    throw std::invalid_argument("rescale_certificate: certificate target out of range");
  for (int d : cert.denominators)
    if (!w.contains(d))
      throw std::invalid_argument("rescale_certificate: certificate denominator is not in W");
  FractionCertificate out;
  out.target = Fraction{cert.target, scale};
  out.denominators.reserve(cert.denominators.size());
  for (int d : cert.denominators) out.denominators.push_back(r.mul(d, scale));
  out.strict = pairwise_distinct(out.denominators);
  return out;
}

}  // namespace ufl
