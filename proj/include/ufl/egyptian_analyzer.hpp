#pragma once

// Decides W-Egyptian and strictly W-Egyptian membership by exhaustive
// reachability over the localized model, and reconstructs minimal
// certificates. Non-strict reachability is a BFS over the additive
// monoid generated by the reciprocals; strict reachability is a bounded
// subset-sum DP keyed on distinct reciprocal values with multiplicities,
// since distinctness is over W-elements rather than reciprocal values.

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufl/certificate.hpp"
#include "ufl/localization.hpp"

namespace ufl {

enum class ElementStatus { NotEgyptian, Egyptian, StrictlyEgyptian };

inline const char* to_string(ElementStatus s) {
  switch (s) {
    case ElementStatus::NotEgyptian: return "not-egyptian";
    case ElementStatus::Egyptian: return "egyptian";
    case ElementStatus::StrictlyEgyptian: return "strictly-egyptian";
  }
  return "?";
}

// All model values expressible as a sum of reciprocals of W-elements,
// repetitions allowed, including the empty sum. BFS fixpoint; stabilizes
// in at most |model| rounds.
inline ElementSet reachable_nonstrict(const LocalizedModel& lm) {
  const FiniteRing& m = lm.model;
  std::vector<int> recips;
  for (int w : lm.wset.members.to_list()) recips.push_back(lm.recip[static_cast<size_t>(w)]);
  ElementSet reach(m.order());
  reach.insert(m.zero());
  std::vector<int> frontier{m.zero()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int v : frontier)
      for (int u : recips) {
        const int t = m.add(v, u);
        if (!reach.contains(t)) {
          reach.insert(t);
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  return reach;
}

// All model values expressible as a sum of reciprocals of pairwise
// distinct W-elements. Grouped by reciprocal value u with multiplicity
// m_u = number of W-elements sharing u; the DP admits 0..m_u copies of u.
inline ElementSet reachable_strict(const LocalizedModel& lm) {
  const FiniteRing& m = lm.model;
  std::map<int, int> multiplicity;  // reciprocal value -> count
  for (int w : lm.wset.members.to_list()) ++multiplicity[lm.recip[static_cast<size_t>(w)]];
  std::vector<bool> reach(static_cast<size_t>(m.order()), false);
  reach[static_cast<size_t>(m.zero())] = true;
  for (const auto& [u, count] : multiplicity) {
    std::vector<bool> layer = reach;  // c copies of u applied so far
    for (int c = 1; c <= count; ++c) {
      std::vector<bool> shifted(static_cast<size_t>(m.order()), false);
      for (int v = 0; v < m.order(); ++v)
        if (layer[static_cast<size_t>(v)]) shifted[static_cast<size_t>(m.add(v, u))] = true;
      for (int v = 0; v < m.order(); ++v)
        if (shifted[static_cast<size_t>(v)]) reach[static_cast<size_t>(v)] = true;
      layer = std::move(shifted);
    }
  }
  ElementSet out(m.order());
  for (int v = 0; v < m.order(); ++v)
    if (reach[static_cast<size_t>(v)]) out.insert(v);
  return out;
}

namespace detail {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

// Suffix-minimum tables over the W-elements sorted by index. rep_min
// allows repeating an element, strict_min uses each element at most once.
// Both support reconstruction of the lexicographically least minimal
// denominator list.
struct CertSearch {
  const LocalizedModel* lm = nullptr;
  std::vector<int> wlist;            // ascending element indices
  std::vector<int> recips;           // parallel reciprocal values in the model
  std::vector<std::vector<int>> rep_min;     // [i][v]: elements wlist[i..], repeats allowed
  std::vector<std::vector<int>> strict_min;  // [i][v]: elements wlist[i..], each at most once

  explicit CertSearch(const LocalizedModel& model) : lm(&model) {
    const FiniteRing& m = lm->model;
    wlist = lm->wset.members.to_list();
    for (int w : wlist) recips.push_back(lm->recip[static_cast<size_t>(w)]);
    const size_t M = wlist.size();
    rep_min.assign(M + 1, std::vector<int>(static_cast<size_t>(m.order()), kUnreachable));
    strict_min = rep_min;
    rep_min[M][static_cast<size_t>(m.zero())] = 0;
    strict_min[M][static_cast<size_t>(m.zero())] = 0;
    for (size_t i = M; i-- > 0;) {
      const int u = recips[i];
      for (int v = 0; v < m.order(); ++v) {
        int best = strict_min[i + 1][static_cast<size_t>(v)];
        const int with = strict_min[i + 1][static_cast<size_t>(m.sub(v, u))];
        if (with != kUnreachable) best = std::min(best, 1 + with);
        strict_min[i][static_cast<size_t>(v)] = best;
      }
      for (int v = 0; v < m.order(); ++v) {
        // take c >= 0 copies of wlist[i], then continue with the rest
        int best = kUnreachable;
        int shifted = v;
        for (int c = 0; c <= m.order(); ++c) {
          const int rest = rep_min[i + 1][static_cast<size_t>(shifted)];
          if (rest != kUnreachable) best = std::min(best, c + rest);
          shifted = m.sub(shifted, u);
        }
        rep_min[i][static_cast<size_t>(v)] = best;
      }
    }
  }

  int min_len(int model_value, bool strict) const {
    const auto& t = strict ? strict_min : rep_min;
    const int len = t[0][static_cast<size_t>(model_value)];
    return len == kUnreachable ? -1 : len;
  }

  // Lexicographically least denominator list among the minimum-length
  // certificates for the given model value.
  std::vector<int> reconstruct(int model_value, bool strict) const {
    const FiniteRing& m = lm->model;
    const auto& t = strict ? strict_min : rep_min;
    int budget = t[0][static_cast<size_t>(model_value)];
    if (budget == kUnreachable)
      throw std::domain_error(strict ? "element is not strictly W-Egyptian"
                                     : "element is not W-Egyptian");
    std::vector<int> denoms;
    int v = model_value;
    size_t i = 0;
    while (budget > 0) {
      bool advanced = false;
      for (size_t j = i; j < wlist.size(); ++j) {
        const int rest_v = m.sub(v, recips[j]);
        const int rest = strict ? strict_min[j + 1][static_cast<size_t>(rest_v)]
                                : rep_min[j][static_cast<size_t>(rest_v)];
        if (rest == budget - 1) {
          denoms.push_back(wlist[j]);
          v = rest_v;
          i = strict ? j + 1 : j;
          --budget;
          advanced = true;
          break;
        }
      }
      if (!advanced) throw std::logic_error("certificate reconstruction lost its way");
    }
    return denoms;
  }
};

}  // namespace detail

inline CertificateCheck verify_certificate(const LocalizedModel& lm, const Certificate& cert) {
  return detail::verify_unit_fraction_sum(lm, cert.target, lm.source.one(), cert.denominators,
                                          cert.strict);
}

// Independent checker: denominators in W, reciprocal sum correct in the
// model, cleared-denominator identity via the definitional oracle, strict
// flag consistent with pairwise distinctness.
inline CertificateCheck verify_certificate(const FiniteRing& r, const MultSet& w,
                                           const Certificate& cert) {
  return verify_certificate(localize(r, w), cert);
}

// Minimum-length certificate for x (throws std::domain_error when x is not
// reachable). Ties are broken toward the lexicographically least
// denominator index sequence.
inline Certificate minimal_certificate(const LocalizedModel& lm, const detail::CertSearch& search,
                                       int x, bool strict) {
  if (!lm.source.valid_element(x))
    throw std::invalid_argument("minimal_certificate: element out of range");
  const int v = lm.loc_map[static_cast<size_t>(x)];
  return make_certificate(x, search.reconstruct(v, strict));
}

inline Certificate minimal_certificate(const FiniteRing& r, const MultSet& w, int x, bool strict) {
  const LocalizedModel lm = localize(r, w);
  const detail::CertSearch search(lm);
  return minimal_certificate(lm, search, x, strict);
}

struct ElementClassification {
  ElementStatus status = ElementStatus::NotEgyptian;
  std::optional<Certificate> certificate;  // minimal; strict when strictly reachable
  bool killed_by_localization = false;     // loc_map(x) = 0 though x != 0
};

inline ElementClassification classify_element(const LocalizedModel& lm,
                                              const detail::CertSearch& search, int x) {
  if (!lm.source.valid_element(x))
    throw std::invalid_argument("classify_element: element out of range");
  const int v = lm.loc_map[static_cast<size_t>(x)];
  ElementClassification out;
  out.killed_by_localization = (v == lm.model.zero() && x != 0);
  if (search.min_len(v, /*strict=*/true) >= 0) {
    out.status = ElementStatus::StrictlyEgyptian;
    out.certificate = minimal_certificate(lm, search, x, true);
  } else if (search.min_len(v, /*strict=*/false) >= 0) {
    out.status = ElementStatus::Egyptian;
    out.certificate = minimal_certificate(lm, search, x, false);
  }
  return out;
}

inline ElementClassification classify_element(const FiniteRing& r, const MultSet& w, int x) {
  const LocalizedModel lm = localize(r, w);
  const detail::CertSearch search(lm);
  return classify_element(lm, search, x);
}

struct ClassificationReport {
  std::string ring_expr;
  std::vector<int> w_generators;
  bool degenerate = false;  // 0 in W, so the localization is the zero ring
  std::vector<ElementStatus> status;
  std::vector<int> min_len;         // minimal certificate length, -1 when unreachable
  std::vector<int> min_strict_len;  // minimal strict length, -1 when unreachable
  std::vector<bool> killed;         // killed-by-localization flags
  bool ring_egyptian = false;           // every nonzero element at least Egyptian
  bool ring_strictly_egyptian = false;  // every nonzero element strictly Egyptian

  int max_min_cert_len() const {
    int best = -1;
    for (size_t x = 1; x < min_len.size(); ++x) {
      if (min_len[x] < 0) return -1;
      best = std::max(best, min_len[x]);
    }
    if (min_len.size() == 1) best = 0;
    return best;
  }
};

// Full per-element sweep; ring verdicts are the conjunction over the
// nonzero elements.
inline ClassificationReport classify_ring(const FiniteRing& r, const MultSet& w) {
  const LocalizedModel lm = localize(r, w);
  const detail::CertSearch search(lm);
  ClassificationReport rep;
  rep.ring_expr = r.origin().expr;
  rep.w_generators = w.generators;
  rep.degenerate = lm.is_zero_ring;
  rep.status.resize(static_cast<size_t>(r.order()));
  rep.min_len.assign(static_cast<size_t>(r.order()), -1);
  rep.min_strict_len.assign(static_cast<size_t>(r.order()), -1);
  rep.killed.assign(static_cast<size_t>(r.order()), false);
  rep.ring_egyptian = true;
  rep.ring_strictly_egyptian = true;
  for (int x = 0; x < r.order(); ++x) {
    const int v = lm.loc_map[static_cast<size_t>(x)];
    rep.killed[static_cast<size_t>(x)] = (v == lm.model.zero() && x != 0);
    rep.min_len[static_cast<size_t>(x)] = search.min_len(v, false);
    rep.min_strict_len[static_cast<size_t>(x)] = search.min_len(v, true);
    ElementStatus s = ElementStatus::NotEgyptian;
    if (rep.min_strict_len[static_cast<size_t>(x)] >= 0)
      s = ElementStatus::StrictlyEgyptian;
    else if (rep.min_len[static_cast<size_t>(x)] >= 0)
      s = ElementStatus::Egyptian;
    rep.status[static_cast<size_t>(x)] = s;
    if (x != 0) {
      if (s == ElementStatus::NotEgyptian) rep.ring_egyptian = false;
      if (s != ElementStatus::StrictlyEgyptian) rep.ring_strictly_egyptian = false;
    }
  }
  return rep;
}

}  // namespace ufl
