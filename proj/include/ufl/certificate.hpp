#pragma once

// Unit-fraction certificates: the denominator lists that witness a
// W-Egyptian representation, and the result of checking one.

#include <set>
#include <string>
#include <vector>

namespace ufl {

// Witness that target/1 equals the sum of the reciprocals of the listed
// denominators in the localization at W. `strict` records whether the
// denominators are pairwise distinct as ring elements; it is always
// recomputed from the list, never assumed. The empty list certifies the
// zero element of the localization.
struct Certificate {
  int target = 0;
  std::vector<int> denominators;
  bool strict = true;
};

inline bool pairwise_distinct(const std::vector<int>& xs) {
  std::set<int> seen(xs.begin(), xs.end());
  return seen.size() == xs.size();
}

inline Certificate make_certificate(int target, std::vector<int> denominators) {
  Certificate c;
  c.target = target;
  c.strict = pairwise_distinct(denominators);
  c.denominators = std::move(denominators);
  return c;
}

// Outcome of verifying a certificate. The sum is checked twice, through
// the localized model's arithmetic and through the definitional equality
// oracle with cleared denominators; both must agree for the certificate
// to pass.
struct CertificateCheck {
  bool denominators_ok = false;  // all denominators (and the target's) lie in W
  bool model_sum_ok = false;     // reciprocal sum matches in the localized model
  bool loc_eq_ok = false;        // cleared-denominator identity holds definitionally
  bool strict_flag_ok = false;   // strict flag agrees with pairwise distinctness
  std::string detail;            // empty when everything passed

  bool ok() const { return denominators_ok && model_sum_ok && loc_eq_ok && strict_flag_ok; }
  explicit operator bool() const { return ok(); }
};

}  // namespace ufl
