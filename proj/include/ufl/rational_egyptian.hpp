#pragma once

// Classical Egyptian fractions over the rationals with exact arithmetic:
// the greedy expansion, distinctification via 1/n = 1/(n+1) + 1/(n(n+1)),
// exhaustive bounded search for k-term representations, and the
// unit-fraction lower bound for integers.

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ufl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // lowest terms, positive denominator

struct UnitFractionList {
  std::vector<BigInt> denominators;
  bool distinct = true;
};

inline Rational unit_fraction_sum(const std::vector<BigInt>& denominators) {
  Rational s = 0;
  for (const BigInt& d : denominators) {
    if (d <= 0) throw std::invalid_argument("unit fraction denominators must be positive");
    s += Rational(1, d);
  }
  return s;
}

inline bool denominators_distinct(const std::vector<BigInt>& denominators) {
  std::set<BigInt> seen(denominators.begin(), denominators.end());
  return seen.size() == denominators.size();
}

// Greedy expansion: repeatedly subtract 1/ceil(den/num). While the
// remainder is at least 1 this peels off 1/1, so integer parts come out
// as repeated ones; once the remainder drops below 1 the numerators
// strictly decrease and the denominators strictly increase, giving
// termination and distinctness of the tail.
inline UnitFractionList greedy_decompose(const Rational& q) {
  if (q <= 0) throw std::domain_error("greedy_decompose: input must be positive");
  UnitFractionList out;
  Rational r = q;
  while (r > 0) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    const BigInt d = (den + num - 1) / num;  // ceil(den/num)
    out.denominators.push_back(d);
    r -= Rational(1, d);
  }
  out.distinct = denominators_distinct(out.denominators);
  return out;
}

struct SplitStats {
  long steps = 0;
};

// How many splitting steps we tolerate before concluding something is
// wrong. Far above anything the tests observe.
inline constexpr long kSplitStepLimit = 1000000;

// Rewrites the sum with pairwise distinct denominators by repeatedly
// replacing one element of a duplicate pair 1/n with 1/(n+1) + 1/(n(n+1)).
// The smallest duplicated denominator is processed first; everything below
// it is already final, so the working front only moves up.
inline UnitFractionList split_distinctify(const UnitFractionList& l, SplitStats* stats = nullptr) {
  std::multiset<BigInt> pool;
  for (const BigInt& d : l.denominators) {
    if (d <= 0) throw std::invalid_argument("split_distinctify: denominators must be positive");
    pool.insert(d);
  }
  long steps = 0;
  bool again = true;
  while (again) {
    again = false;
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      auto next = std::next(it);
      if (next != pool.end() && *next == *it) {
        const BigInt n = *it;
        pool.erase(it);
        pool.insert(n + 1);
        pool.insert(n * (n + 1));
        if (++steps > kSplitStepLimit)
          throw std::runtime_error("split_distinctify: step limit exceeded");
        again = true;
        break;
      }
    }
  }
  if (stats) stats->steps = steps;
  UnitFractionList out;
  out.denominators.assign(pool.begin(), pool.end());
  out.distinct = true;
  return out;
}

namespace detail {

// rem = p/q in lowest terms. Chooses denominators in strictly ascending
// order; each remaining fraction bounds the next denominator between
// ceil(q/p) and slots*q/p.
inline bool term_search(const BigInt& p, const BigInt& q, int slots, const BigInt& min_den,
                        const BigInt& max_den, std::vector<BigInt>& path) {
  if (p <= 0) return false;
  if (slots == 1) {
    if (p == 1 && q >= min_den && q <= max_den) {
      path.push_back(q);
      return true;
    }
    return false;
  }
  BigInt lo = (q + p - 1) / p;
  if (lo < min_den) lo = min_den;
  BigInt hi = (BigInt(slots) * q) / p;
  if (hi > max_den) hi = max_den;
  for (BigInt d = lo; d <= hi; ++d) {
    const BigInt np = p * d - q;
    if (np <= 0) continue;
    const BigInt nq = q * d;
    const BigInt g = boost::multiprecision::gcd(np, nq);
    path.push_back(d);
    if (term_search(np / g, nq / g, slots - 1, d + 1, max_den, path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace detail

// Exhaustive pruned search for a representation of q as exactly `terms`
// distinct unit fractions with denominators at most max_den. Returns the
// lexicographically least solution, or nothing if none exists within the
// bound (absence is a valid answer).
inline std::optional<UnitFractionList> bounded_term_search(const Rational& q, int terms,
                                                           const BigInt& max_den) {
  if (terms < 1) throw std::invalid_argument("bounded_term_search: need at least one term");
  if (max_den < 1) throw std::invalid_argument("bounded_term_search: max_den must be positive");
  if (q <= 0) return std::nullopt;
  std::vector<BigInt> path;
  if (!detail::term_search(boost::multiprecision::numerator(q),
                           boost::multiprecision::denominator(q), terms, 1, max_den, path))
    return std::nullopt;
  UnitFractionList out;
  out.denominators = std::move(path);
  out.distinct = true;
  return out;
}

// Minimum number of positive unit fractions summing to the integer n.
// Each term is at most 1, so k terms reach at most k; n copies of 1/1
// attain the bound.
inline BigInt integer_term_lower_bound(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("integer_term_lower_bound: n must be positive");
  return n;
}

}  // namespace ufl
