#pragma once

// Finite commutative rings stored as explicit operation tables, together
// with the element-class and ideal machinery built on top of them. Every
// algorithm here is exhaustive, which is why construction is capped at a
// configurable maximum order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ufl {

// Upper bound on the order of a constructible ring. Adjustable, but the
// default keeps the exhaustive algorithms comfortably in memory.
inline int& max_ring_order() {
  static int cap = 4096;
  return cap;
}

enum class RingKind { Zn, Product, Quotient, Custom };

struct RingOrigin {
  RingKind kind = RingKind::Custom;
  std::string expr;  // ring-expression text, e.g. "Zn(6)" or "Prod(Zn(2),Zn(3))"
};

// A subset of a ring's elements, kept as a bitset over element indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe) : bits_(static_cast<size_t>(universe), false) {}

  static ElementSet from_list(int universe, const std::vector<int>& xs) {
    ElementSet s(universe);
    for (int x : xs) s.insert(x);
    return s;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(int x) const {
    return x >= 0 && x < universe() && bits_[static_cast<size_t>(x)];
  }
  void insert(int x) {
    if (x < 0 || x >= universe()) throw std::out_of_range("ElementSet::insert: index out of range");
    bits_[static_cast<size_t>(x)] = true;
  }
  int count() const {
    int c = 0;
    for (bool b : bits_) c += b ? 1 : 0;
    return c;
  }
  std::vector<int> to_list() const {
    std::vector<int> xs;
    for (int i = 0; i < universe(); ++i)
      if (bits_[static_cast<size_t>(i)]) xs.push_back(i);
    return xs;
  }
  bool subset_of(const ElementSet& other) const {
    if (other.universe() != universe()) return false;
    for (int i = 0; i < universe(); ++i)
      if (bits_[static_cast<size_t>(i)] && !other.bits_[static_cast<size_t>(i)]) return false;
    return true;
  }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<bool> bits_;
};

// A finite commutative unital ring. Elements are the indices 0..order-1,
// index 0 is the additive identity, and the value of one() locates the
// multiplicative identity (1 for Zn and quotients; products keep the pair
// encoding i*|b|+j, which puts the identity at (1,1)). Immutable after
// construction and safe to share across threads.
class FiniteRing {
 public:
  FiniteRing(int order, std::vector<std::uint16_t> add_table, std::vector<std::uint16_t> mul_table,
             RingOrigin origin, int one_hint = -1)
      : order_(order),
        add_(std::move(add_table)),
        mul_(std::move(mul_table)),
        origin_(std::move(origin)) {
    if (order_ < 1) throw std::invalid_argument("ring order must be at least 1");
    if (order_ > max_ring_order())
      throw std::invalid_argument("ring order " + std::to_string(order_) +
                                  " exceeds the configured cap " + std::to_string(max_ring_order()));
    const size_t cells = static_cast<size_t>(order_) * static_cast<size_t>(order_);
    if (add_.size() != cells || mul_.size() != cells)
      throw std::invalid_argument("operation tables must have order*order entries");
    for (std::uint16_t v : add_)
      if (v >= order_) throw std::invalid_argument("add table entry out of range");
    for (std::uint16_t v : mul_)
      if (v >= order_) throw std::invalid_argument("mul table entry out of range");
    for (int x = 0; x < order_; ++x)
      if (add(0, x) != x) throw std::invalid_argument("element 0 is not an additive identity");
    one_ = one_hint >= 0 ? one_hint : find_one();
    if (one_ < 0 || one_ >= order_ || !is_one(one_))
      throw std::invalid_argument("no multiplicative identity found");
    if (order_ > 1 && one_ == 0)
      throw std::invalid_argument("0 = 1 is only allowed in the ring of order 1");
    neg_.resize(static_cast<size_t>(order_));
    for (int x = 0; x < order_; ++x) {
      int n = -1;
      for (int y = 0; y < order_; ++y)
        if (add(x, y) == 0) {
          n = y;
          break;
        }
      if (n < 0) throw std::invalid_argument("element without additive inverse");
      neg_[static_cast<size_t>(x)] = static_cast<std::uint16_t>(n);
    }
  }

  int order() const { return order_; }
  int zero() const { return 0; }
  int one() const { return one_; }
  const RingOrigin& origin() const { return origin_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[check(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }

  // a^k for k >= 0, with a^0 = 1.
  int pow(int a, int k) const {
    if (k < 0) throw std::invalid_argument("pow: negative exponent");
    int r = one_;
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  bool valid_element(int x) const { return x >= 0 && x < order_; }

 private:
  size_t idx(int a, int b) const {
    return static_cast<size_t>(check(a)) * static_cast<size_t>(order_) + static_cast<size_t>(check(b));
  }
  int check(int x) const {
    if (x < 0 || x >= order_) throw std::out_of_range("ring element index out of range");
    return x;
  }
  bool is_one(int e) const {
    for (int x = 0; x < order_; ++x)
      if (mul(e, x) != x) return false;
    return true;
  }
  int find_one() const {
    for (int e = 0; e < order_; ++e)
      if (is_one(e)) return e;
    return -1;
  }

  int order_;
  int one_ = 1;
  std::vector<std::uint16_t> add_, mul_, neg_;
  RingOrigin origin_;
};

// Z/nZ with the natural element labelling.
inline FiniteRing make_zn(int n) {
  if (n < 1) throw std::invalid_argument("Zn modulus must be at least 1");
  if (n > max_ring_order())
    throw std::invalid_argument("Zn modulus exceeds the configured ring order cap");
  const size_t cells = static_cast<size_t>(n) * static_cast<size_t>(n);
  std::vector<std::uint16_t> add(cells), mul(cells);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      add[static_cast<size_t>(i) * n + j] = static_cast<std::uint16_t>((i + j) % n);
      mul[static_cast<size_t>(i) * n + j] = static_cast<std::uint16_t>((i * j) % n);
    }
  RingOrigin origin{RingKind::Zn, "Zn(" + std::to_string(n) + ")"};
  return FiniteRing(n, std::move(add), std::move(mul), std::move(origin), n > 1 ? 1 : 0);
}

// Pair encoding for product rings: (i, j) <-> i*|right| + j.
inline int pair_index(const FiniteRing& left, const FiniteRing& right, int i, int j) {
  if (!left.valid_element(i) || !right.valid_element(j))
    throw std::out_of_range("pair_index: component out of range");
  return i * right.order() + j;
}

inline std::pair<int, int> pair_split(const FiniteRing& left, const FiniteRing& right, int x) {
  (void)left;
  return {x / right.order(), x % right.order()};
}

// Componentwise product ring; identity sits at the pair (1,1).
inline FiniteRing make_product(const FiniteRing& a, const FiniteRing& b) {
  const long long n = static_cast<long long>(a.order()) * b.order();
  if (n > max_ring_order())
    throw std::invalid_argument("product ring order exceeds the configured cap");
  const int order = static_cast<int>(n);
  const size_t cells = static_cast<size_t>(order) * static_cast<size_t>(order);
  std::vector<std::uint16_t> add(cells), mul(cells);
  for (int x = 0; x < order; ++x) {
    const int xa = x / b.order(), xb = x % b.order();
    for (int y = 0; y < order; ++y) {
      const int ya = y / b.order(), yb = y % b.order();
      add[static_cast<size_t>(x) * order + y] =
          static_cast<std::uint16_t>(a.add(xa, ya) * b.order() + b.add(xb, yb));
      mul[static_cast<size_t>(x) * order + y] =
          static_cast<std::uint16_t>(a.mul(xa, ya) * b.order() + b.mul(xb, yb));
    }
  }
  RingOrigin origin{RingKind::Product, "Prod(" + a.origin().expr + "," + b.origin().expr + ")"};
  const int one = a.one() * b.order() + b.one();
  return FiniteRing(order, std::move(add), std::move(mul), std::move(origin), one);
}

// Smallest subset containing gens that is closed under addition, negation,
// and multiplication by arbitrary ring elements. Always contains 0.
inline ElementSet ideal_closure(const FiniteRing& r, const ElementSet& gens) {
  if (gens.universe() != r.order())
    throw std::invalid_argument("ideal_closure: generator set is over a different ring");
  ElementSet out(r.order());
  out.insert(0);
  for (int g : gens.to_list()) out.insert(g);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<int> members = out.to_list();
    auto push = [&](int x) {
      if (!out.contains(x)) {
        out.insert(x);
        changed = true;
      }
    };
    for (int x : members) {
      push(r.neg(x));
      for (int s = 0; s < r.order(); ++s) push(r.mul(s, x));
      for (int y : members) push(r.add(x, y));
    }
  }
  return out;
}

inline ElementSet ideal_closure(const FiniteRing& r, const std::vector<int>& gens) {
  return ideal_closure(r, ElementSet::from_list(r.order(), gens));
}

inline bool is_ideal(const FiniteRing& r, const ElementSet& candidate) {
  if (candidate.universe() != r.order() || !candidate.contains(0)) return false;
  const std::vector<int> members = candidate.to_list();
  for (int x : members) {
    if (!candidate.contains(r.neg(x))) return false;
    for (int y : members)
      if (!candidate.contains(r.add(x, y))) return false;
    for (int s = 0; s < r.order(); ++s)
      if (!candidate.contains(r.mul(s, x))) return false;
  }
  return true;
}

struct QuotientResult {
  FiniteRing ring;
  std::vector<int> projection;  // source element -> quotient element
};

// Quotient by an ideal. Cosets are labelled by their least source element,
// and quotient indices follow the ascending order of those representatives,
// which keeps 0 -> 0 and (for 1 not in the ideal) 1 -> 1.
inline QuotientResult make_quotient(const FiniteRing& r, const ElementSet& ideal,
                                    std::optional<std::string> label = std::nullopt) {
  if (!is_ideal(r, ideal))
    throw std::invalid_argument("make_quotient: the given subset is not an ideal");
  const std::vector<int> ideal_members = ideal.to_list();
  std::vector<int> rep(static_cast<size_t>(r.order()));
  for (int x = 0; x < r.order(); ++x) {
    int m = x;
    for (int i : ideal_members) m = std::min(m, r.add(x, i));
    rep[static_cast<size_t>(x)] = m;
  }
  std::vector<int> reps;
  for (int x = 0; x < r.order(); ++x)
    if (rep[static_cast<size_t>(x)] == x) reps.push_back(x);
  std::vector<int> class_of(static_cast<size_t>(r.order()), -1);
  for (size_t c = 0; c < reps.size(); ++c) class_of[static_cast<size_t>(reps[c])] = static_cast<int>(c);
  std::vector<int> projection(static_cast<size_t>(r.order()));
  for (int x = 0; x < r.order(); ++x)
    projection[static_cast<size_t>(x)] = class_of[static_cast<size_t>(rep[static_cast<size_t>(x)])];

  const int q = static_cast<int>(reps.size());
  const size_t cells = static_cast<size_t>(q) * static_cast<size_t>(q);
  std::vector<std::uint16_t> add(cells), mul(cells);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      add[static_cast<size_t>(i) * q + j] =
          static_cast<std::uint16_t>(projection[static_cast<size_t>(r.add(reps[i], reps[j]))]);
      mul[static_cast<size_t>(i) * q + j] =
          static_cast<std::uint16_t>(projection[static_cast<size_t>(r.mul(reps[i], reps[j]))]);
    }
  std::string expr;
  if (label) {
    expr = *label;
  } else {
    expr = "Quot(" + r.origin().expr + ",[";
    for (size_t i = 0; i < ideal_members.size(); ++i) {
      if (i) expr += ",";
      expr += std::to_string(ideal_members[i]);
    }
    expr += "])";
  }
  RingOrigin origin{RingKind::Quotient, std::move(expr)};
  const int one = projection[static_cast<size_t>(r.one())];
  FiniteRing ring(q, std::move(add), std::move(mul), std::move(origin), one);
  return QuotientResult{std::move(ring), std::move(projection)};
}

struct ElementClasses {
  ElementSet units;
  ElementSet regulars;
  ElementSet nilpotents;
};

// Units, regular elements (non-zero-divisors) and nilpotents, each computed
// independently by exhaustive scan. In a finite commutative ring the unit
// and regular sets coincide; callers assert that rather than assuming it.
inline ElementClasses element_classes(const FiniteRing& r) {
  ElementClasses c{ElementSet(r.order()), ElementSet(r.order()), ElementSet(r.order())};
  for (int u = 0; u < r.order(); ++u)
    for (int v = 0; v < r.order(); ++v)
      if (r.mul(u, v) == r.one()) {
        c.units.insert(u);
        break;
      }
  for (int w = 0; w < r.order(); ++w) {
    bool regular = true;
    for (int x = 1; x < r.order(); ++x)
      if (r.mul(w, x) == 0) {
        regular = false;
        break;
      }
    if (regular) c.regulars.insert(w);
  }
  for (int x = 0; x < r.order(); ++x) {
    int p = x;
    for (int k = 1; k <= r.order(); ++k) {
      if (p == 0) {
        c.nilpotents.insert(x);
        break;
      }
      p = r.mul(p, x);
    }
  }
  return c;
}

// Elementwise Jacobson radical: j such that 1 - x*j is a unit for every x.
inline ElementSet jacobson_radical(const FiniteRing& r) {
  const ElementSet units = element_classes(r).units;
  ElementSet rad(r.order());
  for (int j = 0; j < r.order(); ++j) {
    bool in_rad = true;
    for (int x = 0; x < r.order(); ++x)
      if (!units.contains(r.sub(r.one(), r.mul(x, j)))) {
        in_rad = false;
        break;
      }
    if (in_rad) rad.insert(j);
  }
  return rad;
}

// Exhaustive check of the commutative unital ring axioms. Returns an empty
// optional on success, otherwise a description of the first failure.
inline std::optional<std::string> verify_ring_axioms(const FiniteRing& r) {
  const int n = r.order();
  auto at = [](int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  };
  for (int a = 0; a < n; ++a) {
    if (r.add(0, a) != a) return "0 is not an additive identity at " + std::to_string(a);
    if (r.mul(r.one(), a) != a) return "1 is not a multiplicative identity at " + std::to_string(a);
    if (r.add(a, r.neg(a)) != 0) return "broken additive inverse at " + std::to_string(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.add(a, b) != r.add(b, a)) return "addition not commutative at " + at(a, b, 0);
      if (r.mul(a, b) != r.mul(b, a)) return "multiplication not commutative at " + at(a, b, 0);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          return "addition not associative at " + at(a, b, c);
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          return "multiplication not associative at " + at(a, b, c);
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          return "distributivity fails at " + at(a, b, c);
      }
  return std::nullopt;
}

// Builds a ring from raw tables, optionally running the full axiom check.
inline FiniteRing make_from_tables(int order, const std::vector<std::uint16_t>& add_table,
                                   const std::vector<std::uint16_t>& mul_table, std::string label,
                                   bool validate = true) {
  FiniteRing r(order, add_table, mul_table, RingOrigin{RingKind::Custom, std::move(label)});
  if (validate) {
    if (auto fail = verify_ring_axioms(r))
      throw std::invalid_argument("make_from_tables: " + *fail);
  }
  return r;
}

}  // namespace ufl
