#pragma once

// Text format for rings: Zn(6), Prod(Zn(4),Zn(6)), Quot(Zn(6),[2]).
// Whitespace-insensitive; quotient ideals are given by generator lists.

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufl/ring_core.hpp"

namespace ufl {

namespace detail {

struct RingExprParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("ring expression error at position " + std::to_string(pos) + ": " +
                                why);
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a name");
    return std::string(text.substr(start, pos - start));
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (text[start] == '-' && pos == start + 1)) fail("expected an integer");
    return std::stol(std::string(text.substr(start, pos - start)));
  }

  std::vector<int> int_list() {
    expect('[');
    std::vector<int> xs;
    if (peek() != ']') {
      while (true) {
        xs.push_back(static_cast<int>(integer()));
        if (peek() == ',') {
          ++pos;
          continue;
        }
        break;
      }
    }
    expect(']');
    return xs;
  }

  FiniteRing parse() {
    const std::string name = ident();
    if (name == "Zn") {
      expect('(');
      const long n = integer();
      expect(')');
      if (n < 1) fail("Zn modulus must be positive");
      return make_zn(static_cast<int>(n));
    }
    if (name == "Prod") {
      expect('(');
      FiniteRing a = parse();
      expect(',');
      FiniteRing b = parse();
      expect(')');
      return make_product(a, b);
    }
    if (name == "Quot") {
      expect('(');
      FiniteRing base = parse();
      expect(',');
      std::vector<int> gens = int_list();
      expect(')');
      for (int g : gens)
        if (!base.valid_element(g)) fail("ideal generator out of range for the base ring");
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      std::string label = "Quot(" + base.origin().expr + ",[";
      for (size_t i = 0; i < gens.size(); ++i) {
        if (i) label += ",";
        label += std::to_string(gens[i]);
      }
      label += "])";
      return make_quotient(base, ideal_closure(base, gens), label).ring;
    }
    fail("unknown ring constructor '" + name + "' (expected Zn, Prod or Quot)");
  }
};

}  // namespace detail

inline FiniteRing parse_ring_expr(std::string_view text) {
  detail::RingExprParser p{text, 0};
  FiniteRing r = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace ufl
