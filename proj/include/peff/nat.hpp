#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace peff {

// Unbounded natural number. All kernel values are naturals; negative results
// never arise (subtraction is truncated where it appears).
using Nat = boost::multiprecision::cpp_int;

inline std::string nat_str(const Nat& n) { return n.str(); }

// Cantor pairing <a,b> = (a+b)(a+b+1)/2 + b, a bijection N x N -> N.
inline Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<Nat, Nat> cantor_unpair(const Nat& c) {
  using boost::multiprecision::sqrt;
  Nat disc = 8 * c + 1;
  Nat w = (sqrt(disc) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat b = c - t;
  Nat a = w - b;
  return {a, b};
}

inline Nat cantor_fst(const Nat& c) { return cantor_unpair(c).first; }
inline Nat cantor_snd(const Nat& c) { return cantor_unpair(c).second; }

// <a, <b, c>>, used for triple-shaped points throughout.
inline Nat cantor_triple(const Nat& a, const Nat& b, const Nat& c) {
  return cantor_pair(a, cantor_pair(b, c));
}

inline std::size_t nat_to_size(const Nat& n) { return n.convert_to<std::size_t>(); }

}  // namespace peff
