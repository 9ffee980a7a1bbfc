#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace tails {

// Arbitrary-precision natural. Set codes (sums of powers of two over Cantor
// pair codes) routinely exceed 64 bits, so naturals are big throughout.
using Nat = boost::multiprecision::cpp_int;

// Cantor pairing pi(m,n) = (m+n)(m+n+1)/2 + n. Monotone in each argument,
// which the idempotent pairing construction depends on.
inline Nat cantor_pair(const Nat& m, const Nat& n) {
  Nat s = m + n;
  return s * (s + 1) / 2 + n;
}

inline std::pair<Nat, Nat> cantor_unpair(const Nat& t) {
  using boost::multiprecision::sqrt;
  Nat w = (sqrt(Nat(8) * t + 1) - 1) / 2;
  while (w * (w + 1) / 2 > t) --w;
  while ((w + 1) * (w + 2) / 2 <= t) ++w;
  Nat n = t - w * (w + 1) / 2;
  Nat m = w - n;
  return {m, n};
}

// Finite sets of naturals coded as bitmasks: code(F) = sum over x in F of 2^x.

inline Nat encode_set(const std::set<Nat>& elems) {
  Nat code = 0;
  for (const Nat& x : elems) {
    if (x > 100000) throw std::invalid_argument("set element too large to bitmask-code");
    bit_set(code, static_cast<unsigned>(x));
  }
  return code;
}

inline std::set<Nat> decode_set(Nat code) {
  if (code < 0) throw std::invalid_argument("negative set code");
  std::set<Nat> elems;
  unsigned i = 0;
  while (code != 0) {
    if (bit_test(code, 0)) elems.insert(Nat(i));
    code >>= 1;
    ++i;
  }
  return elems;
}

inline std::size_t set_code_cardinality(Nat code) {
  std::size_t n = 0;
  while (code != 0) {
    code &= code - 1;
    ++n;
  }
  return n;
}

inline std::uint64_t to_u64(const Nat& n) {
  return n.convert_to<std::uint64_t>();
}

}  // namespace tails
