#pragma once

// Small number-theory helpers on 64-bit residues. Products go through
// 128-bit intermediates, so any modulus below 2^63 is safe.

#include <cstdint>
#include <numeric>
#include <vector>

namespace hamcay::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// (a - b) mod m for a, b already reduced.
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 negmod(u64 a, u64 m) { return a == 0 ? 0 : m - a; }

inline bool is_prime(u64 v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (u64 d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

// Distinct prime divisors in increasing order.
inline std::vector<u64> prime_factors(u64 v) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline bool is_square_free(u64 v) {
  if (v == 0) return false;
  for (u64 d = 2; d * d <= v; ++d) {
    if (v % (d * d) == 0) return false;
  }
  return true;
}

// All positive divisors in increasing order.
inline std::vector<u64> divisors(u64 v) {
  std::vector<u64> small, large;
  for (u64 d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d != v / d) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Inverse of a modulo m; requires gcd(a, m) == 1.
inline u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

// Multiplicative order of a modulo m; requires gcd(a, m) == 1.
inline u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  u64 order = 1;
  u64 cur = a % m;
  while (cur != 1) {
    cur = mulmod(cur, a, m);
    ++order;
  }
  return order;
}

// Smallest primitive root modulo an odd prime.
inline u64 primitive_root(u64 prime) {
  if (prime == 2) return 1;
  const auto factors = prime_factors(prime - 1);
  for (u64 g = 2; g < prime; ++g) {
    bool ok = true;
    for (u64 f : factors) {
      if (powmod(g, (prime - 1) / f, prime) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

}  // namespace hamcay::arith
