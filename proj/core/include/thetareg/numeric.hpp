#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thetareg {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Thrown on malformed configs, bad flags, unusable inputs. CLI maps it to exit 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 a, u128 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) { u64 t = a % b; a = b; b = t; }
  return a;
}

/// Inverse of a modulo m (m need not be prime; a must be a unit).
inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, newt = 1;
  i64 r = (i64)m, newr = (i64)(a % m);
  while (newr != 0) {
    i64 q = r / newr;
    i64 tmp = t - q * newt; t = newt; newt = tmp;
    tmp = r - q * newr; r = newr; newr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += (i64)m;
  return (u64)t;
}

/// Reduce a signed value into [0, m).
inline u64 smod(i64 v, u64 m) {
  i64 r = v % (i64)m;
  if (r < 0) r += (i64)m;
  return (u64)r;
}

/// Centered representative in (-m/2, m/2].
inline i64 center(u64 v, u64 m) {
  v %= m;
  return (2 * v > m) ? (i64)v - (i64)m : (i64)v;
}

inline u128 ipow128(u64 base, unsigned e) {
  u128 r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace thetareg
