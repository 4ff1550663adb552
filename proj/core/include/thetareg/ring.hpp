#pragma once

#include <cassert>
#include <vector>

#include "thetareg/numeric.hpp"

namespace thetareg {

/// Arithmetic in (Z/m)[x]/(P), P monic with integer coefficients. The modulus
/// m is a prime power p^k with m < 2^63; products go through 128-bit
/// intermediates. Elements are coefficient vectors of length deg(P),
/// lowest degree first.
class QuotientRing {
 public:
  QuotientRing(const std::vector<i64>& poly, u64 modulus);

  int degree() const { return n_; }
  u64 modulus() const { return m_; }

  using Elem = std::vector<u64>;

  Elem zero() const { return Elem(n_, 0); }
  Elem one() const;
  Elem from_signed(const std::vector<i64>& v) const;
  Elem scalar(u64 c) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem scal(u64 c, const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem base, u128 e) const;

  /// r(A(x)) by Horner; A given as element coefficients.
  Elem compose(const Elem& r, const Elem& a) const;

  /// Multiplicative inverse. Requires m = p^k; computes the mod-p inverse by
  /// the extended Euclid in F_p[x] and Hensel-lifts it. Returns false when the
  /// element is not a unit.
  bool try_inverse(const Elem& a, u64 p, Elem& out) const;

  bool is_zero(const Elem& a) const;
  /// gcd(a, P) = 1 over F_p (unit test for level-1 elements).
  bool is_unit_mod_p(const Elem& a, u64 p) const;

  /// Asserts a is a constant polynomial and returns it.
  u64 scalarize(const Elem& a) const;
  bool is_constant(const Elem& a) const;

 private:
  int n_;
  u64 m_;
  std::vector<u64> pmod_;  // P's non-leading coefficients mod m (length n_)
};

}  // namespace thetareg
