#pragma once

#include <vector>

#include "thetareg/numeric.hpp"

namespace thetareg {

/// F_{p^f} presented as F_p[t]/(g), g a monic irreducible factor of the d-th
/// cyclotomic polynomial mod p (so the class of t is a primitive d-th root of
/// unity). Elements are coefficient vectors of length f, lowest degree first.
class ExtField {
 public:
  ExtField() = default;
  ExtField(u64 p, std::vector<u64> modulus_low_coeffs);  // monic g, non-leading coeffs

  u64 p() const { return p_; }
  int f() const { return (int)g_.size(); }
  const std::vector<u64>& modulus() const { return g_; }

  using Elem = std::vector<u64>;

  Elem zero() const { return Elem(f(), 0); }
  Elem one() const;
  Elem scalar(u64 c) const;
  Elem gen() const;  // the class of t

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, u128 e) const;
  Elem frobenius(const Elem& a) const;  // a -> a^p

  /// Norm down to F_p: prod of the f Frobenius conjugates.
  u64 norm(const Elem& a) const;
  /// Trace down to F_p.
  u64 trace(const Elem& a) const;

  bool is_zero(const Elem& a) const;

 private:
  u64 p_ = 0;
  std::vector<u64> g_;  // non-leading coefficients of the modulus
};

/// Cyclotomic polynomial Phi_d mod p (coefficients lowest degree first,
/// including the leading 1).
std::vector<u64> cyclotomic_mod_p(u64 d, u64 p);

/// All monic irreducible degree-f factors of Phi_d mod p, each returned as its
/// non-leading coefficient vector, sorted lexicographically (constant
/// coefficient most significant last — plain vector comparison). f must be
/// the multiplicative order of p mod d. Uses equal-degree splitting with a
/// fixed deterministic element sequence.
std::vector<std::vector<u64>> cyclotomic_factors(u64 d, u64 p, int f);

/// The elements of exact multiplicative order d mod p, ascending (f = 1 case).
std::vector<u64> roots_of_order(u64 d, u64 p);

/// Multiplicative order of p modulo d (the residue degree of p in Q(zeta_d)).
int order_mod(u64 p, u64 d);

}  // namespace thetareg
