#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetareg/group.hpp"
#include "thetareg/numeric.hpp"

namespace thetareg {

/// Element of K on the power basis 1, x, ..., x^{n-1}: integer numerator
/// vector over a common positive denominator, normalized so that
/// gcd(content, den) = 1.
struct AlgebraicNumber {
  std::vector<i64> num;
  i64 den = 1;

  void normalize();
  bool is_rational() const;
  std::string str() const;
};

/// Parse "c0,c1,.../den" (lowest degree first).
AlgebraicNumber parse_algebraic(const std::string& text, int n);

/// A Galois number field: defining polynomial, Galois group, the action of
/// every group element as a rational polynomial in x, torsion units, and the
/// precomputed discriminant.
struct FieldSpec {
  std::string name;
  int n = 1;
  std::vector<i64> poly;  // monic, length n+1, lowest degree first
  GroupData group;
  std::vector<std::vector<mpq_class>> autos;  // per element, n coefficients
  std::vector<AlgebraicNumber> torsion;       // roots of unity of K
  mpz_class disc;
  std::optional<std::vector<mpq_class>> sqrtm;  // sqrt(m) of the quadratic subfield
  i64 sqrtm_m = 0;

  /// Least common denominator of all automorphism coefficient vectors.
  mpz_class auto_den() const;
  /// x^nu as an automorphism polynomial A_nu reduced mod p^k.
  std::vector<u64> auto_mod(int nu, u64 modulus) const;
};

/// Load a field spec file (structured text; see data/fields/*.field).
FieldSpec load_field_file(const std::string& path);

/// Resolve --field arguments: literal path, then $THETA_REG_FIELDS, then the
/// compile-time data directory.
FieldSpec resolve_field(const std::string& name_or_path);

/// Resultant of the defining polynomial and an integer polynomial
/// (up to sign, the norm of the algebraic integer times den^n adjustments
/// are handled by callers).
mpz_class resultant_with_poly(const std::vector<i64>& poly, const std::vector<mpz_class>& g);

/// Norm of an algebraic number's numerator: Res(P, num)/lc(P)^... (P monic).
mpz_class numerator_norm(const FieldSpec& F, const AlgebraicNumber& a);

/// Exact product of two elements in Z[x]/(P) (integer vectors).
std::vector<mpz_class> zmul_mod_poly(const std::vector<i64>& poly,
                                     const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b);

}  // namespace thetareg
