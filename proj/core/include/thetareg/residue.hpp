#pragma once

#include "thetareg/field.hpp"
#include "thetareg/ring.hpp"

namespace thetareg {

/// Element of Z_K mod p^level on the power basis.
struct ResidueElement {
  u64 p = 0;
  int level = 1;
  std::vector<u64> c;
};

/// Precomputed admissibility data for one (field, eta) pair: the product
/// n * g * disc * den(eta) * N(num eta) * den(autos) * den(torsion), whose
/// prime divisors are exactly the excluded primes.
struct AdmissibilityContext {
  mpz_class bad = 1;
  AdmissibilityContext(const FieldSpec& F, const AlgebraicNumber& eta);
  bool admissible(u64 p) const;
};

bool admissible_prime(const FieldSpec& F, const AlgebraicNumber& eta, u64 p);

/// Common residue degree n_p of the places above p: least k with
/// x^{p^k} = x mod (P, p).
int residue_degree(const FieldSpec& F, u64 p);

/// Per-prime working context: rings mod p^k and reduced automorphism tables.
class PrimeContext {
 public:
  PrimeContext(const FieldSpec& F, u64 p, int max_level = 2);

  const FieldSpec& field() const { return *F_; }
  u64 p() const { return p_; }
  int np() const { return np_; }
  const QuotientRing& ring(int level) const;  // level = exponent of p
  const std::vector<u64>& auto_at(int nu, int level) const;

  /// eta reduced mod p^level (denominator inverted).
  QuotientRing::Elem reduce(const AlgebraicNumber& a, int level) const;
  /// alpha_p(eta) mod p^level: (eta^{p^np - 1} - 1)/p computed mod p^{level+1}.
  QuotientRing::Elem alpha(const AlgebraicNumber& eta, int level) const;
  /// alpha from an already-reduced residue z mod p^{level+1}.
  QuotientRing::Elem alpha_of_residue(const QuotientRing::Elem& z_mod_pk1, int level) const;
  /// (-1/p) log_p(eta) mod p^level.
  QuotientRing::Elem normalized_log(const AlgebraicNumber& eta, int level) const;
  QuotientRing::Elem normalized_log_of_residue(const QuotientRing::Elem& z, int level) const;
  /// Galois conjugate r -> r^nu at the given level.
  QuotientRing::Elem conjugate(const QuotientRing::Elem& r, int nu, int level) const;

 private:
  const FieldSpec* F_;
  u64 p_;
  int np_;
  int max_level_;
  std::vector<QuotientRing> rings_;                           // index: level-1
  std::vector<std::vector<std::vector<u64>>> autos_;          // [level-1][nu], built eagerly
};

ResidueElement fermat_quotient(const FieldSpec& F, const AlgebraicNumber& eta, u64 p);
ResidueElement conjugate(const FieldSpec& F, const ResidueElement& r, int nu);
std::vector<u64> normalized_log(const FieldSpec& F, const AlgebraicNumber& eta, u64 p,
                                int precision = 2);

}  // namespace thetareg
