#pragma once

#include <complex>

#include "thetareg/field.hpp"

namespace thetareg {

/// Complex embeddings indexed by group element, the basis-inverse bound
/// Gamma(K) (max row abs-sum of the inverse of (x^{i-1})^sigma), and the
/// per-eta bound c0 = max |eta^sigma|.
struct ArchimedeanData {
  std::vector<std::complex<double>> embeddings;  // root assigned to each group element
  double gamma = 1.0;                            // Gamma(K) >= 1
  double c0 = 0.0;                               // max_sigma |eta^sigma|
};

ArchimedeanData archimedean_data(const FieldSpec& F, const AlgebraicNumber& eta);

/// Largest j >= 0 with the first j powers of eta guaranteed inside the
/// centered residue box: c0^j * 2 Gamma <= p-1 (for K = Q the box is [1, p[
/// and the bound is c0^j <= p-1). Errors when c0 <= 1.
int h_bound(const FieldSpec& F, const AlgebraicNumber& eta, u64 p);
int h_bound(const FieldSpec& F, const ArchimedeanData& arch, const AlgebraicNumber& eta, u64 p);

}  // namespace thetareg
