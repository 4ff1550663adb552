#pragma once

#include <gmpxx.h>

#include <vector>

#include "thetareg/numeric.hpp"

namespace thetareg {

/// Exact tail Prob(m_p(u) >= m) of the binomial law with parameters
/// (p-1, 1/p): (1/p^{p-1}) sum_{j=m}^{p-1} C(p-1,j) (p-1)^{p-1-j}.
mpq_class binomial_tail_exact(u64 p, u64 m);

/// Same tail via the reduced complement form
/// 1 - (1-1/p)^p * p/(p-1) * sum_{j<m} C(p-1,j)/(p-1)^j.
mpq_class binomial_tail_reduced(u64 p, u64 m);

/// Double-precision tail; exact rationals for p <= 10^4, log-domain beyond.
double binomial_tail(u64 p, u64 m);

/// Sandwich ratio tail(h) / (C(p-1,h)/p^h); the tail bounds put it in
/// (exp(-1 + (h + 1/2)/p), 1].
double binomial_sandwich_ratio(u64 p, u64 h);

/// All sandwich ratios h = 0..hmax in one pass.
std::vector<double> binomial_sandwich_ratios(u64 p, u64 hmax);

/// Tails m = 0..mcap computed by BOTH formulas with the exact rational
/// discrepancy between them (identity check driver).
struct TailIdentityResult {
  std::vector<double> tail;
  double max_discrepancy = 0;
};
TailIdentityResult binomial_tails_checked(u64 p, u64 mcap);

struct BinomialModel {
  u64 p = 0;
  std::vector<double> tail;  // tail[m] = Prob(m_p(u) >= m), m = 0..cap
};

BinomialModel binomial_model(u64 p, u64 cap);

}  // namespace thetareg
