#include "thetareg/binomial.hpp"

#include <cmath>

namespace thetareg {

namespace {

mpz_class binom_z(u64 n, u64 k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return r;
}

double log_binom(u64 n, u64 k) {
  return std::lgamma((double)n + 1) - std::lgamma((double)k + 1) -
         std::lgamma((double)(n - k) + 1);
}

mpz_class pow_z(u64 base, u64 e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)base, (unsigned long)e);
  return r;
}

double ratio_to_double(const mpz_class& num, const mpz_class& den) {
  mpf_class fn(num, 256), fd(den, 256);
  fn /= fd;
  return fn.get_d();
}

}  // namespace

mpq_class binomial_tail_exact(u64 p, u64 m) {
  if (m > p - 1) throw ConfigError("binomial_tail: m must be <= p-1");
  if (m == 0) return 1;
  // Direct upper-tail sum over j = m..p-1 of C(p-1,j) (p-1)^{p-1-j}.
  mpz_class nsum = 0;
  mpz_class term = binom_z(p - 1, m);
  mpz_class pm1pow = pow_z(p - 1, p - 1 - m);
  for (u64 j = m; j <= p - 1; ++j) {
    nsum += term * pm1pow;
    if (j == p - 1) break;
    term *= (unsigned long)(p - 1 - j);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(j + 1));
    mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
  }
  mpq_class q(nsum, pow_z(p, p - 1));
  q.canonicalize();
  return q;
}

mpq_class binomial_tail_reduced(u64 p, u64 m) {
  if (m > p - 1) throw ConfigError("binomial_tail: m must be <= p-1");
  if (m == 0) return 1;
  // 1 - (1-1/p)^p p/(p-1) sum_{j<m} C(p-1,j)/(p-1)^j, assembled over the
  // common denominator p^{p-1}: the lower sum is N_m = sum_{j<m} C(p-1,j)
  // (p-1)^{p-1-j}.
  mpz_class nsum = 0;
  mpz_class term = 1;  // C(p-1,0)
  mpz_class pm1pow = pow_z(p - 1, p - 1);
  for (u64 j = 0; j < m; ++j) {
    nsum += term * pm1pow;
    term *= (unsigned long)(p - 1 - j);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(j + 1));
    mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
  }
  mpz_class den = pow_z(p, p - 1);
  mpq_class q(den - nsum, den);
  q.canonicalize();
  return q;
}

TailIdentityResult binomial_tails_checked(u64 p, u64 mcap) {
  if (mcap > p - 1) mcap = p - 1;
  mpz_class den = pow_z(p, p - 1);
  // lower sums N_m for m = 0..mcap
  std::vector<mpz_class> lower(mcap + 1);
  {
    mpz_class acc = 0, term = 1, pm1pow = pow_z(p - 1, p - 1);
    for (u64 m = 0; m <= mcap; ++m) {
      lower[m] = acc;
      acc += term * pm1pow;
      term *= (unsigned long)(p - 1 - m);
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(m + 1));
      mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
    }
  }
  // upper tail U_mcap by the direct sum, then U_m = U_{m+1} + b_m downward
  std::vector<mpz_class> upper(mcap + 1);
  {
    mpz_class acc = 0;
    mpz_class term = binom_z(p - 1, mcap);
    mpz_class pm1pow = pow_z(p - 1, p - 1 - mcap);
    for (u64 j = mcap; j <= p - 1; ++j) {
      acc += term * pm1pow;
      if (j == p - 1) break;
      term *= (unsigned long)(p - 1 - j);
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(j + 1));
      mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
    }
    upper[mcap] = acc;
    mpz_class bterm = binom_z(p - 1, mcap);
    mpz_class bpow = pow_z(p - 1, p - 1 - mcap);
    for (u64 m = mcap; m-- > 0;) {
      // b_m = C(p-1,m) (p-1)^{p-1-m}
      bterm *= (unsigned long)(m + 1);
      mpz_divexact_ui(bterm.get_mpz_t(), bterm.get_mpz_t(), (unsigned long)(p - 1 - m));
      bpow *= (unsigned long)(p - 1);
      upper[m] = upper[m + 1] + bterm * bpow;
    }
  }
  TailIdentityResult out;
  out.max_discrepancy = 0;
  for (u64 m = 0; m <= mcap; ++m) {
    // exact: U_m / p^{p-1}; reduced: (p^{p-1} - N_m) / p^{p-1}
    mpz_class diff = upper[m] + lower[m] - den;
    if (diff < 0) diff = -diff;
    out.max_discrepancy = std::max(out.max_discrepancy, ratio_to_double(diff, den));
    out.tail.push_back(ratio_to_double(upper[m], den));
  }
  return out;
}

double binomial_tail(u64 p, u64 m) {
  if (m > p - 1) throw ConfigError("binomial_tail: m must be <= p-1");
  if (m == 0) return 1.0;
  if (p <= 10000) {
    mpq_class q = binomial_tail_reduced(p, m);
    return ratio_to_double(q.get_num(), q.get_den());
  }
  // log-domain complement for very large p
  double acc = 0;
  double logp = std::log((double)p);
  double log1m = std::log1p(-1.0 / (double)p);
  for (u64 j = 0; j < m; ++j)
    acc += std::exp(log_binom(p - 1, j) - (double)j * logp + (double)(p - 1 - j) * log1m);
  return 1.0 - acc;
}

double binomial_sandwich_ratio(u64 p, u64 h) {
  auto tails = binomial_tails_checked(p, h);
  // ratio = tail(h) / (C(p-1,h)/p^h) with exact integers
  mpz_class den = pow_z(p, p - 1);
  mpz_class scale = binom_z(p - 1, h) * pow_z(p, p - 1 - h);
  // tail(h) = U_h/den; ratio = U_h / scale — recompute U_h exactly
  mpz_class U = 0, term = binom_z(p - 1, h), pm1pow = pow_z(p - 1, p - 1 - h);
  for (u64 j = h; j <= p - 1; ++j) {
    U += term * pm1pow;
    if (j == p - 1) break;
    term *= (unsigned long)(p - 1 - j);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(j + 1));
    mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
  }
  return ratio_to_double(U, scale);
}

std::vector<double> binomial_sandwich_ratios(u64 p, u64 hmax) {
  // one pass: U_j incrementally from the top, scale_j per j
  if (hmax > p - 1) hmax = p - 1;
  std::vector<mpz_class> U(hmax + 1);
  {
    mpz_class acc = 0, term = binom_z(p - 1, hmax), pm1pow = pow_z(p - 1, p - 1 - hmax);
    for (u64 j = hmax; j <= p - 1; ++j) {
      acc += term * pm1pow;
      if (j == p - 1) break;
      term *= (unsigned long)(p - 1 - j);
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), (unsigned long)(j + 1));
      mpz_divexact_ui(pm1pow.get_mpz_t(), pm1pow.get_mpz_t(), (unsigned long)(p - 1));
    }
    U[hmax] = acc;
    mpz_class bterm = binom_z(p - 1, hmax), bpow = pow_z(p - 1, p - 1 - hmax);
    for (u64 m = hmax; m-- > 0;) {
      bterm *= (unsigned long)(m + 1);
      mpz_divexact_ui(bterm.get_mpz_t(), bterm.get_mpz_t(), (unsigned long)(p - 1 - m));
      bpow *= (unsigned long)(p - 1);
      U[m] = U[m + 1] + bterm * bpow;
    }
  }
  std::vector<double> out;
  for (u64 h = 0; h <= hmax; ++h) {
    if (h == 0) { out.push_back(1.0); continue; }
    mpz_class scale = binom_z(p - 1, h) * pow_z(p, p - 1 - h);
    out.push_back(ratio_to_double(U[h], scale));
  }
  return out;
}

BinomialModel binomial_model(u64 p, u64 cap) {
  BinomialModel m;
  m.p = p;
  auto r = binomial_tails_checked(p, cap);
  m.tail = r.tail;
  return m;
}

}  // namespace thetareg
