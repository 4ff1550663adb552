#include "thetareg/residue.hpp"

#include <stdexcept>

#include "thetareg/primes.hpp"

namespace thetareg {

AdmissibilityContext::AdmissibilityContext(const FieldSpec& F, const AlgebraicNumber& eta) {
  bad = mpz_class(F.n) * mpz_class((unsigned long)F.group.exponent);
  mpz_class d = F.disc;
  if (d < 0) d = -d;
  if (d != 0) bad *= d;
  bad *= F.auto_den();
  mpz_class norm = numerator_norm(F, eta);
  if (norm == 0) throw ConfigError("eta is zero");
  if (norm < 0) norm = -norm;
  bad *= norm;
  bad *= eta.den;
  for (const auto& t : F.torsion) bad *= t.den;
  if (F.sqrtm) {
    for (const auto& q : *F.sqrtm) bad *= mpz_class(q.get_den());
    if (F.sqrtm_m != 0) bad *= mpz_class(std::abs(F.sqrtm_m));
  }
  bad *= 2;
}

bool AdmissibilityContext::admissible(u64 p) const {
  return p > 2 && mpz_divisible_ui_p(bad.get_mpz_t(), (unsigned long)p) == 0;
}

bool admissible_prime(const FieldSpec& F, const AlgebraicNumber& eta, u64 p) {
  if (!is_prime(p)) return false;
  return AdmissibilityContext(F, eta).admissible(p);
}

int residue_degree(const FieldSpec& F, u64 p) {
  QuotientRing R(F.poly, p);
  auto xv = R.zero();
  if (F.n == 1) return 1;
  xv[1] = 1;
  auto cur = xv;
  for (int k = 1; k <= F.n; ++k) {
    cur = R.pow(cur, p);
    if (cur == xv) return k;
  }
  throw std::runtime_error("residue_degree: Frobenius order exceeds n (p ramified?)");
}

PrimeContext::PrimeContext(const FieldSpec& F, u64 p, int max_level)
    : F_(&F), p_(p), max_level_(max_level) {
  // Levels above 1 need p^{level+1} for the alpha computation.
  if (max_level_ < 1) max_level_ = 1;
  u64 m = 1;
  for (int k = 1; k <= max_level_ + 1; ++k) {
    if (m > UINT64_MAX / p / p) throw ConfigError("prime too large for requested level");
    m *= p;
    rings_.emplace_back(F.poly, m);
  }
  // Automorphism tables are built eagerly: PrimeContext is shared read-only
  // across workers.
  autos_.resize(rings_.size());
  for (size_t lvl = 0; lvl < rings_.size(); ++lvl) {
    autos_[lvl].resize(F.group.n);
    for (int g = 0; g < F.group.n; ++g) autos_[lvl][g] = F.auto_mod(g, rings_[lvl].modulus());
  }
  np_ = residue_degree(F, p);
}

const QuotientRing& PrimeContext::ring(int level) const { return rings_.at(level - 1); }

const std::vector<u64>& PrimeContext::auto_at(int nu, int level) const {
  return autos_[level - 1][nu];
}

QuotientRing::Elem PrimeContext::reduce(const AlgebraicNumber& a, int level) const {
  const auto& R = ring(level);
  u64 m = R.modulus();
  auto v = R.from_signed(a.num);
  if (a.den != 1) {
    u64 dinv = invmod(smod(a.den, m), m);
    v = R.scal(dinv, v);
  }
  return v;
}

QuotientRing::Elem PrimeContext::alpha_of_residue(const QuotientRing::Elem& z, int level) const {
  const auto& Rbig = ring(level + 1);
  const auto& R = ring(level);
  u128 e = ipow128(p_, (unsigned)np_) - 1;
  auto t = Rbig.pow(z, e);
  t[0] = submod(t[0], 1 % Rbig.modulus(), Rbig.modulus());
  QuotientRing::Elem out(F_->n);
  for (int i = 0; i < F_->n; ++i) {
    if (t[i] % p_ != 0)
      throw std::runtime_error("alpha: eta^(p^np - 1) - 1 not divisible by p (inadmissible p)");
    out[i] = (t[i] / p_) % R.modulus();
  }
  return out;
}

QuotientRing::Elem PrimeContext::alpha(const AlgebraicNumber& eta, int level) const {
  return alpha_of_residue(reduce(eta, level + 1), level);
}

QuotientRing::Elem PrimeContext::normalized_log_of_residue(const QuotientRing::Elem& z,
                                                           int level) const {
  // (-1/p) log_p(z) = (-1/(p^np - 1)) * (alpha - p alpha^2/2 + p^2 alpha^3/3 - ...)
  // truncated mod p^level; the series needs terms with i*v_p(p^{i-1}/i) < level.
  const auto& R = ring(level);
  u64 m = R.modulus();
  auto a = alpha_of_residue(z, level);
  auto acc = a;
  if (level >= 2) {
    auto apow = a;
    for (int i = 2; i < level + 2; ++i) {
      apow = R.mul(apow, a);
      // term (-1)^{i+1} p^{i-1} a^i / i; split the p-part of i so the
      // coefficient stays integral (matters for p = 3).
      u64 ii = (u64)i;
      int v = 0;
      while (ii % p_ == 0) { ii /= p_; ++v; }
      u64 coef = powmod(p_ % m, (u64)(i - 1 - v), m);
      coef = mulmod(coef, invmod(ii % m, m), m);
      auto term = R.scal(coef, apow);
      acc = (i % 2 == 0) ? R.sub(acc, term) : R.add(acc, term);
    }
  }
  // multiply by -1/(p^np - 1) = 1/(1 - p^np) mod p^level
  u128 pn = ipow128(p_, (unsigned)np_);
  u64 pn_mod = (u64)(pn % m);
  u64 denom = submod(1 % m, pn_mod, m);
  return R.scal(invmod(denom, m), acc);
}

QuotientRing::Elem PrimeContext::normalized_log(const AlgebraicNumber& eta, int level) const {
  return normalized_log_of_residue(reduce(eta, level + 1), level);
}

QuotientRing::Elem PrimeContext::conjugate(const QuotientRing::Elem& r, int nu, int level) const {
  return ring(level).compose(r, auto_at(nu, level));
}

ResidueElement fermat_quotient(const FieldSpec& F, const AlgebraicNumber& eta, u64 p) {
  PrimeContext ctx(F, p, 1);
  return ResidueElement{p, 1, ctx.alpha(eta, 1)};
}

ResidueElement conjugate(const FieldSpec& F, const ResidueElement& r, int nu) {
  PrimeContext ctx(F, r.p, r.level);
  return ResidueElement{r.p, r.level, ctx.conjugate(r.c, nu, r.level)};
}

std::vector<u64> normalized_log(const FieldSpec& F, const AlgebraicNumber& eta, u64 p,
                                int precision) {
  if (precision < 1 || precision > 3)
    throw ConfigError("normalized_log: precision must be in {1,2,3}");
  PrimeContext ctx(F, p, precision);
  return ctx.normalized_log(eta, precision);
}

}  // namespace thetareg
