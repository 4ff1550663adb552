#include "thetareg/ring.hpp"

#include <stdexcept>

namespace thetareg {

QuotientRing::QuotientRing(const std::vector<i64>& poly, u64 modulus)
    : n_((int)poly.size() - 1), m_(modulus) {
  if (n_ < 1) throw ConfigError("defining polynomial must have degree >= 1");
  if (poly.back() != 1) throw ConfigError("defining polynomial must be monic");
  pmod_.resize(n_);
  for (int i = 0; i < n_; ++i) pmod_[i] = smod(poly[i], m_);
}

QuotientRing::Elem QuotientRing::one() const {
  Elem e(n_, 0);
  e[0] = 1 % m_;
  return e;
}

QuotientRing::Elem QuotientRing::scalar(u64 c) const {
  Elem e(n_, 0);
  e[0] = c % m_;
  return e;
}

QuotientRing::Elem QuotientRing::from_signed(const std::vector<i64>& v) const {
  Elem e(n_, 0);
  for (size_t i = 0; i < v.size() && i < (size_t)n_; ++i) e[i] = smod(v[i], m_);
  return e;
}

QuotientRing::Elem QuotientRing::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = addmod(a[i], b[i], m_);
  return r;
}

QuotientRing::Elem QuotientRing::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (int i = 0; i < n_; ++i) r[i] = submod(a[i], b[i], m_);
  return r;
}

QuotientRing::Elem QuotientRing::scal(u64 c, const Elem& a) const {
  Elem r(n_);
  c %= m_;
  for (int i = 0; i < n_; ++i) r[i] = mulmod(c, a[i], m_);
  return r;
}

QuotientRing::Elem QuotientRing::mul(const Elem& a, const Elem& b) const {
  // Schoolbook product, then reduction by the monic P (degree n_).
  std::vector<u64> full(2 * n_ - 1, 0);
  for (int i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < n_; ++j) {
      if (!b[j]) continue;
      full[i + j] = addmod(full[i + j], mulmod(a[i], b[j], m_), m_);
    }
  }
  for (int d = 2 * n_ - 2; d >= n_; --d) {
    u64 c = full[d];
    if (!c) continue;
    full[d] = 0;
    for (int i = 0; i < n_; ++i) {
      if (pmod_[i]) full[d - n_ + i] = submod(full[d - n_ + i], mulmod(c, pmod_[i], m_), m_);
    }
  }
  full.resize(n_);
  return full;
}

QuotientRing::Elem QuotientRing::pow(Elem base, u128 e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

QuotientRing::Elem QuotientRing::compose(const Elem& r, const Elem& a) const {
  Elem acc = zero();
  for (int i = n_ - 1; i >= 0; --i) {
    acc = mul(acc, a);
    acc[0] = addmod(acc[0], r[i], m_);
  }
  return acc;
}

namespace {

// Polynomial helpers over F_p on raw vectors (lowest degree first, no
// trailing-zero guarantees).
int pdeg(const std::vector<u64>& a) {
  for (int i = (int)a.size() - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

// a mod b over F_p, b non-zero.
std::vector<u64> pmod_fp(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
  int db = pdeg(b);
  u64 lc_inv = invmod(b[db], p);
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    u64 q = mulmod(a[da], lc_inv, p);
    for (int i = 0; i <= db; ++i) a[da - db + i] = submod(a[da - db + i], mulmod(q, b[i], p), p);
  }
  return a;
}

}  // namespace

bool QuotientRing::is_unit_mod_p(const Elem& a, u64 p) const {
  // gcd(a, P) over F_p by Euclid.
  std::vector<u64> f(n_ + 1);
  for (int i = 0; i < n_; ++i) f[i] = pmod_[i] % p;
  f[n_] = 1 % p;
  std::vector<u64> g(n_);
  for (int i = 0; i < n_; ++i) g[i] = a[i] % p;
  while (pdeg(g) >= 0) {
    auto r = pmod_fp(f, g, p);
    f = g;
    g = r;
  }
  return pdeg(f) == 0;
}

bool QuotientRing::try_inverse(const Elem& a, u64 p, Elem& out) const {
  // Extended Euclid over F_p[x] against P, then Hensel lifting to p^k.
  const int cap = 2 * n_ + 2;
  std::vector<u64> r0(cap, 0), r1(cap, 0), s0(cap, 0), s1(cap, 0);
  for (int i = 0; i < n_; ++i) r0[i] = pmod_[i] % p;
  r0[n_] = 1 % p;
  for (int i = 0; i < n_; ++i) r1[i] = a[i] % p;
  s1[0] = 1;  // invariant: r_i = s_i * a  (mod P, p)

  while (pdeg(r1) > 0) {
    int d0 = pdeg(r0), d1 = pdeg(r1);
    if (d0 < d1) { std::swap(r0, r1); std::swap(s0, s1); continue; }
    u64 q = mulmod(r0[d0], invmod(r1[d1], p), p);
    int shift = d0 - d1;
    for (int i = 0; i + shift < cap; ++i) {
      if (r1[i]) r0[i + shift] = submod(r0[i + shift], mulmod(q, r1[i], p), p);
      if (s1[i]) s0[i + shift] = submod(s0[i + shift], mulmod(q, s1[i], p), p);
    }
  }
  if (pdeg(r1) < 0) return false;   // a == 0 mod p
  if (pdeg(r1) != 0) return false;  // unreachable; kept for clarity
  // Check the true gcd: if r1 is the final nonzero remainder, a is a unit.
  u64 c_inv = invmod(r1[0], p);
  Elem inv_p(n_, 0);
  for (int i = 0; i < n_ && i < cap; ++i) inv_p[i] = mulmod(s1[i] % p, c_inv, p);

  // Newton lifting x -> x(2 - a x); precision doubles per round.
  Elem x = inv_p;
  for (int round = 0; round < 6; ++round) {
    Elem check = mul(a, x);
    if (is_constant(check) && check[0] == 1 % m_) { out = x; return true; }
    x = mul(x, sub(scalar(2), check));
  }
  Elem check = mul(a, x);
  if (is_constant(check) && check[0] == 1 % m_) { out = x; return true; }
  return false;
}

bool QuotientRing::is_zero(const Elem& a) const {
  for (u64 v : a)
    if (v) return false;
  return true;
}

bool QuotientRing::is_constant(const Elem& a) const {
  for (int i = 1; i < n_; ++i)
    if (a[i]) return false;
  return true;
}

u64 QuotientRing::scalarize(const Elem& a) const {
  if (!is_constant(a))
    throw std::runtime_error("scalarize: ring element is not a constant (non-invariant product)");
  return a[0];
}

}  // namespace thetareg
