#include "thetareg/extfield.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "thetareg/primes.hpp"

namespace thetareg {

ExtField::ExtField(u64 p, std::vector<u64> modulus_low_coeffs)
    : p_(p), g_(std::move(modulus_low_coeffs)) {
  for (auto& c : g_) c %= p_;
}

ExtField::Elem ExtField::one() const {
  Elem e(f(), 0);
  e[0] = 1 % p_;
  return e;
}

ExtField::Elem ExtField::scalar(u64 c) const {
  Elem e(f(), 0);
  e[0] = c % p_;
  return e;
}

ExtField::Elem ExtField::gen() const {
  Elem e(f(), 0);
  if (f() == 1) {
    // Degenerate: t == -g_[0]; callers use roots_of_order() instead for f=1.
    e[0] = submod(0, g_[0], p_);
  } else {
    e[1] = 1;
  }
  return e;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(f());
  for (int i = 0; i < f(); ++i) r[i] = addmod(a[i], b[i], p_);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(f());
  for (int i = 0; i < f(); ++i) r[i] = submod(a[i], b[i], p_);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  int n = f();
  std::vector<u64> full(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < n; ++j)
      if (b[j]) full[i + j] = addmod(full[i + j], mulmod(a[i], b[j], p_), p_);
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    u64 c = full[d];
    if (!c) continue;
    full[d] = 0;
    for (int i = 0; i < n; ++i)
      if (g_[i]) full[d - n + i] = submod(full[d - n + i], mulmod(c, g_[i], p_), p_);
  }
  full.resize(n);
  return full;
}

ExtField::Elem ExtField::pow(Elem a, u128 e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

ExtField::Elem ExtField::frobenius(const Elem& a) const { return pow(a, p_); }

u64 ExtField::norm(const Elem& a) const {
  Elem acc = a, cur = a;
  for (int i = 1; i < f(); ++i) {
    cur = frobenius(cur);
    acc = mul(acc, cur);
  }
  for (int i = 1; i < f(); ++i)
    if (acc[i]) throw std::runtime_error("ExtField::norm: result not rational");
  return acc[0];
}

u64 ExtField::trace(const Elem& a) const {
  Elem acc = a, cur = a;
  for (int i = 1; i < f(); ++i) {
    cur = frobenius(cur);
    acc = add(acc, cur);
  }
  for (int i = 1; i < f(); ++i)
    if (acc[i]) throw std::runtime_error("ExtField::trace: result not rational");
  return acc[0];
}

bool ExtField::is_zero(const Elem& a) const {
  for (u64 v : a)
    if (v) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

// Dense polynomial helpers over F_p, lowest degree first.
using Poly = std::vector<u64>;

int pdeg(const Poly& a) {
  for (int i = (int)a.size() - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

Poly ptrim(Poly a) {
  a.resize(pdeg(a) + 1);
  return a;
}

Poly pmul(const Poly& a, const Poly& b, u64 p) {
  if (pdeg(a) < 0 || pdeg(b) < 0) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
  }
  return r;
}

Poly prem(Poly a, const Poly& b, u64 p) {
  int db = pdeg(b);
  u64 lcinv = invmod(b[db], p);
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    u64 q = mulmod(a[da], lcinv, p);
    for (int i = 0; i <= db; ++i) a[da - db + i] = submod(a[da - db + i], mulmod(q, b[i], p), p);
  }
  return a;
}

Poly pdivexact(Poly a, const Poly& b, u64 p) {
  int db = pdeg(b), da = pdeg(a);
  Poly q(std::max(0, da - db + 1), 0);
  u64 lcinv = invmod(b[db], p);
  for (int d = da; d >= db; d = pdeg(a)) {
    u64 c = mulmod(a[d], lcinv, p);
    q[d - db] = c;
    for (int i = 0; i <= db; ++i) a[d - db + i] = submod(a[d - db + i], mulmod(c, b[i], p), p);
  }
  if (pdeg(a) >= 0) throw std::runtime_error("pdivexact: not divisible");
  return q;
}

Poly pgcd(Poly a, Poly b, u64 p) {
  while (pdeg(b) >= 0) {
    Poly r = prem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  // make monic
  int d = pdeg(a);
  if (d >= 0) {
    u64 lcinv = invmod(a[d], p);
    for (auto& c : a) c = mulmod(c, lcinv, p);
  }
  return ptrim(a);
}

Poly ppowmod(Poly base, u128 e, const Poly& mod, u64 p) {
  Poly r{1 % p};
  base = ptrim(prem(std::move(base), mod, p));
  while (e) {
    if (e & 1) r = ptrim(prem(pmul(r, base, p), mod, p));
    base = ptrim(prem(pmul(base, base, p), mod, p));
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<u64> cyclotomic_mod_p(u64 d, u64 p) {
  // Phi_d over Z by the standard divide-out recursion, then reduced mod p.
  // Degrees here are small (d is a character order), so i64 suffices after
  // reduction at every step mod p done at the end via exact integer division.
  std::map<u64, std::vector<i64>> memo;
  std::function<std::vector<i64>(u64)> phi = [&](u64 m) -> std::vector<i64> {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    // x^m - 1
    std::vector<i64> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (u64 e = 1; e < m; ++e) {
      if (m % e) continue;
      auto div = phi(e);
      // exact division num /= div (monic)
      std::vector<i64> q(num.size() - div.size() + 1, 0);
      std::vector<i64> rem = num;
      for (int dd = (int)rem.size() - 1; dd >= (int)div.size() - 1; --dd) {
        i64 c = rem[dd];
        if (!c) continue;
        q[dd - (div.size() - 1)] = c;
        for (size_t i = 0; i < div.size(); ++i) rem[dd - (div.size() - 1) + i] -= c * div[i];
      }
      num = q;
    }
    memo[m] = num;
    return num;
  };
  auto zi = phi(d);
  std::vector<u64> out(zi.size());
  for (size_t i = 0; i < zi.size(); ++i) out[i] = smod(zi[i], p);
  return out;
}

int order_mod(u64 p, u64 d) {
  if (d <= 2) return 1;
  u64 r = p % d;
  if (gcd_u64(r, d) != 1) throw ConfigError("order_mod: p divides the character order");
  u64 cur = r;
  for (int k = 1; k <= (int)d; ++k) {
    if (cur == 1) return k;
    cur = (cur * r) % d;
  }
  throw std::logic_error("order_mod: no order found");
}

std::vector<u64> roots_of_order(u64 d, u64 p) {
  if (d == 1) return {1 % p};
  if ((p - 1) % d != 0) throw ConfigError("roots_of_order: d does not divide p-1");
  // Deterministic: raise a = 2, 3, ... to the (p-1)/d power until the result
  // has exact order d, then collect the primitive powers.
  u64 e = (p - 1) / d;
  for (u64 a = 2; a < p; ++a) {
    u64 r = powmod(a, e, p);
    if (r == 1) continue;
    bool exact = true;
    for (u64 q : factorize(d))
      if (powmod(r, d / q, p) == 1) { exact = false; break; }
    if (!exact) continue;
    std::vector<u64> out;
    u64 cur = r;
    for (u64 k = 1; k <= d; ++k) {
      if (gcd_u64(k, d) == 1) out.push_back(cur);
      cur = mulmod(cur, r, p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  throw std::logic_error("roots_of_order: none found");
}

std::vector<std::vector<u64>> cyclotomic_factors(u64 d, u64 p, int f) {
  Poly phi = cyclotomic_mod_p(d, p);
  int total = pdeg(phi);
  if (total % f != 0) throw std::logic_error("cyclotomic_factors: inconsistent f");
  // Equal-degree factorization (all factors have degree f). Cantor-Zassenhaus
  // with a fixed element sequence for determinism.
  std::vector<Poly> work{ptrim(phi)}, done;
  u64 counter = 0;
  while (!work.empty()) {
    Poly cur = work.back();
    work.pop_back();
    if (pdeg(cur) == f) { done.push_back(cur); continue; }
    // random-ish element a(t) of degree < deg(cur)
    Poly a(pdeg(cur), 0);
    u64 s = ++counter;
    for (auto& c : a) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      c = (s >> 16) % p;
    }
    if (pdeg(a) < 1) {  // degenerate candidate: retry with the next counter
      work.push_back(cur);
      continue;
    }
    Poly split;
    if (p == 2) {
      throw ConfigError("cyclotomic_factors: p must be odd");
    } else {
      u128 e = (ipow128(p, (unsigned)f) - 1) / 2;
      Poly b = ppowmod(a, e, cur, p);
      if (pdeg(b) >= 0) b[0] = submod(b[0], 1, p);
      split = pgcd(cur, b, p);
    }
    int ds = pdeg(split);
    if (ds <= 0 || ds == pdeg(cur)) {
      work.push_back(cur);  // unlucky element; try the next one
      continue;
    }
    work.push_back(split);
    work.push_back(pdivexact(cur, split, p));
  }
  std::vector<std::vector<u64>> out;
  for (auto& g : done) {
    // normalize monic, drop leading coefficient
    u64 lcinv = invmod(g[f], p);
    std::vector<u64> low(f);
    for (int i = 0; i < f; ++i) low[i] = mulmod(g[i], lcinv, p);
    out.push_back(low);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace thetareg
