#include "thetareg/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "thetareg/primes.hpp"

namespace thetareg {

int GroupData::elem_index(const std::string& label) const {
  for (int i = 0; i < n; ++i)
    if (elem[i] == label) return i;
  throw ConfigError("unknown group element label: " + label);
}

int GroupData::elem_order(int g) const {
  int cur = g, k = 1;
  while (cur != id_) { cur = mul[g][cur]; ++k; }
  return k;
}

void GroupData::validate() const {
  if ((int)mul.size() != n) throw ConfigError("group: bad multiplication table size");
  for (const auto& row : mul) {
    if ((int)row.size() != n) throw ConfigError("group: ragged multiplication table");
    for (int v : row)
      if (v < 0 || v >= n) throw ConfigError("group: table entry out of range");
  }
  for (int a = 0; a < n; ++a) {
    if (mul[id_][a] != a || mul[a][id_] != a) throw ConfigError("group: identity law fails");
    if (mul[a][inv[a]] != id_ || mul[inv[a]][a] != id_) throw ConfigError("group: inverse law fails");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw ConfigError("group: associativity fails");
  // sum of squared character degrees
  i64 s = 0;
  for (const auto& ch : chars) s += (i64)ch.degree * ch.degree;
  if (s != n) throw ConfigError("group: character degrees do not sum to |G|");
}

namespace {

GroupData make_cyclic(int n) {
  GroupData G;
  G.label = n == 1 ? "C1" : "C" + std::to_string(n);
  G.n = n;
  G.elem.resize(n);
  G.elem[0] = "1";
  for (int k = 1; k < n; ++k) G.elem[k] = k == 1 ? "s" : "s" + std::to_string(k);
  G.mul.assign(n, std::vector<int>(n));
  G.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) G.mul[a][b] = (a + b) % n;
    G.inv[a] = (n - a) % n;
  }
  G.id_ = 0;
  if (n > 1) G.generators = {1};
  G.exponent = n;
  // Absolutely irreducible characters phi_a(s^k) = zeta_n^{ak}, grouped into
  // rational characters by exact order d | n.
  G.chars.resize(n);
  for (int a = 0; a < n; ++a) {
    u64 d = (u64)n / gcd_u64(a, n);
    AbsIrredChar ch;
    ch.degree = 1;
    ch.d = d == 0 ? 1 : d;
    ch.exp.resize(n);
    for (int k = 0; k < n; ++k) ch.exp[k] = (u64)((i64)a * k % n) % n * ch.d / n % ch.d;
    G.chars[a] = ch;
  }
  std::vector<u64> divisors;
  for (u64 d = 1; d <= (u64)n; ++d)
    if ((u64)n % d == 0) divisors.push_back(d);
  for (u64 d : divisors) {
    RationalChar rc;
    rc.degree = 1;
    rc.d = d;
    rc.name = d == 1 ? "chi0" : "chi" + std::to_string(G.rats.size());
    for (int a = 0; a < n; ++a)
      if ((u64)n / gcd_u64(a, n) == d) rc.phis.push_back(a);
    G.rats.push_back(rc);
  }
  return G;
}

GroupData make_d6() {
  GroupData G;
  G.label = "D6";
  G.n = 6;
  G.elem = {"1", "s", "s2", "t", "ts", "ts2"};
  // Composition convention: (eta^b)^a = eta^{ab}; t*s = ts, s*t = ts2.
  auto idx = [&](const std::string& l) {
    return (int)(std::find(G.elem.begin(), G.elem.end(), l) - G.elem.begin());
  };
  // present elements as (r, e): element = t^e s^r with s^3 = t^2 = 1, s t = t s^2
  auto code = [&](int e, int r) { return e == 0 ? (r == 0 ? "1" : (r == 1 ? "s" : "s2"))
                                                : (r == 0 ? "t" : (r == 1 ? "ts" : "ts2")); };
  auto parse = [&](int i, int& e, int& r) {
    switch (i) {
      case 0: e = 0; r = 0; break;
      case 1: e = 0; r = 1; break;
      case 2: e = 0; r = 2; break;
      case 3: e = 1; r = 0; break;
      case 4: e = 1; r = 1; break;
      case 5: e = 1; r = 2; break;
    }
  };
  G.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int ea, ra, eb, rb;
      parse(a, ea, ra);
      parse(b, eb, rb);
      // (t^ea s^ra)(t^eb s^rb) = t^{ea+eb} s^{(-1)^{eb} ra + rb}
      int e = (ea + eb) % 2;
      int r = (((eb ? -ra : ra) + rb) % 3 + 3) % 3;
      G.mul[a][b] = idx(code(e, r));
    }
  G.inv.resize(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (G.mul[a][b] == 0) G.inv[a] = b;
  G.id_ = 0;
  G.generators = {idx("s"), idx("t")};
  G.exponent = 6;

  AbsIrredChar triv;
  triv.degree = 1;
  triv.d = 1;
  triv.exp.assign(6, 0);

  AbsIrredChar sign;  // chi_1: +1 on rotations, -1 on reflections
  sign.degree = 1;
  sign.d = 2;
  sign.exp = {0, 0, 0, 1, 1, 1};

  AbsIrredChar two;  // chi_2: the faithful degree-2 representation
  two.degree = 2;
  two.d = 1;
  two.mat = {
      {1, 0, 0, 1},     // 1
      {-1, -1, 1, 0},   // s
      {0, 1, -1, -1},   // s2
      {1, 0, -1, -1},   // t
      {-1, -1, 0, 1},   // ts
      {0, 1, 1, 0},     // ts2
  };
  two.trace = {2, -1, -1, 0, 0, 0};

  G.chars = {triv, sign, two};
  G.rats.resize(3);
  G.rats[0] = {"chi0", 1, 1, {0}};
  G.rats[1] = {"chi1", 1, 2, {1}};
  G.rats[2] = {"chi2", 2, 1, {2}};
  return G;
}

}  // namespace

GroupData builtin_group(const std::string& label) {
  if (label == "C1" || label == "Q" || label == "trivial") return make_cyclic(1);
  if (label == "C2") return make_cyclic(2);
  if (label == "C3") return make_cyclic(3);
  if (label == "C5") return make_cyclic(5);
  if (label.rfind("Cn:", 0) == 0) return make_cyclic(std::stoi(label.substr(3)));
  if (label.rfind("Cn(", 0) == 0 && label.back() == ')')
    return make_cyclic(std::stoi(label.substr(3, label.size() - 4)));
  if (label == "D6") return make_d6();
  throw ConfigError("unsupported builtin group label: " + label);
}

std::vector<PAdicCharBundle> padic_decompose(const GroupData& G, int chi, u64 p) {
  if (p % 2 == 0 || G.exponent % p == 0)
    throw ConfigError("padic_decompose: need p odd with p not dividing the group exponent");
  const RationalChar& rc = G.rats.at(chi);
  std::vector<PAdicCharBundle> out;
  u64 d = rc.d;
  if (d <= 2 || rc.degree > 1) {
    // Rational-valued characters: C = Q, single bundle with f = 1.
    PAdicCharBundle b;
    b.chi = chi;
    b.p = p;
    b.d = d;
    b.f = 1;
    b.h = 1;
    b.degree = rc.degree;
    b.root = d == 2 ? p - 1 : 1;
    b.orbit = rc.phis;
    b.id = rc.name;
    out.push_back(b);
    return out;
  }
  int f = order_mod(p, d);
  if (f == 1) {
    auto roots = roots_of_order(d, p);  // ascending; one bundle per r
    // map each root to the phi with phi(gen) = zeta_d^a; the bundle is a
    // single phi numerically embedded by zeta_d -> r.
    for (u64 r : roots) {
      PAdicCharBundle b;
      b.chi = chi;
      b.p = p;
      b.d = d;
      b.f = 1;
      b.h = (int)roots.size();
      b.degree = rc.degree;
      b.root = r;
      b.orbit = {rc.phis.front()};
      b.id = rc.name + ":r" + std::to_string(r);
      out.push_back(b);
    }
    return out;
  }
  // f > 1: one bundle per monic irreducible degree-f factor of Phi_d mod p.
  auto factors = cyclotomic_factors(d, p, f);
  int h = (int)factors.size();
  int counter = 0;
  for (const auto& g : factors) {
    PAdicCharBundle b;
    b.chi = chi;
    b.p = p;
    b.d = d;
    b.f = f;
    b.h = h;
    b.degree = rc.degree;
    b.ext = ExtField(p, g);
    // orbit: the Frobenius orbit of the first phi: exponents a*p^i mod d
    // (used only for bookkeeping; the resolvent works from the root t).
    b.orbit.assign(rc.phis.begin(), rc.phis.begin() + std::min<size_t>(f, rc.phis.size()));
    b.id = rc.name + ":f" + std::to_string(f) + "#" + std::to_string(counter++);
    out.push_back(b);
  }
  return out;
}

std::vector<PAdicCharBundle> all_bundles(const GroupData& G, u64 p) {
  std::vector<PAdicCharBundle> out;
  for (int c = 0; c < (int)G.rats.size(); ++c) {
    auto bs = padic_decompose(G, c, p);
    out.insert(out.end(), bs.begin(), bs.end());
  }
  return out;
}

std::vector<u64> idempotent_mod_p(const GroupData& G, const PAdicCharBundle& theta, u64 p) {
  if ((u64)G.n % p == 0 || G.exponent % p == 0)
    throw ConfigError("idempotent_mod_p: need p prime to |G| and the exponent");
  const RationalChar& rc = G.rats.at(theta.chi);
  std::vector<u64> e(G.n, 0);
  u64 scale = mulmod((u64)rc.degree % p, invmod((u64)G.n % p, p), p);
  for (int nu = 0; nu < G.n; ++nu) {
    int nui = G.inv[nu];
    u64 tr;
    if (rc.degree >= 2) {
      // rational traces
      tr = smod(G.chars[rc.phis[0]].trace[nui], p);
    } else if (theta.d <= 2) {
      const auto& ch = G.chars[rc.phis[0]];
      tr = ch.exp[nui] % 2 == 0 ? 1 : p - 1;
      if (theta.d == 1) tr = 1;
    } else if (theta.f == 1) {
      const auto& ch = G.chars[theta.orbit[0]];
      tr = powmod(theta.root, ch.exp[nui], p);
    } else {
      const auto& ch = G.chars[theta.orbit[0]];
      auto val = theta.ext.pow(theta.ext.gen(), ch.exp[nui]);
      tr = theta.ext.trace(val);
    }
    e[nu] = mulmod(scale, tr, p);
  }
  return e;
}

std::vector<u64> algebra_mul(const GroupData& G, const std::vector<u64>& a,
                             const std::vector<u64>& b, u64 p) {
  std::vector<u64> r(G.n, 0);
  for (int h = 0; h < G.n; ++h) {
    if (!a[h]) continue;
    for (int k = 0; k < G.n; ++k) {
      if (!b[k]) continue;
      int g = G.mul[h][k];
      r[g] = addmod(r[g], mulmod(a[h], b[k], p), p);
    }
  }
  return r;
}

u64 ext_norm(const ExtField& ext, const ExtField::Elem& x) { return ext.norm(x); }

}  // namespace thetareg
