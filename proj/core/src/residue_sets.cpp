#include "thetareg/residue_sets.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "thetareg/primes.hpp"

namespace thetareg {

std::vector<i64> centered_residue(const FieldSpec& F, const std::vector<i64>& v, u64 p) {
  std::vector<i64> out(F.n, 0);
  for (int i = 0; i < F.n && i < (int)v.size(); ++i) out[i] = center(smod(v[i], p), p);
  return out;
}

namespace {

std::vector<i64> center_vec(const std::vector<u64>& v, u64 p) {
  std::vector<i64> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = center(v[i] % p, p);
  return out;
}

// p^np - 1 factored through cyclotomic values Phi_k(p), k | np, each of which
// stays well under 2^64 for desk-scale parameters; returns nullopt on
// overflow risk.
std::optional<std::vector<u64>> factor_pn_minus_1(u64 p, int np) {
  std::vector<u64> factors;
  for (int k = 1; k <= np; ++k) {
    if (np % k) continue;
    // Phi_k(p) via the integer recursion: (p^k - 1) / prod_{e|k, e<k} Phi_e(p)
    // computed directly with 128-bit checks.
    u128 pk = 1;
    for (int i = 0; i < k; ++i) {
      pk *= p;
      if (pk > (u128)UINT64_MAX * UINT64_MAX) return std::nullopt;
    }
    // gather Phi_k(p) by dividing p^k-1 by the lower cyclotomic values
    u128 val = pk - 1;
    for (int e = 1; e < k; ++e) {
      if (k % e) continue;
      u128 pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      // recompute Phi_e(p) the same way (small recursion depth)
      u128 ve = pe - 1;
      for (int e2 = 1; e2 < e; ++e2) {
        if (e % e2) continue;
        u128 p2 = 1;
        for (int i = 0; i < e2; ++i) p2 *= p;
        u128 v2 = p2 - 1;
        for (int e3 = 1; e3 < e2; ++e3) {
          if (e2 % e3) continue;
          u128 p3 = 1;
          for (int i = 0; i < e3; ++i) p3 *= p;
          v2 /= (p3 - 1);  // np <= 6: at most three nested levels
        }
        ve /= v2;
      }
      val /= ve;
    }
    if (val > UINT64_MAX) return std::nullopt;
    for (u64 q : factorize((u64)val)) factors.push_back(q);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

ResidueSet build_residue_set(const FieldSpec& F, const AlgebraicNumber& gamma, u64 p) {
  PrimeContext ctx(F, p, 1);
  const QuotientRing& R = ctx.ring(1);
  ResidueSet out;
  out.p = p;
  out.np = ctx.np();
  out.gamma = gamma;

  auto g = ctx.reduce(gamma, 1);
  if (!R.is_unit_mod_p(g, p)) throw ConfigError("gamma is not prime to p");

  // Inert-quadratic convention: statistics run on gamma^{tau-1}.
  if (F.n == 2 && out.np == 2) {
    QuotientRing::Elem ginv;
    if (!R.try_inverse(g, p, ginv)) throw ConfigError("gamma not invertible");
    int tau = F.group.identity() == 0 ? 1 : 0;
    g = R.mul(ctx.conjugate(g, tau, 1), ginv);
    out.quadratic_inert_shift = true;
  }

  std::vector<std::vector<u64>> torsion_mod;
  for (const auto& t : F.torsion) torsion_mod.push_back(ctx.reduce(t, 1));

  out.elems.reserve(p - 1);
  auto cur = g;
  for (u64 k = 1; k < p; ++k) {
    if (k > 1) cur = R.mul(cur, g);
    bool is_torsion = false;
    for (const auto& t : torsion_mod)
      if (t == cur) { is_torsion = true; break; }
    if (is_torsion) {
      ++out.removed_torsion;
      continue;
    }
    out.elems.push_back(center_vec(cur, p));
  }

  // multiplicative order check (factors of p^np - 1 when representable)
  u128 full = ipow128(p, (unsigned)out.np) - 1;
  if (auto factors = factor_pn_minus_1(p, out.np)) {
    u64 full64 = (u64)full;
    u64 ord = order_from_factored(*factors, full64, [&](u64 e) {
      auto t = R.pow(g, e);
      return R.is_constant(t) && t[0] == 1;
    });
    out.order = ord;
    out.max_order = (ord == full64);
  }
  return out;
}

RepetitionStats repetition_stats(const FieldSpec& F, const PAdicCharBundle& theta,
                                 const ResidueSet& set, u64 p, int workers) {
  RepetitionStats st;
  st.p = p;
  st.theta_id = theta.id;
  st.size = set.elems.size();

  PrimeContext ctx(F, p, 1);
  ThetaEvaluator ev(ctx, theta, 1);
  size_t n_el = set.elems.size();
  if (workers < 1) workers = 1;
  std::vector<std::unordered_map<u64, u64>> maps(workers);
  {
    std::vector<std::thread> pool;
    std::vector<std::string> errors(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          size_t lo = n_el * w / workers, hi = n_el * (w + 1) / workers;
          for (size_t i = lo; i < hi; ++i) {
            auto z = ctx.ring(2).from_signed(set.elems[i]);
            u64 v = ev.value(ctx.alpha_of_residue(z, 1));
            ++maps[w][v];
          }
        } catch (const std::exception& e) {
          errors[w] = e.what();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (!e.empty()) throw std::runtime_error("repetition_stats worker: " + e);
  }
  for (const auto& m : maps)
    for (auto [u, c] : m) st.counts[u] += c;

  st.m0 = st.counts.count(0) ? st.counts.at(0) : 0;
  st.reached = st.counts.size();
  st.Mp = 0;
  for (auto [u, c] : st.counts) st.Mp = std::max(st.Mp, c);
  for (auto [u, c] : st.counts)
    if (c == st.Mp) { st.u0 = u; break; }  // smallest u attaining Mp
  return st;
}

double reached_proportion(const RepetitionStats& stats) {
  return (double)stats.reached / (double)stats.p;
}

std::string kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::none: return "none";
    case SolutionKind::exceptional: return "exceptional";
    case SolutionKind::abundant: return "abundant";
    case SolutionKind::mixed: return "mixed";
  }
  return "?";
}

SolutionClassification classify_solutions(const FieldSpec& F, const PAdicCharBundle& theta,
                                          const AlgebraicNumber& eta, u64 p, int workers) {
  SolutionClassification out;
  PrimeContext ctx(F, p, 1);
  ThetaEvaluator ev(ctx, theta, 1);

  bool eta_null = ev.value(ctx.alpha(eta, 1)) == 0;
  auto arch = archimedean_data(F, eta);
  out.h = h_bound(F, arch, eta, p);

  if (eta_null) {
    // verify the exceptional chain eta^j = [eta^j]_p, j <= h, each theta-null
    std::vector<mpz_class> pw(F.n, 0);
    pw[0] = 1;  // eta^j = pw / den^j
    std::vector<mpz_class> num(F.n);
    for (int i = 0; i < F.n; ++i) num[i] = eta.num[i];
    mpz_class denpow = 1;
    for (int j = 1; j <= std::max(1, out.h); ++j) {
      pw = zmul_mod_poly(F.poly, pw, num);
      denpow *= eta.den;
      // centered box membership of eta^j = pw/denpow (must be integral here
      // for the witness chain; rational eta's chain is checked via residues)
      bool integral = true;
      std::vector<i64> vec(F.n, 0);
      for (int i = 0; i < F.n; ++i) {
        mpz_class q = pw[i] / denpow;
        if (q * denpow != pw[i]) { integral = false; break; }
        if (!q.fits_slong_p()) { integral = false; break; }
        vec[i] = (i64)q.get_si();
      }
      bool inside = integral;
      if (integral) {
        if (F.n == 1) {
          inside = vec[0] >= 1 && (u64)vec[0] < p;  // K = Q window [1, p[
        } else {
          for (i64 c : vec)
            if (!(2 * c > -(i64)p && 2 * c <= (i64)p)) inside = false;
        }
      }
      if (!inside) break;
      // theta-nullity of eta^j
      auto zred = ctx.ring(2).from_signed(vec);
      if (ev.value(ctx.alpha_of_residue(zred, 1)) != 0) break;
      out.witnesses.emplace_back(j, vec);
    }
  }

  // m_p(0) over I_p
  if (F.n == 1) {
    // Fermat-quotient window [2, p-1[; direct loop
    u64 m0 = 0;
    u64 pp = p * p;
    for (u64 z = 2; z <= p - 2; ++z) {
      u64 t = powmod(z, p - 1, pp);
      u64 a = ((t - 1) / p) % p;
      if (a == 0) ++m0;
    }
    out.m0 = m0;
  } else {
    auto set = build_residue_set(F, eta, p);
    auto st = repetition_stats(F, theta, set, p, workers);
    out.m0 = st.m0;
    out.order_D = set.order;
    if (set.order) {
      // order modulo torsion: smallest divisor d of D with eta^d torsion mod p
      const QuotientRing& R = ctx.ring(1);
      auto g = ctx.reduce(eta, 1);
      std::vector<std::vector<u64>> torsion_mod;
      for (const auto& t : F.torsion) torsion_mod.push_back(ctx.reduce(t, 1));
      u64 D = *set.order;
      u64 best = D;
      for (u64 d = 1; d * d <= D; ++d) {
        if (D % d) continue;
        for (u64 cand : {d, D / d}) {
          if (cand >= best) continue;
          auto t = R.pow(g, cand);
          for (const auto& tz : torsion_mod)
            if (tz == t) { best = cand; break; }
        }
      }
      out.order_d = best;
    }
  }

  bool exceptional = eta_null && (int)out.witnesses.size() >= std::max(1, out.h);
  double loglog = std::log(std::log((double)p));
  u64 abundance_cut = std::max<u64>(3, (u64)std::ceil(std::log((double)p) / loglog));
  bool abundant = out.m0 >= abundance_cut;
  out.kind = exceptional && abundant ? SolutionKind::mixed
             : exceptional          ? SolutionKind::exceptional
             : abundant             ? SolutionKind::abundant
                                    : SolutionKind::none;
  return out;
}

BoxStats box_stats(const FieldSpec& F, const PAdicCharBundle& theta, u64 p, int workers,
                   u64 budget) {
  double total = std::pow((double)p, F.n);
  if (total > (double)budget) throw ConfigError("box_stats: p^n exceeds the budget guard");
  PrimeContext ctx(F, p, 1);
  ThetaEvaluator ev(ctx, theta, 1);
  const QuotientRing& R1 = ctx.ring(1);

  BoxStats out;
  out.p = p;
  out.np = ctx.np();

  u64 boxes = 1;
  for (int i = 0; i < F.n; ++i) boxes *= p;
  if (workers < 1) workers = 1;
  std::vector<std::unordered_map<u64, u64>> maps(workers);
  std::vector<u64> counts(workers, 0);
  std::vector<std::thread> pool;
  std::vector<std::string> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        u64 lo = boxes / workers * w + std::min<u64>(w, boxes % workers);
        u64 hi = lo + boxes / workers + (u64)((u64)w < boxes % workers);
        std::vector<i64> z(F.n);
        for (u64 idx = lo; idx < hi; ++idx) {
          u64 t = idx;
          for (int i = 0; i < F.n; ++i) {
            z[i] = center(t % p, p);
            t /= p;
          }
          auto zp = R1.from_signed(z);
          if (!R1.is_unit_mod_p(zp, p)) continue;
          ++counts[w];
          auto z2 = ctx.ring(2).from_signed(z);
          u64 v = ev.value(ctx.alpha_of_residue(z2, 1));
          ++maps[w][v];
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("box_stats worker: " + e);

  std::map<u64, u64> all;
  for (const auto& m : maps)
    for (auto [u, c] : m) all[u] += c;
  for (u64 c : counts) out.Np += c;
  out.m0 = all.count(0) ? all.at(0) : 0;
  for (auto [u, c] : all) out.Mp = std::max(out.Mp, c);
  for (auto [u, c] : all)
    if (c == out.Mp) { out.u0 = u; break; }
  out.m0_norm = (double)out.m0 * (double)(p - 1) / (double)out.Np;
  out.Mp_norm = (double)F.n * (double)(p - 1) * (double)out.Mp / (double)out.Np;
  return out;
}

std::optional<u64> dlog_in_cyclic(const FieldSpec& F, const AlgebraicNumber& gamma,
                                  const AlgebraicNumber& eta, u64 p) {
  PrimeContext ctx(F, p, 1);
  const QuotientRing& R = ctx.ring(1);
  auto set = build_residue_set(F, gamma, p);
  if (!set.order) return std::nullopt;
  u64 D = *set.order;
  u64 m = (u64)std::ceil(std::sqrt((double)D));
  auto g = ctx.reduce(gamma, 1);
  auto target = ctx.reduce(eta, 1);

  struct VecHash {
    size_t operator()(const std::vector<u64>& v) const {
      size_t h = 1469598103934665603ULL;
      for (u64 x : v) { h ^= x; h *= 1099511628211ULL; }
      return h;
    }
  };
  std::unordered_map<std::vector<u64>, u64, VecHash> baby;
  auto cur = R.one();
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = R.mul(cur, g);
  }
  // giant step: g^{-m}
  QuotientRing::Elem ginv;
  if (!R.try_inverse(g, p, ginv)) return std::nullopt;
  auto giant = R.pow(ginv, m);
  auto probe = target;
  for (u64 i = 0; i <= m; ++i) {
    auto it = baby.find(probe);
    if (it != baby.end()) {
      u64 e = (i * m + it->second) % D;
      return e;
    }
    probe = R.mul(probe, giant);
  }
  return std::nullopt;
}

}  // namespace thetareg
