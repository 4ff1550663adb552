#include "thetareg/regulator.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "thetareg/primes.hpp"
#include "thetareg/rng.hpp"

namespace thetareg {

namespace {

// Row echelon rank over F_p; rows are modified in place.
int row_reduce(std::vector<std::vector<u64>>& rows, u64 p) {
  int rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < cols && rank < (int)rows.size(); ++col) {
    int pivot = -1;
    for (int r = rank; r < (int)rows.size(); ++r)
      if (rows[r][col] % p != 0) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    u64 inv = invmod(rows[rank][col] % p, p);
    for (size_t c = col; c < cols; ++c) rows[rank][c] = mulmod(rows[rank][c] % p, inv, p);
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r == rank) continue;
      u64 f = rows[r][col] % p;
      if (!f) continue;
      for (size_t c = col; c < cols; ++c)
        rows[r][c] = submod(rows[r][c] % p, mulmod(f, rows[rank][c], p), p);
    }
    ++rank;
  }
  return rank;
}

// Kernel basis of the n x n matrix M (columns = unknowns) over F_p.
std::vector<std::vector<u64>> kernel_basis(std::vector<std::vector<u64>> M, u64 p) {
  int nrows = (int)M.size();
  int ncols = nrows ? (int)M[0].size() : 0;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < ncols && rank < nrows; ++col) {
    int pr = -1;
    for (int r = rank; r < nrows; ++r)
      if (M[r][col]) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(M[rank], M[pr]);
    u64 inv = invmod(M[rank][col], p);
    for (int c = col; c < ncols; ++c) M[rank][c] = mulmod(M[rank][c], inv, p);
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || !M[r][col]) continue;
      u64 f = M[r][col];
      for (int c = col; c < ncols; ++c) M[r][c] = submod(M[r][c], mulmod(f, M[rank][c], p), p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<u64>> kernel;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(ncols, 0);
    v[free] = 1;
    for (int r = 0; r < rank; ++r) {
      // pivot variable = -M[r][free]
      v[pivot_col[r]] = submod(0, M[r][free], p);
    }
    kernel.push_back(v);
  }
  return kernel;
}

}  // namespace

bool RelationModule::contains(const FieldSpec& F, const std::vector<i64>& relation) const {
  std::vector<std::vector<u64>> rows = basis;
  std::vector<u64> target(F.group.n);
  for (int i = 0; i < F.group.n; ++i)
    target[i] = smod(i < (int)relation.size() ? relation[i] : 0, p);
  int r0 = row_reduce(rows, p);
  rows.push_back(target);
  return row_reduce(rows, p) == r0;
}

RelationAnalyzer::RelationAnalyzer(const PrimeContext& ctx) : ctx_(&ctx) {
  const GroupData& G = ctx.field().group;
  bundles_ = all_bundles(G, ctx.p());
  for (const auto& b : bundles_) idempotents_.push_back(idempotent_mod_p(G, b, ctx.p()));
}

RelationModule RelationAnalyzer::analyze(const QuotientRing::Elem& alpha) const {
  const FieldSpec& F = ctx_->field();
  const GroupData& G = F.group;
  u64 p = ctx_->p();
  // Columns indexed by group element g: coefficients of alpha^g.
  std::vector<std::vector<u64>> M(F.n, std::vector<u64>(G.n));
  for (int g = 0; g < G.n; ++g) {
    auto cg = ctx_->conjugate(alpha, g, 1);
    for (int i = 0; i < F.n; ++i) M[i][g] = cg[i];
  }
  RelationModule out;
  out.p = p;
  out.basis = kernel_basis(std::move(M), p);
  out.dim = (int)out.basis.size();

  int total = 0;
  for (size_t bi = 0; bi < bundles_.size(); ++bi) {
    const auto& theta = bundles_[bi];
    std::vector<std::vector<u64>> rows;
    if (out.dim > 0) {
      rows.reserve(out.basis.size());
      for (const auto& W : out.basis) rows.push_back(algebra_mul(G, idempotents_[bi], W, p));
    }
    int d = row_reduce(rows, p);
    int unit = theta.f * theta.degree;
    if (d % unit != 0)
      throw std::runtime_error("relation_module: dim L^theta not divisible by f*phi(1)");
    out.per_theta.push_back({theta.id, theta.chi, theta.f, theta.degree, d, d / unit});
    total += d;
  }
  if (total != out.dim)
    throw std::runtime_error("relation_module: theta components do not sum to dim L");
  return out;
}

RelationModule relation_module(const PrimeContext& ctx, const QuotientRing::Elem& alpha) {
  return RelationAnalyzer(ctx).analyze(alpha);
}

RelationModule relation_module(const FieldSpec& F, const AlgebraicNumber& eta, u64 p) {
  PrimeContext ctx(F, p, 1);
  return relation_module(ctx, ctx.alpha(eta, 1));
}

std::vector<std::pair<std::string, bool>> delta_nullity(const FieldSpec& F,
                                                        const AlgebraicNumber& eta, u64 p) {
  auto rm = relation_module(F, eta, p);
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& t : rm.per_theta) out.emplace_back(t.id, t.delta >= 1);
  return out;
}

namespace {

QuotientRing::Elem det_recursive(const QuotientRing& R, u64 p,
                                 std::vector<std::vector<QuotientRing::Elem>>& M,
                                 std::vector<int> rows, std::vector<int> cols) {
  size_t k = rows.size();
  if (k == 0) return R.one();
  if (k == 1) return M[rows[0]][cols[0]];
  // try a unit pivot in the first column
  for (size_t ri = 0; ri < k; ++ri) {
    const auto& cand = M[rows[ri]][cols[0]];
    if (!R.is_unit_mod_p(cand, p)) continue;
    QuotientRing::Elem inv;
    if (!R.try_inverse(cand, p, inv)) continue;
    // eliminate column 0 below/above the pivot, then recurse on the minor
    std::vector<int> sub_rows;
    for (size_t rj = 0; rj < k; ++rj)
      if (rj != ri) sub_rows.push_back(rows[rj]);
    std::vector<int> sub_cols(cols.begin() + 1, cols.end());
    // copy-modify the submatrix entries in place (restore afterwards is not
    // needed: we work on value copies via a local snapshot)
    std::vector<std::vector<QuotientRing::Elem>> saved;
    saved.reserve(sub_rows.size());
    for (int r : sub_rows) {
      saved.push_back({});
      auto& row_save = saved.back();
      auto factor = R.mul(M[r][cols[0]], inv);
      for (int c : sub_cols) {
        row_save.push_back(M[r][c]);
        M[r][c] = R.sub(M[r][c], R.mul(factor, M[rows[ri]][c]));
      }
    }
    auto minor = det_recursive(R, p, M, sub_rows, sub_cols);
    for (size_t i = 0; i < sub_rows.size(); ++i)
      for (size_t j = 0; j < sub_cols.size(); ++j) M[sub_rows[i]][sub_cols[j]] = saved[i][j];
    auto result = R.mul(M[rows[ri]][cols[0]], minor);
    if (ri % 2 == 1) result = R.sub(R.zero(), result);
    return result;
  }
  // no unit pivot: cofactor expansion along the first column
  auto acc = R.zero();
  std::vector<int> sub_cols(cols.begin() + 1, cols.end());
  for (size_t ri = 0; ri < k; ++ri) {
    const auto& entry = M[rows[ri]][cols[0]];
    if (R.is_zero(entry)) continue;
    std::vector<int> sub_rows;
    for (size_t rj = 0; rj < k; ++rj)
      if (rj != ri) sub_rows.push_back(rows[rj]);
    auto minor = det_recursive(R, p, M, sub_rows, sub_cols);
    auto term = R.mul(entry, minor);
    acc = (ri % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return acc;
}

}  // namespace

QuotientRing::Elem frobenius_det(const PrimeContext& ctx, const QuotientRing::Elem& alpha) {
  const GroupData& G = ctx.field().group;
  const QuotientRing& R = ctx.ring(1);
  std::vector<QuotientRing::Elem> conj(G.n);
  for (int g = 0; g < G.n; ++g) conj[g] = ctx.conjugate(alpha, g, 1);
  std::vector<std::vector<QuotientRing::Elem>> M(G.n, std::vector<QuotientRing::Elem>(G.n));
  for (int s = 0; s < G.n; ++s)
    for (int t = 0; t < G.n; ++t) M[s][t] = conj[G.mul[t][G.inv[s]]];
  std::vector<int> idx(G.n);
  for (int i = 0; i < G.n; ++i) idx[i] = i;
  return det_recursive(R, ctx.p(), M, idx, idx);
}

namespace {

// Teichmueller-style lift of a root of unity r (mod p) to mod p^level.
u64 lift_root(u64 r, u64 p, int level, u64 modulus) {
  u64 lifted = r % modulus;
  for (int i = 1; i < level; ++i) lifted = powmod(lifted, p, modulus);
  return lifted;
}

}  // namespace

QuotientRing::Elem resolvent_product(const PrimeContext& ctx, const PAdicCharBundle& theta,
                                     const QuotientRing::Elem& alpha, int level) {
  const FieldSpec& F = ctx.field();
  const GroupData& G = F.group;
  const QuotientRing& R = ctx.ring(level);
  u64 m = R.modulus();

  if (theta.degree == 1 && theta.f == 1) {
    const auto& ch = G.chars[theta.orbit[0]];
    u64 w = lift_root(theta.root, ctx.p(), level, m);
    // value(nu^{-1}) = w^{exp[inv[nu]]}
    auto acc = R.zero();
    for (int nu = 0; nu < G.n; ++nu) {
      u64 coef = powmod(w, ch.exp[G.inv[nu]], m);
      acc = R.add(acc, R.scal(coef, ctx.conjugate(alpha, nu, level)));
    }
    return acc;
  }

  if (theta.degree == 1 && theta.f > 1) {
    if (level != 1)
      throw ConfigError("resolvent_product: f > 1 supported at level 1 only");
    const auto& ch = G.chars[theta.orbit[0]];
    const ExtField& E = theta.ext;
    int f = E.f();
    // tensor element: n coefficients in F_{p^f}
    std::vector<ExtField::Elem> res((size_t)F.n, E.zero());
    auto t = E.gen();
    for (int nu = 0; nu < G.n; ++nu) {
      auto coef = E.pow(t, ch.exp[G.inv[nu]]);
      auto cg = ctx.conjugate(alpha, nu, 1);
      for (int i = 0; i < F.n; ++i) {
        auto add = coef;
        for (auto& c : add) c = mulmod(c, cg[i], ctx.p());
        res[i] = E.add(res[i], add);
      }
    }
    // norm over the coefficient extension: product of the f Frobenius twists
    auto tensor_mul = [&](const std::vector<ExtField::Elem>& a,
                          const std::vector<ExtField::Elem>& b) {
      // multiply in (Z_K/p) tensor F_{p^f}: polynomial mult mod P with
      // ExtField coefficients
      std::vector<ExtField::Elem> full(2 * F.n - 1, E.zero());
      for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j) {
          auto prod = E.mul(a[i], b[j]);
          full[i + j] = E.add(full[i + j], prod);
        }
      for (int d = 2 * F.n - 2; d >= F.n; --d) {
        auto c = full[d];
        if (E.is_zero(c)) continue;
        full[d] = E.zero();
        for (int i = 0; i < F.n; ++i) {
          u64 pc = smod(F.poly[i], ctx.p());
          if (!pc) continue;
          auto sub = c;
          for (auto& cc : sub) cc = mulmod(cc, pc, ctx.p());
          full[d - F.n + i] = E.sub(full[d - F.n + i], sub);
        }
      }
      full.resize(F.n);
      return full;
    };
    auto frob = [&](const std::vector<ExtField::Elem>& a) {
      auto out = a;
      for (auto& c : out) c = E.frobenius(c);
      return out;
    };
    auto acc = res;
    auto cur = res;
    for (int i = 1; i < f; ++i) {
      cur = frob(cur);
      acc = tensor_mul(acc, cur);
    }
    QuotientRing::Elem out(F.n);
    for (int i = 0; i < F.n; ++i) {
      for (int j = 1; j < f; ++j)
        if (acc[i][j]) throw std::runtime_error("resolvent_product: norm not rational");
      out[i] = acc[i][0];
    }
    return out;
  }

  if (theta.degree == 2) {
    const auto& ch = G.chars[theta.orbit[0]];
    if (ch.mat.empty())
      throw ConfigError("resolvent_product: degree-2 character without matrices");
    // 2x2 matrix with ring entries: sum_nu alpha^nu * M(rho(nu^{-1}))
    std::array<QuotientRing::Elem, 4> Mx{R.zero(), R.zero(), R.zero(), R.zero()};
    for (int nu = 0; nu < G.n; ++nu) {
      const auto& mm = ch.mat[G.inv[nu]];
      auto cg = ctx.conjugate(alpha, nu, level);
      for (int k = 0; k < 4; ++k) {
        if (!mm[k]) continue;
        auto term = R.scal(smod(mm[k], m), cg);
        Mx[k] = R.add(Mx[k], term);
      }
    }
    return R.sub(R.mul(Mx[0], Mx[3]), R.mul(Mx[1], Mx[2]));
  }

  throw ConfigError("resolvent_product: unsupported character degree " +
                    std::to_string(theta.degree));
}

ThetaEvaluator::ThetaEvaluator(const PrimeContext& ctx, const PAdicCharBundle& theta, int level,
                               int compensator_variant)
    : ctx_(&ctx), theta_(theta), level_(level) {
  const FieldSpec& F = ctx.field();
  const GroupData& G = F.group;
  const QuotientRing& R = ctx.ring(level);
  u64 p = ctx.p();
  u64 m = R.modulus();

  if (theta.degree == 2) {
    if (!F.sqrtm)
      throw ConfigError("theta_value: degree-2 character needs a sqrtm block in the field spec");
    // H = 1/sqrt(m), sign fixed so the mod-p constant coefficient of sqrt(m)
    // lies in [1, p/2).
    std::vector<u64> img(F.n);
    for (int i = 0; i < F.n; ++i) {
      mpz_class num = (*F.sqrtm)[i].get_num(), den = (*F.sqrtm)[i].get_den();
      mpz_class mm((unsigned long)m);
      mpz_class nr = num % mm;
      if (nr < 0) nr += mm;
      img[i] = mulmod(nr.get_ui(), invmod(mpz_class(den % mm).get_ui(), m), m);
    }
    int pick = 0;
    for (int i = 0; i < F.n; ++i)
      if (img[i] % p != 0) { pick = i; break; }
    if (2 * (img[pick] % p) >= p) {
      for (auto& c : img) c = submod(0, c, m);
    }
    if (compensator_variant % 2 == 1) {
      for (auto& c : img) c = submod(0, c, m);  // other square root
    }
    if (!R.try_inverse(img, p, H_))
      throw std::runtime_error("theta_value: sqrt(m) image not invertible mod p");
    compensate_ = true;
    return;
  }

  // degree 1: weight character w(nu) in F_p (norm of the orbit values); the
  // compensator is the conjugate resolvent of a base element.
  std::vector<u64> w(G.n, 1);
  bool trivial_weight = true;
  const auto& ch = G.chars[theta.orbit[0]];
  for (int nu = 0; nu < G.n; ++nu) {
    u64 val;
    if (theta.f == 1) {
      val = powmod(lift_root(theta.root, p, level, m), ch.exp[nu], m);
    } else {
      val = theta.ext.norm(theta.ext.pow(theta.ext.gen(), ch.exp[nu])) % m;
    }
    w[nu] = val;
    if (val != 1 % m) trivial_weight = false;
  }
  if (trivial_weight) { compensate_ = false; return; }

  // base elements: x first (matches the conjugate-resolvent convention of the
  // reference tables), then deterministic fallbacks
  for (int attempt = compensator_variant; attempt < 32 + compensator_variant; ++attempt) {
    QuotientRing::Elem base = R.zero();
    if (attempt == 0) {
      if (F.n >= 2) base[1] = 1; else base[0] = 1;
    } else {
      SplitMix64 g(0x7e7a5ef1u + (u64)attempt);
      for (auto& c : base) c = g.bounded(m);
    }
    auto H = R.zero();
    for (int nu = 0; nu < G.n; ++nu)
      H = R.add(H, R.scal(w[nu], ctx.conjugate(base, nu, level)));
    if (R.is_unit_mod_p(H, p)) {
      H_ = H;
      compensate_ = true;
      return;
    }
  }
  throw std::runtime_error("theta_value: no invertible compensator found");
}

u64 ThetaEvaluator::value(const QuotientRing::Elem& alpha) const {
  auto prod = resolvent_product(*ctx_, theta_, alpha, level_);
  const QuotientRing& R = ctx_->ring(level_);
  if (compensate_) prod = R.mul(prod, H_);
  return R.scalarize(prod);
}

ThetaValue theta_value(const FieldSpec& F, const PAdicCharBundle& theta, const AlgebraicNumber& z,
                       u64 p) {
  PrimeContext ctx(F, p, 1);
  ThetaEvaluator ev(ctx, theta, 1);
  ThetaValue out;
  out.theta_id = theta.id;
  out.value = ev.value(ctx.alpha(z, 1));
  out.null = out.value == 0;
  return out;
}

ThetaValue regulator_valuation(const FieldSpec& F, const PAdicCharBundle& theta,
                               const AlgebraicNumber& eta, u64 p, int max_e) {
  if (max_e < 1 || max_e > 3) throw ConfigError("regulator_valuation: max_e in {1,2,3}");
  int level = max_e;
  PrimeContext ctx(F, p, level);
  ThetaEvaluator ev(ctx, theta, level);
  u64 v = ev.value(ctx.normalized_log(eta, level));
  ThetaValue out;
  out.theta_id = theta.id;
  out.value = v;
  out.null = v % p == 0;
  if (v == 0) {
    out.e = level;
    out.e_at_least = true;
  } else {
    int e = 0;
    while (v % p == 0) { v /= p; ++e; }
    out.e = e;
  }
  return out;
}

NullityKind trivial_nullity_probe(const FieldSpec& F, const AlgebraicNumber& eta, int chi,
                                  int probe_primes) {
  AdmissibilityContext adm(F, eta);
  int tested = 0;
  for (u64 p = 3; tested < probe_primes && p < 1000000; p += 2) {
    if (!is_prime(p) || !adm.admissible(p)) continue;
    auto rm = relation_module(F, eta, p);
    bool nullp = false;
    for (const auto& t : rm.per_theta)
      if (t.chi == chi && t.delta >= 1) nullp = true;
    ++tested;
    if (!nullp) return NullityKind::nontrivial;
  }
  if (tested < std::min(probe_primes, 3)) return NullityKind::undetermined;
  return NullityKind::trivial;
}

std::vector<PAdicCharBundle> stats_bundles(const FieldSpec& F, u64 p) {
  auto all = all_bundles(F.group, p);
  if (F.group.n == 1) return all;
  std::vector<PAdicCharBundle> out;
  for (auto& b : all) {
    const auto& rc = F.group.rats[b.chi];
    bool trivial = rc.degree == 1 && rc.d == 1;
    if (!trivial) out.push_back(b);
  }
  return out;
}

}  // namespace thetareg
