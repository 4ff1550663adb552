#include "thetareg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "thetareg/primes.hpp"

namespace thetareg {

ScanResult scan(const FieldSpec& F, const AlgebraicNumber& eta, const ScanConfig& cfg) {
  if (cfg.pmax < 3 || cfg.pmax < cfg.pmin)
    throw ConfigError("scan: empty admissible prime range");
  AdmissibilityContext adm(F, eta);
  ScanResult out;

  // Trivially-null chi detection: those hit streams are suppressed.
  std::set<int> suppressed;
  for (int c = 0; c < (int)F.group.rats.size(); ++c) {
    if (trivial_nullity_probe(F, eta, c, cfg.probe_primes) == NullityKind::trivial) {
      suppressed.insert(c);
      out.warnings.push_back("chi " + F.group.rats[c].name +
                             " is trivially null for this eta; hits suppressed");
    }
  }

  auto primes = primes_in_range(std::max<u64>(cfg.pmin, 3), cfg.pmax);
  int workers = std::max(1, cfg.workers);
  std::vector<std::vector<ScanHit>> results(workers);
  std::vector<u64> scanned(workers, 0);
  std::vector<std::string> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        size_t lo = primes.size() * w / workers, hi = primes.size() * (w + 1) / workers;
        for (size_t i = lo; i < hi; ++i) {
          u64 p = primes[i];
          if (!adm.admissible(p)) continue;
          ++scanned[w];
          PrimeContext ctx(F, p, 1);
          auto alpha = ctx.alpha(eta, 1);
          RelationAnalyzer analyzer(ctx);
          auto rm = analyzer.analyze(alpha);
          if (rm.dim == 0) continue;
          std::vector<PAdicCharBundle> stats;
          for (const auto& t : rm.per_theta) {
            if (t.delta < 1) continue;
            if (suppressed.count(t.chi)) continue;
            const auto& rc = F.group.rats[t.chi];
            bool trivial_chi = rc.degree == 1 && rc.d == 1;
            if (cfg.filter == ThetaFilter::nontrivial && trivial_chi && F.group.n > 1) continue;
            if (cfg.filter == ThetaFilter::index) {
              if (stats.empty()) stats = stats_bundles(F, p);
              if (cfg.theta_index >= (int)stats.size() ||
                  stats[cfg.theta_index].id != t.id)
                continue;
            }
            ScanHit hit;
            hit.p = p;
            hit.theta_id = t.id;
            hit.np = ctx.np();
            hit.f = t.f;
            hit.delta = t.delta;
            if (cfg.emit_relations) hit.relations = rm.basis;
            if (cfg.classify_hits) {
              auto bundles = all_bundles(F.group, p);
              for (const auto& b : bundles)
                if (b.id == t.id && b.degree <= 2) {
                  try {
                    auto cls = classify_solutions(F, b, eta, p, 1);
                    hit.classification = kind_name(cls.kind);
                  } catch (const std::exception&) {
                    hit.classification = "unavailable";
                  }
                }
            }
            results[w].push_back(std::move(hit));
          }
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("scan worker: " + e);
  for (int w = 0; w < workers; ++w) {
    out.primes_scanned += scanned[w];
    for (auto& h : results[w]) out.hits.push_back(std::move(h));
  }
  std::sort(out.hits.begin(), out.hits.end(), [](const ScanHit& a, const ScanHit& b) {
    return a.p != b.p ? a.p < b.p : a.theta_id < b.theta_id;
  });
  return out;
}

DensityKind density_kind_from_name(const std::string& name) {
  if (name == "per-theta" || name == "per-theta-nullity") return DensityKind::per_theta_nullity;
  if (name == "joint" || name == "joint-nullity") return DensityKind::joint_nullity;
  if (name == "rank" || name == "rank-lt-n") return DensityKind::rank_lt_n;
  if (name == "delta2" || name == "delta-eq-2") return DensityKind::delta_eq_2;
  if (name == "extra" || name == "extra-divisibility") return DensityKind::extra_divisibility;
  if (name == "fixed" || name == "fixed-components") return DensityKind::fixed_components;
  throw ConfigError("unknown density kind: " + name);
}

std::string density_kind_name(DensityKind k) {
  switch (k) {
    case DensityKind::per_theta_nullity: return "per-theta-nullity";
    case DensityKind::joint_nullity: return "joint-nullity";
    case DensityKind::rank_lt_n: return "rank-lt-n";
    case DensityKind::delta_eq_2: return "delta-eq-2";
    case DensityKind::extra_divisibility: return "extra-divisibility";
    case DensityKind::fixed_components: return "fixed-components";
  }
  return "?";
}

double theta_nullity_density(const PAdicCharBundle& theta) {
  double q = std::pow((double)theta.p, theta.f);
  double keep = 1.0;
  double qi = 1.0;
  for (int i = 1; i <= theta.degree; ++i) {
    qi *= q;
    keep *= 1.0 - 1.0 / qi;
  }
  return 1.0 - keep;
}

double rank_lt_n_prediction(const GroupData& G, u64 p) {
  // sum_i h_i/p^{f_i} - sum_{i<j} ... (delta_i = 1 throughout)
  std::vector<double> terms;
  for (int c = 0; c < (int)G.rats.size(); ++c) {
    auto bs = padic_decompose(G, c, p);
    double h = (double)bs.size();
    double f = (double)bs.front().f;
    terms.push_back(h / std::pow((double)p, f));
  }
  double prob = 0;
  int m = (int)terms.size();
  for (int mask = 1; mask < (1 << m); ++mask) {
    double prod = 1;
    int bits = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) { prod *= terms[i]; ++bits; }
    prob += (bits % 2 == 1 ? 1.0 : -1.0) * prod;
  }
  return prob;
}

DensityReport density_run(const FieldSpec& F, const DensityConfig& cfg) {
  if (cfg.p < 3 || !is_prime(cfg.p)) throw ConfigError("density: p must be an odd prime");
  if (F.group.exponent % cfg.p == 0 || (u64)F.n % cfg.p == 0)
    throw ConfigError("density: p divides the group order data");
  u64 p = cfg.p;
  const GroupData& G = F.group;

  int level = cfg.kind == DensityKind::extra_divisibility ? 2 : 1;
  PrimeContext ctx(F, p, level);
  auto bundles = all_bundles(G, p);
  int nb = (int)bundles.size();

  // counter slots per kind
  std::vector<std::string> names;
  std::vector<double> predicted;
  switch (cfg.kind) {
    case DensityKind::per_theta_nullity:
      for (const auto& b : bundles) {
        names.push_back(b.id);
        predicted.push_back(theta_nullity_density(b));
      }
      break;
    case DensityKind::joint_nullity: {
      for (int i = 0; i < nb; ++i)
        for (int j = i; j < nb; ++j) {
          if (i == j) {
            names.push_back(bundles[i].id);
            predicted.push_back(theta_nullity_density(bundles[i]));
          } else {
            names.push_back(bundles[i].id + "&" + bundles[j].id);
            predicted.push_back(theta_nullity_density(bundles[i]) *
                                theta_nullity_density(bundles[j]));
          }
        }
      if (nb >= 3) {
        std::string nm;
        double pr = 1;
        for (const auto& b : bundles) {
          nm += (nm.empty() ? "" : "&") + b.id;
          pr *= theta_nullity_density(b);
        }
        names.push_back(nm);
        predicted.push_back(pr);
      }
      break;
    }
    case DensityKind::rank_lt_n:
      names.push_back("rank<n");
      predicted.push_back(rank_lt_n_prediction(G, p));
      break;
    case DensityKind::delta_eq_2: {
      auto sb = stats_bundles(F, p);
      if (cfg.theta_index >= (int)sb.size()) throw ConfigError("density: theta index out of range");
      names.push_back(sb[cfg.theta_index].id + ":delta=2");
      predicted.push_back(std::pow((double)p, -4.0 * sb[cfg.theta_index].f));
      break;
    }
    case DensityKind::extra_divisibility: {
      auto sb = stats_bundles(F, p);
      if (cfg.theta_index >= (int)sb.size()) throw ConfigError("density: theta index out of range");
      names.push_back(sb[cfg.theta_index].id + ":e>=2");
      predicted.push_back(1.0 / ((double)p * (double)p));
      break;
    }
    case DensityKind::fixed_components: {
      if (cfg.component_indices.empty())
        throw ConfigError("density: fixed-components needs component indices");
      std::string nm = "fixed";
      for (size_t i = 0; i < cfg.component_indices.size(); ++i)
        nm += "_" + std::to_string(cfg.component_indices[i]) + "=" +
              std::to_string(cfg.component_values[i]);
      names.push_back(nm);
      predicted.push_back(std::pow((double)p, -(double)cfg.component_indices.size()));
      break;
    }
  }

  int slots = (int)names.size();
  int workers = std::max(1, cfg.workers);
  std::vector<std::vector<u64>> counts(workers, std::vector<u64>(slots, 0));
  std::vector<u64> accepted(workers, 0);
  std::vector<std::string> errors(workers);

  // delta_eq_2 / extra_divisibility evaluator bundles prepared once
  std::optional<ThetaEvaluator> valuator;
  std::optional<PAdicCharBundle> target;
  if (cfg.kind == DensityKind::delta_eq_2 || cfg.kind == DensityKind::extra_divisibility) {
    auto sb = stats_bundles(F, p);
    target = sb[cfg.theta_index];
    if (cfg.kind == DensityKind::extra_divisibility) valuator.emplace(ctx, *target, 2);
  }

  const QuotientRing& R1 = ctx.ring(1);
  u64 psq = p * p;
  RelationAnalyzer analyzer(ctx);

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        u64 lo = cfg.samples * w / workers, hi = cfg.samples * (w + 1) / workers;
        std::vector<u64> zvec(F.n);
        for (u64 idx = lo; idx < hi; ++idx) {
          auto rng = SplitMix64::stream(cfg.seed, idx);
          for (int i = 0; i < F.n; ++i) zvec[i] = rng.bounded(psq);
          // invertibility mod p
          QuotientRing::Elem z1(F.n);
          for (int i = 0; i < F.n; ++i) z1[i] = zvec[i] % p;
          if (!R1.is_unit_mod_p(z1, p)) continue;
          ++accepted[w];
          auto& cnt = counts[w];
          if (cfg.kind == DensityKind::extra_divisibility) {
            auto z = ctx.ring(3).from_signed({});
            for (int i = 0; i < F.n; ++i) z[i] = zvec[i] % ctx.ring(3).modulus();
            u64 v = valuator->value(ctx.normalized_log_of_residue(z, 2));
            if (v % psq == 0) ++cnt[0];
            continue;
          }
          auto z2 = ctx.ring(2).from_signed({});
          for (int i = 0; i < F.n; ++i) z2[i] = zvec[i];
          auto alpha = ctx.alpha_of_residue(z2, 1);
          if (cfg.kind == DensityKind::fixed_components) {
            bool ok = true;
            for (size_t i = 0; i < cfg.component_indices.size(); ++i)
              if (alpha[cfg.component_indices[i]] != cfg.component_values[i] % p) ok = false;
            if (ok) ++cnt[0];
            continue;
          }
          auto rm = analyzer.analyze(alpha);
          if (cfg.kind == DensityKind::rank_lt_n) {
            if (rm.dim > 0) ++cnt[0];
          } else if (cfg.kind == DensityKind::delta_eq_2) {
            for (const auto& t : rm.per_theta)
              if (t.id == target->id && t.delta == 2) ++cnt[0];
          } else {
            // per-theta / joint
            std::vector<bool> null(nb, false);
            for (int b = 0; b < nb; ++b)
              for (const auto& t : rm.per_theta)
                if (t.id == bundles[b].id && t.delta >= 1) null[b] = true;
            int slot = 0;
            if (cfg.kind == DensityKind::per_theta_nullity) {
              for (int b = 0; b < nb; ++b)
                if (null[b]) ++cnt[b];
            } else {
              for (int i = 0; i < nb; ++i)
                for (int j = i; j < nb; ++j, ++slot)
                  if (null[i] && null[j]) ++cnt[slot];
              if (nb >= 3) {
                bool all = true;
                for (int b = 0; b < nb; ++b) all = all && null[b];
                if (all) ++cnt[slot];
              }
            }
          }
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("density worker: " + e);

  DensityReport rep;
  rep.cfg = cfg;
  std::vector<u64> total(slots, 0);
  for (int w = 0; w < workers; ++w) {
    rep.accepted += accepted[w];
    for (int s = 0; s < slots; ++s) total[s] += counts[w][s];
  }
  for (int s = 0; s < slots; ++s) {
    DensityRow row;
    row.name = names[s];
    row.count = total[s];
    row.frequency = rep.accepted ? (double)total[s] / (double)rep.accepted : 0;
    row.predicted = predicted[s];
    row.sigma = rep.accepted
                    ? std::sqrt(predicted[s] * (1 - predicted[s]) / (double)rep.accepted)
                    : 0;
    row.deviation = predicted[s] > 0 ? std::fabs(row.frequency - predicted[s]) / predicted[s] : 0;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<FixedUHit> fixed_u_scan(const FieldSpec& F, const AlgebraicNumber& eta, i64 u,
                                    u64 pmin, u64 pmax, int workers) {
  AdmissibilityContext adm(F, eta);
  auto primes = primes_in_range(std::max<u64>(pmin, 3), pmax);
  workers = std::max(1, workers);
  std::vector<std::vector<FixedUHit>> results(workers);
  std::vector<std::string> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        size_t lo = primes.size() * w / workers, hi = primes.size() * (w + 1) / workers;
        for (size_t i = lo; i < hi; ++i) {
          u64 p = primes[i];
          if (!adm.admissible(p)) continue;
          PrimeContext ctx(F, p, 1);
          auto alpha = ctx.alpha(eta, 1);
          u64 target = smod(u, p);
          for (const auto& b : stats_bundles(F, p)) {
            if (b.degree > 2) continue;
            ThetaEvaluator ev(ctx, b, 1);
            if (ev.value(alpha) == target) results[w].push_back({p, b.id, u});
          }
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("fixed-u worker: " + e);
  std::vector<FixedUHit> out;
  for (auto& r : results)
    for (auto& h : r) out.push_back(h);
  std::sort(out.begin(), out.end(), [](const FixedUHit& a, const FixedUHit& b) {
    return a.p != b.p ? a.p < b.p : a.theta_id < b.theta_id;
  });
  return out;
}

namespace {

double log_binom(u64 n, u64 k) { return std::lgamma((double)n + 1) - std::lgamma((double)k + 1) -
                                        std::lgamma((double)(n - k) + 1); }

}  // namespace

BorelCantelliBound borel_cantelli_bound(const FieldSpec& F, const AlgebraicNumber& eta, u64 p) {
  BorelCantelliBound out;
  out.h = h_bound(F, eta, p);
  if (out.h == 0) {
    out.log_bound = 0;
    out.bound = 1;  // vacuous
    return out;
  }
  out.log_bound = log_binom(p - 1, (u64)out.h) - (double)out.h * std::log((double)p);
  out.bound = std::min(1.0, std::exp(out.log_bound));
  return out;
}

std::vector<std::pair<u64, double>> borel_cantelli_series(const FieldSpec& F,
                                                          const AlgebraicNumber& eta, u64 pmax,
                                                          u64 checkpoints) {
  auto arch = archimedean_data(F, eta);
  std::vector<std::pair<u64, double>> out;
  double acc = 0;
  u64 step = std::max<u64>(1, pmax / std::max<u64>(1, checkpoints));
  u64 next = step;
  for_primes(3, pmax, [&](u64 p) {
    int h = h_bound(F, arch, eta, p);
    if (h >= 1) acc += std::exp(log_binom(p - 1, (u64)h) - (double)h * std::log((double)p));
    if (p >= next) {
      out.emplace_back(p, acc);
      next += step;
    }
  });
  out.emplace_back(pmax, acc);
  return out;
}

}  // namespace thetareg
