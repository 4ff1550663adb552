#pragma once

#include <functional>

#include "thetareg/residue_sets.hpp"
#include "thetareg/rng.hpp"

namespace thetareg {

enum class ThetaFilter { all, nontrivial, index };

struct ScanConfig {
  u64 pmin = 3;
  u64 pmax = 0;
  ThetaFilter filter = ThetaFilter::all;
  int theta_index = 0;  // used with ThetaFilter::index (stats-bundle order)
  int workers = 1;
  bool emit_relations = false;
  bool classify_hits = false;
  int probe_primes = 20;
};

struct ScanHit {
  u64 p = 0;
  std::string theta_id;
  int np = 1;
  int f = 1;
  int delta = 0;
  std::string classification;                   // empty unless classify_hits
  std::vector<std::vector<u64>> relations;      // kernel basis when emit_relations
};

struct ScanResult {
  std::vector<ScanHit> hits;                    // ordered by (p, theta id)
  std::vector<std::string> warnings;            // e.g. trivially-null chi suppressed
  u64 primes_scanned = 0;
};

ScanResult scan(const FieldSpec& F, const AlgebraicNumber& eta, const ScanConfig& cfg);

enum class DensityKind {
  per_theta_nullity,
  joint_nullity,
  rank_lt_n,
  delta_eq_2,
  extra_divisibility,
  fixed_components,
};

DensityKind density_kind_from_name(const std::string& name);
std::string density_kind_name(DensityKind k);

struct DensityConfig {
  DensityKind kind = DensityKind::per_theta_nullity;
  u64 p = 0;
  u64 samples = 100000;
  u64 seed = 1;
  int workers = 1;
  int theta_index = 0;                 // delta_eq_2 / extra_divisibility target
  std::vector<int> component_indices;  // fixed_components
  std::vector<u64> component_values;
};

struct DensityRow {
  std::string name;
  u64 count = 0;
  double frequency = 0;
  double predicted = 0;
  double sigma = 0;      // binomial Monte-Carlo sigma of the predicted value
  double deviation = 0;  // |freq - predicted| / predicted
};

struct DensityReport {
  DensityConfig cfg;
  u64 accepted = 0;  // N0: samples prime to p
  std::vector<DensityRow> rows;
};

DensityReport density_run(const FieldSpec& F, const DensityConfig& cfg);

struct FixedUHit {
  u64 p;
  std::string theta_id;
  i64 u;
};

/// Primes p in range with theta_value(eta) = u mod p for some stats bundle
/// (u interpreted mod p; negative u allowed).
std::vector<FixedUHit> fixed_u_scan(const FieldSpec& F, const AlgebraicNumber& eta, i64 u,
                                    u64 pmin, u64 pmax, int workers = 1);

/// Tail bound Prob(Delta = 0) < C_inf * C(p-1,h)/p^h, log-domain.
struct BorelCantelliBound {
  int h = 0;
  double log_bound = 0;  // natural log of C(p-1,h)/p^h (C_inf taken at 1)
  double bound = 1;
};

BorelCantelliBound borel_cantelli_bound(const FieldSpec& F, const AlgebraicNumber& eta, u64 p);

/// Partial sums of sum_p C(p-1,h_p)/p^{h_p} over primes <= bound (convergence
/// exhibit); returns (p, partial-sum) pairs at checkpoints.
std::vector<std::pair<u64, double>> borel_cantelli_series(const FieldSpec& F,
                                                          const AlgebraicNumber& eta, u64 pmax,
                                                          u64 checkpoints = 10);

/// Theoretical rank < n probability: grouped inclusion-exclusion over the
/// rational characters with (h_i, f_i, delta_i = 1).
double rank_lt_n_prediction(const GroupData& G, u64 p);

/// Exact nullity density of one theta: 1 - prod_{i=1..phi(1)} (1 - p^{-f i}).
double theta_nullity_density(const PAdicCharBundle& theta);

}  // namespace thetareg
