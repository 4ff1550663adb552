#pragma once

#include "thetareg/residue.hpp"

namespace thetareg {

/// F_p-module of relations sum_g c_g alpha^g = 0 together with the per-theta
/// component dimensions (contract: dim L^theta = delta*f*phi(1)).
struct RelationModule {
  u64 p = 0;
  int dim = 0;
  std::vector<std::vector<u64>> basis;  // coefficient vectors indexed by group element
  struct ThetaInfo {
    std::string id;
    int chi = 0;
    int f = 1;
    int degree = 1;
    int dim = 0;
    int delta = 0;
  };
  std::vector<ThetaInfo> per_theta;

  bool contains(const FieldSpec& F, const std::vector<i64>& relation) const;
};

RelationModule relation_module(const PrimeContext& ctx, const QuotientRing::Elem& alpha);
RelationModule relation_module(const FieldSpec& F, const AlgebraicNumber& eta, u64 p);

/// Per-prime cache of the bundle list and reduced idempotents: the sampling
/// loops call analyze() many times for one (field, p).
class RelationAnalyzer {
 public:
  RelationAnalyzer(const PrimeContext& ctx);
  RelationModule analyze(const QuotientRing::Elem& alpha) const;
  const std::vector<PAdicCharBundle>& bundles() const { return bundles_; }

 private:
  const PrimeContext* ctx_;
  std::vector<PAdicCharBundle> bundles_;
  std::vector<std::vector<u64>> idempotents_;
};

/// Canonical nullity test: theta-id -> (delta_theta >= 1).
std::vector<std::pair<std::string, bool>> delta_nullity(const FieldSpec& F,
                                                        const AlgebraicNumber& eta, u64 p);

/// Frobenius group determinant det(alpha^{tau sigma^{-1}}) over Z_K/p.
QuotientRing::Elem frobenius_det(const PrimeContext& ctx, const QuotientRing::Elem& alpha);

/// Resolvent of one absolutely irreducible phi | theta, as a ring element
/// (degree-1 f=1 and the D6 degree-2 matrix form); f > 1 bundles return the
/// full norm-product over the orbit.
QuotientRing::Elem resolvent_product(const PrimeContext& ctx, const PAdicCharBundle& theta,
                                     const QuotientRing::Elem& alpha, int level = 1);

/// Scalar theta-regulator evaluator with a fixed compensator per (p, theta):
/// value(alpha) = scalarize(resolvent_product(alpha) * H_theta).
class ThetaEvaluator {
 public:
  /// compensator_variant > 0 selects an alternative (equally valid) base
  /// element for H; all variants differ by a fixed unit factor.
  ThetaEvaluator(const PrimeContext& ctx, const PAdicCharBundle& theta, int level = 1,
                 int compensator_variant = 0);

  /// Scalar in [0, p^level) from a level-`level` alpha (or normalized log).
  u64 value(const QuotientRing::Elem& alpha) const;
  const PAdicCharBundle& bundle() const { return theta_; }
  int level() const { return level_; }

 private:
  const PrimeContext* ctx_;
  PAdicCharBundle theta_;
  int level_;
  bool compensate_ = false;
  QuotientRing::Elem H_;
};

struct ThetaValue {
  std::string theta_id;
  bool null = false;
  u64 value = 0;
  int e = 0;              // p-adic valuation of the level-2/3 scalar
  bool e_at_least = false;  // precision exhausted: true e may exceed reported e
};

/// Scalar theta-value of z at level 1 (the statistics recipe).
ThetaValue theta_value(const FieldSpec& F, const PAdicCharBundle& theta,
                       const AlgebraicNumber& z, u64 p);

/// Valuation of the normalized theta-regulator via level >= 2 logs.
ThetaValue regulator_valuation(const FieldSpec& F, const PAdicCharBundle& theta,
                               const AlgebraicNumber& eta, u64 p, int max_e = 3);

enum class NullityKind { trivial, nontrivial, undetermined };

/// Probes the first admissible primes: a chi whose theta-components vanish at
/// every probe prime is flagged trivially null.
NullityKind trivial_nullity_probe(const FieldSpec& F, const AlgebraicNumber& eta, int chi,
                                  int probe_primes = 20);

/// Bundles eligible for scalar statistics at p, canonical order. Nontrivial
/// characters only, except for the trivial group.
std::vector<PAdicCharBundle> stats_bundles(const FieldSpec& F, u64 p);

}  // namespace thetareg
