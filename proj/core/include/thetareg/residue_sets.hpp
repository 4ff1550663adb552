#pragma once

#include <map>
#include <optional>

#include "thetareg/arch.hpp"
#include "thetareg/regulator.hpp"

namespace thetareg {

/// Centered coefficient vector in (-p/2, p/2]^n.
std::vector<i64> centered_residue(const FieldSpec& F, const std::vector<i64>& v, u64 p);

/// I_p(gamma): the residues [gamma^k]_p, k = 1..p-1, torsion units removed.
struct ResidueSet {
  u64 p = 0;
  int np = 1;
  AlgebraicNumber gamma;
  std::vector<std::vector<i64>> elems;  // centered vectors
  int removed_torsion = 0;
  std::optional<u64> order;             // multiplicative order of gamma mod p (when small enough to factor)
  std::optional<bool> max_order;        // order == p^np - 1
  bool quadratic_inert_shift = false;   // n = 2, n_p = 2: statistics on gamma^{tau-1}
};

ResidueSet build_residue_set(const FieldSpec& F, const AlgebraicNumber& gamma, u64 p);

struct RepetitionStats {
  u64 p = 0;
  std::string theta_id;
  std::map<u64, u64> counts;  // m_p(u) for reached u
  u64 m0 = 0;                 // m_p(0)
  u64 Mp = 0;                 // max_u m_p(u)
  u64 u0 = 0;                 // smallest u attaining Mp
  u64 reached = 0;            // C = #{u : m_p(u) >= 1}
  u64 size = 0;               // |I_p|
};

RepetitionStats repetition_stats(const FieldSpec& F, const PAdicCharBundle& theta,
                                 const ResidueSet& set, u64 p, int workers = 1);

/// Proportion C/p of reached values (compared with 1 - 1/e).
double reached_proportion(const RepetitionStats& stats);

enum class SolutionKind { none, exceptional, abundant, mixed };

struct SolutionClassification {
  SolutionKind kind = SolutionKind::none;
  int h = 0;
  std::vector<std::pair<int, std::vector<i64>>> witnesses;  // (exponent j, centered vector)
  u64 m0 = 0;
  std::optional<u64> order_D;  // order of eta mod p
  std::optional<u64> order_d;  // order mod torsion
};

SolutionClassification classify_solutions(const FieldSpec& F, const PAdicCharBundle& theta,
                                          const AlgebraicNumber& eta, u64 p, int workers = 1);

struct BoxStats {
  u64 p = 0;
  int np = 1;
  u64 Np = 0;     // invertible box elements
  u64 m0 = 0;
  u64 Mp = 0;
  u64 u0 = 0;
  double m0_norm = 0;  // m_p(0) (p-1) / N_p
  double Mp_norm = 0;  // n (p-1) M_p / N_p
};

/// Exhaustive statistics over the full centered box (guarded: p^n <= budget).
BoxStats box_stats(const FieldSpec& F, const PAdicCharBundle& theta, u64 p, int workers = 1,
                   u64 budget = 100000000ULL);

/// Baby-step giant-step dlog verification: exponent e with gamma^e = eta mod p
/// (desk-scale; searches the cyclic group generated by gamma).
std::optional<u64> dlog_in_cyclic(const FieldSpec& F, const AlgebraicNumber& gamma,
                                  const AlgebraicNumber& eta, u64 p);

std::string kind_name(SolutionKind k);

}  // namespace thetareg
