#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetareg/extfield.hpp"
#include "thetareg/numeric.hpp"

namespace thetareg {

/// Absolutely irreducible character, stored exactly. Degree-1 characters keep
/// the exponent of zeta_d per element; higher degree keeps an integer matrix
/// realization (and its rational traces).
struct AbsIrredChar {
  int degree = 1;
  u64 d = 1;  // character values lie in Q(zeta_d)
  std::vector<u64> exp;                    // degree 1: value(g) = zeta_d^exp[g]
  std::vector<std::vector<i64>> mat;       // degree >= 2: per-element matrix, row-major
  std::vector<i64> trace;                  // degree >= 2 rational values (d == 1)
};

/// Galois orbit of absolutely irreducible characters = one rational character.
struct RationalChar {
  std::string name;
  int degree = 1;     // common phi(1)
  u64 d = 1;          // common value order; [C:Q] = euler_phi(d) for degree 1
  std::vector<int> phis;  // indices into GroupData::chars
};

struct GroupData {
  std::string label;
  int n = 1;
  std::vector<std::string> elem;
  std::vector<std::vector<int>> mul;  // mul[a][b] = index of a∘b
  std::vector<int> inv;
  std::vector<int> generators;
  u64 exponent = 1;  // g = lcm of element orders
  std::vector<AbsIrredChar> chars;
  std::vector<RationalChar> rats;

  int identity() const { return id_; }
  int id_ = 0;

  int elem_index(const std::string& label) const;
  int elem_order(int g) const;
  /// Exhaustive group-law check (associativity, identity, inverses).
  void validate() const;
};

/// Builtin groups: "C1", "C3", "C5", "Cn:<n>", "D6".
GroupData builtin_group(const std::string& label);

/// Irreducible p-adic character: the D-orbit of phi | chi for the chosen
/// prime ideal above p in the field of values.
struct PAdicCharBundle {
  int chi = 0;          // rational character index
  u64 p = 0;
  u64 d = 1;            // value order
  int f = 1;            // residue degree of p in Q(zeta_d)
  int h = 1;            // number of conjugate bundles over chi
  int degree = 1;       // phi(1)
  u64 root = 1;         // f == 1: theta(generator-root) representative of order d
  ExtField ext;         // f > 1: F_{p^f} with t a primitive d-th root
  std::vector<int> orbit;  // indices of phi | theta in GroupData::chars
  std::string id;       // e.g. "chi1", "chi1:r5", "chi1:f2#0"
};

/// Decompose a rational character at p into its h p-adic bundles
/// (f = order of p mod d). Canonical ordering: ascending root for f = 1,
/// lexicographic modulus otherwise. Requires p odd, p not dividing the group
/// exponent.
std::vector<PAdicCharBundle> padic_decompose(const GroupData& G, int chi, u64 p);

/// All bundles of all rational characters at p, in (chi, bundle) order.
std::vector<PAdicCharBundle> all_bundles(const GroupData& G, u64 p);

/// Central idempotent e_theta reduced mod p: coefficient of nu is
/// (phi(1)/n) * Tr_{F_{p^f}/F_p}(phi(nu^{-1})).
std::vector<u64> idempotent_mod_p(const GroupData& G, const PAdicCharBundle& theta, u64 p);

/// Group algebra product over F_p (coefficient vectors indexed by element).
std::vector<u64> algebra_mul(const GroupData& G, const std::vector<u64>& a,
                             const std::vector<u64>& b, u64 p);

/// Norm of an ExtField element down to F_p: prod_{i<f} x^{p^i}.
u64 ext_norm(const ExtField& ext, const ExtField::Elem& x);

}  // namespace thetareg
