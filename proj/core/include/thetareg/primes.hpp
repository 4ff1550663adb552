#pragma once

#include <functional>
#include <vector>

#include "thetareg/numeric.hpp"

namespace thetareg {

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(u64 n);

/// All primes <= bound by sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 bound);

/// Calls fn(p) for every prime in [lo, hi], ascending. Uses a segmented sieve
/// below 2^32 and Miller-Rabin above. Honors the THETA_REG_CACHE env var: when
/// set, sieved primes are memoized on disk in a small binary format
/// (magic, version, little-endian 64-bit primes).
void for_primes(u64 lo, u64 hi, const std::function<void(u64)>& fn);

/// Prime range materialized as a vector (same cache behavior).
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// Pollard-rho factorization; returns prime factors with multiplicity, sorted.
std::vector<u64> factorize(u64 n);

/// Multiplicative order of `a` modulo prime-power-free modulus given the
/// factored group order. `pow` evaluates a^e in the ambient group.
u64 order_from_factored(const std::vector<u64>& group_order_factors, u64 group_order,
                        const std::function<bool(u64)>& is_identity_pow);

}  // namespace thetareg
