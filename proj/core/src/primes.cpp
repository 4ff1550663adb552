#include "thetareg/primes.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace thetareg {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 bound) {
  std::vector<u64> out;
  if (bound < 2) return out;
  std::vector<bool> comp(bound + 1, false);
  for (u64 i = 2; i * i <= bound; ++i)
    if (!comp[i])
      for (u64 j = i * i; j <= bound; j += i) comp[j] = true;
  for (u64 i = 2; i <= bound; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

namespace {

constexpr char kCacheMagic[8] = {'T', 'H', 'R', 'G', 'P', 'R', 'M', '1'};

std::mutex g_cache_mutex;
std::vector<u64> g_cached_primes;  // ascending, complete up to g_cached_bound
u64 g_cached_bound = 0;

bool load_cache_file(const char* path, u64 need_bound) {
  FILE* f = std::fopen(path, "rb");
  if (!f) return false;
  char magic[8];
  u64 bound = 0, count = 0;
  bool ok = std::fread(magic, 1, 8, f) == 8 && std::memcmp(magic, kCacheMagic, 8) == 0 &&
            std::fread(&bound, 8, 1, f) == 1 && std::fread(&count, 8, 1, f) == 1 &&
            bound >= need_bound;
  if (ok) {
    g_cached_primes.resize(count);
    ok = std::fread(g_cached_primes.data(), 8, count, f) == count;
    if (ok) g_cached_bound = bound;
  }
  std::fclose(f);
  if (!ok) { g_cached_primes.clear(); g_cached_bound = 0; }
  return ok;
}

void store_cache_file(const char* path) {
  FILE* f = std::fopen(path, "wb");
  if (!f) return;
  u64 count = g_cached_primes.size();
  std::fwrite(kCacheMagic, 1, 8, f);
  std::fwrite(&g_cached_bound, 8, 1, f);
  std::fwrite(&count, 8, 1, f);
  std::fwrite(g_cached_primes.data(), 8, count, f);
  std::fclose(f);
}

// Ensure the in-memory prime list covers [2, bound].
const std::vector<u64>& ensure_primes(u64 bound) {
  if (g_cached_bound >= bound) return g_cached_primes;
  const char* cache_path = std::getenv("THETA_REG_CACHE");
  if (cache_path && load_cache_file(cache_path, bound)) return g_cached_primes;
  g_cached_primes = primes_up_to(bound);
  g_cached_bound = bound;
  if (cache_path) store_cache_file(cache_path);
  return g_cached_primes;
}

}  // namespace

void for_primes(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<u64>(lo, 2);
  if (hi <= (1ULL << 32)) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    const auto& ps = ensure_primes(hi);
    auto it = std::lower_bound(ps.begin(), ps.end(), lo);
    for (; it != ps.end() && *it <= hi; ++it) fn(*it);
    return;
  }
  for (u64 n = lo | 1; n <= hi; n += 2)
    if (is_prime(n)) fn(n);
  if (lo <= 2 && hi >= 2) fn(2);  // unreachable in practice (hi > 2^32 here)
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  for_primes(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

namespace {

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto step = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) { out.push_back(n); return; }
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) { out.push_back(p); factor_rec(n / p, out); return; }
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<u64> factorize(u64 n) {
  std::vector<u64> out;
  factor_rec(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

u64 order_from_factored(const std::vector<u64>& factors, u64 group_order,
                        const std::function<bool(u64)>& is_identity_pow) {
  u64 ord = group_order;
  for (size_t i = 0; i < factors.size();) {
    u64 q = factors[i];
    size_t j = i;
    while (j < factors.size() && factors[j] == q) ++j;
    while (ord % q == 0 && is_identity_pow(ord / q)) ord /= q;
    i = j;
  }
  return ord;
}

}  // namespace thetareg
