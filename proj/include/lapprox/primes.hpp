#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "lapprox/errors.hpp"

namespace lapprox {

namespace detail {

struct SieveCache {
  std::mutex mu;
  long limit = 0;
  std::vector<long> primes;
};

inline SieveCache& sieve_cache() {
  static SieveCache c;
  return c;
}

inline void extend_sieve_locked(SieveCache& c, long limit) {
  if (limit <= c.limit) return;
  long n = std::max<long>(limit, std::max<long>(2 * c.limit, 64));
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  std::vector<long> ps;
  for (long i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    ps.push_back(i);
    for (long j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  c.primes = std::move(ps);
  c.limit = n;
}

}  // namespace detail

// Primes p <= u, ascending. Cached per process behind a mutex.
inline std::vector<long> primes_upto(double u) {
  if (u < 0) throw domain_error("primes_upto: negative bound");
  long limit = static_cast<long>(u);
  auto& c = detail::sieve_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  detail::extend_sieve_locked(c, limit + 1);
  std::vector<long> out;
  for (long p : c.primes) {
    if (static_cast<double>(p) > u) break;
    out.push_back(p);
  }
  return out;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long gcd(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Trial-division factorization, (prime, exponent) pairs ascending.
inline std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw domain_error("factorize: needs positive integer");
  std::vector<std::pair<long, int>> f;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

inline long euler_phi(long n) {
  long phi = 1;
  for (auto [p, e] : factorize(n)) {
    long pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

// Largest prime factor of n exceeds u, i.e. n lies in the rough set A_u.
inline bool has_prime_factor_above(long n, double u, const std::vector<long>& small_primes) {
  long m = n;
  for (long p : small_primes) {
    if (static_cast<double>(p) > u) break;
    while (m % p == 0) m /= p;
    if (m == 1) return false;
  }
  return m > 1;
}

inline long mod_pow(long base, long e, long m) {
  long r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long>((__int128)r * base % m);
    base = static_cast<long>((__int128)base * base % m);
    e >>= 1;
  }
  return r;
}

inline long mod_inverse(long a, long m) {
  long a1 = a % m;
  if (a1 < 0) a1 += m;
  long r0 = m, r1 = a1, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long tr = r0 - q * r1;
    r0 = r1;
    r1 = tr;
    long ts = s0 - q * s1;
    s0 = s1;
    s1 = ts;
  }
  if (r0 != 1) throw domain_error("mod_inverse: arguments not coprime");
  long inv = s0 % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace lapprox
