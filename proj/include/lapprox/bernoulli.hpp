#pragma once

#include <gmp.h>

#include <mutex>
#include <vector>

#include "lapprox/bigfloat.hpp"

namespace lapprox {
namespace detail {

class Mpz {
 public:
  Mpz() { mpz_init(z_); }
  explicit Mpz(unsigned long v) { mpz_init_set_ui(z_, v); }
  Mpz(const Mpz& o) { mpz_init_set(z_, o.z_); }
  Mpz(Mpz&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Mpz& operator=(const Mpz& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Mpz& operator=(Mpz&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Mpz() { mpz_clear(z_); }
  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw_mut() { return z_; }

 private:
  mpz_t z_;
};

struct TangentCache {
  std::mutex mu;
  std::vector<Mpz> t;  // t[k] = k-th tangent number, t[0] unused
};

inline TangentCache& tangent_cache() {
  static TangentCache c;
  return c;
}

// Integer tangent-number triangle; exact, precision-independent.
inline void ensure_tangent(size_t n) {
  auto& c = tangent_cache();
  if (c.t.size() > n) return;
  size_t m = std::max<size_t>(n, c.t.empty() ? 64 : 2 * (c.t.size() - 1));
  std::vector<Mpz> t(m + 1);
  mpz_set_ui(t[1].raw_mut(), 1);
  for (size_t k = 2; k <= m; ++k)
    mpz_mul_ui(t[k].raw_mut(), t[k - 1].raw(), static_cast<unsigned long>(k - 1));
  for (size_t k = 2; k <= m; ++k) {
    for (size_t j = k; j <= m; ++j) {
      Mpz a;
      mpz_mul_ui(a.raw_mut(), t[j - 1].raw(), static_cast<unsigned long>(j - k));
      mpz_mul_ui(t[j].raw_mut(), t[j].raw(), static_cast<unsigned long>(j - k + 2));
      mpz_add(t[j].raw_mut(), t[j].raw(), a.raw());
    }
  }
  c.t = std::move(t);
}

}  // namespace detail

// B_{2n} = (-1)^{n+1} 2n T_n / (4^n (4^n - 1)) for n >= 1, rounded once at the
// requested working precision.
inline BigFloat bernoulli_2n(unsigned n, Precision p) {
  if (n == 0) return BigFloat(1L, p);
  auto& c = detail::tangent_cache();
  {
    std::lock_guard<std::mutex> lock(c.mu);
    detail::ensure_tangent(n);
  }
  BigFloat r(p);
  {
    std::lock_guard<std::mutex> lock(c.mu);
    mpfr_set_z(r.raw_mut(), c.t[n].raw(), MPFR_RNDN);
  }
  r = r * static_cast<long>(2 * n);
  r = mul_2si(r, -2 * static_cast<long>(n));  // / 4^n
  // / (4^n - 1)
  detail::Mpz d;
  mpz_ui_pow_ui(d.raw_mut(), 4, n);
  mpz_sub_ui(d.raw_mut(), d.raw(), 1);
  BigFloat den(p);
  mpfr_set_z(den.raw_mut(), d.raw(), MPFR_RNDN);
  r = r / den;
  if (n % 2 == 0) r = -r;
  return r;
}

}  // namespace lapprox
