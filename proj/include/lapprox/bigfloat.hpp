#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "lapprox/errors.hpp"

namespace lapprox {

// Explicit working precision carried by every numeric value. `bits` is the
// precision results are faithful to; `guard` extra bits are carried through
// intermediate arithmetic. Public operations are accurate to about
// 2^(guard - bits) relative error under their stated preconditions.
struct Precision {
  int bits = 256;
  int guard = 32;

  Precision() = default;
  Precision(int b, int g) : bits(b), guard(g) { validate(); }
  explicit Precision(int b) : bits(b) { validate(); }

  int work() const { return bits + guard; }

  void validate() const {
    if (bits < 64) throw domain_error("Precision: bits must be >= 64");
    if (guard < 0) throw domain_error("Precision: guard must be >= 0");
    if (bits > (1 << 24)) throw domain_error("Precision: bits unreasonably large");
  }

  friend bool operator==(const Precision& a, const Precision& b) {
    return a.bits == b.bits && a.guard == b.guard;
  }
  friend bool operator!=(const Precision& a, const Precision& b) { return !(a == b); }
};

inline Precision promote(const Precision& a, const Precision& b) {
  return Precision(std::max(a.bits, b.bits), std::max(a.guard, b.guard));
}

// Arbitrary-precision real wrapping one mpfr_t. Immutable by convention:
// all operations return fresh values, so instances can be shared freely
// across threads once constructed.
class BigFloat {
 public:
  explicit BigFloat(Precision p = Precision()) : prec_(p) {
    mpfr_init2(v_, p.work());
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long n, Precision p) : prec_(p) {
    mpfr_init2(v_, p.work());
    mpfr_set_si(v_, n, MPFR_RNDN);
  }
  BigFloat(int n, Precision p) : BigFloat(static_cast<long>(n), p) {}
  BigFloat(double d, Precision p) : prec_(p) {
    mpfr_init2(v_, p.work());
    mpfr_set_d(v_, d, MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) : prec_(o.prec_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      prec_ = o.prec_;
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    std::swap(prec_, o.prec_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_string(const std::string& s, Precision p) {
    BigFloat r(p);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw parse_error("not a decimal number: '" + s + "'");
    return r;
  }

  // Exact rational num/den rounded once at working precision.
  static BigFloat from_ratio(long num, long den, Precision p) {
    if (den == 0) throw domain_error("from_ratio: zero denominator");
    BigFloat r(num, p);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }

  Precision precision() const { return prec_; }

  // Same numeric value re-rounded to a different working precision.
  BigFloat at_precision(Precision p) const {
    BigFloat r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw_mut() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return is_finite() && mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  bool fits_long() const { return mpfr_fits_slong_p(v_, MPFR_RNDN) != 0; }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // floor(log2 |x|) + 1 for x != 0; values compare by this as magnitude order.
  long mag_exp() const {
    if (is_zero()) return -(1L << 40);
    return static_cast<long>(mpfr_get_exp(v_));
  }

 private:
  mpfr_t v_;
  Precision prec_;
};

namespace detail {

inline BigFloat make(Precision p) { return BigFloat(p); }

template <typename Fn>
inline BigFloat bf1(const BigFloat& a, Fn fn) {
  BigFloat r(a.precision());
  fn(r.raw_mut(), a.raw(), MPFR_RNDN);
  return r;
}

template <typename Fn>
inline BigFloat bf2(const BigFloat& a, const BigFloat& b, Fn fn) {
  BigFloat r(promote(a.precision(), b.precision()));
  fn(r.raw_mut(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

}  // namespace detail

inline BigFloat operator+(const BigFloat& a, const BigFloat& b) { return detail::bf2(a, b, mpfr_add); }
inline BigFloat operator-(const BigFloat& a, const BigFloat& b) { return detail::bf2(a, b, mpfr_sub); }
inline BigFloat operator*(const BigFloat& a, const BigFloat& b) { return detail::bf2(a, b, mpfr_mul); }
inline BigFloat operator/(const BigFloat& a, const BigFloat& b) { return detail::bf2(a, b, mpfr_div); }

inline BigFloat operator-(const BigFloat& a) { return detail::bf1(a, mpfr_neg); }

inline BigFloat operator+(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_add_si(r.raw_mut(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline BigFloat operator-(const BigFloat& a, long b) { return a + (-b); }
inline BigFloat operator+(long a, const BigFloat& b) { return b + a; }
inline BigFloat operator-(long a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_si_sub(r.raw_mut(), a, b.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat operator*(const BigFloat& a, long b) {
  BigFloat r(a.precision());
  mpfr_mul_si(r.raw_mut(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline BigFloat operator*(long a, const BigFloat& b) { return b * a; }
inline BigFloat operator/(const BigFloat& a, long b) {
  if (b == 0) throw domain_error("division by zero");
  BigFloat r(a.precision());
  mpfr_div_si(r.raw_mut(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline BigFloat operator/(long a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_si_div(r.raw_mut(), a, b.raw(), MPFR_RNDN);
  return r;
}

inline int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

inline bool operator<(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator>(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator<=(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>=(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }

inline bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) < 0; }
inline bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) > 0; }
inline bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) <= 0; }
inline bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b) >= 0; }

inline BigFloat abs(const BigFloat& a) { return detail::bf1(a, mpfr_abs); }

inline BigFloat sqrt(const BigFloat& a) {
  if (a.sign() < 0) throw domain_error("sqrt of negative real");
  return detail::bf1(a, mpfr_sqrt);
}

inline BigFloat exp(const BigFloat& a) { return detail::bf1(a, mpfr_exp); }
inline BigFloat expm1(const BigFloat& a) { return detail::bf1(a, mpfr_expm1); }

inline BigFloat log(const BigFloat& a) {
  if (a.sign() <= 0) throw domain_error("log of non-positive real");
  return detail::bf1(a, mpfr_log);
}
inline BigFloat log1p(const BigFloat& a) { return detail::bf1(a, mpfr_log1p); }

inline BigFloat sin(const BigFloat& a) { return detail::bf1(a, mpfr_sin); }
inline BigFloat cos(const BigFloat& a) { return detail::bf1(a, mpfr_cos); }

inline void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c) {
  s = BigFloat(a.precision());
  c = BigFloat(a.precision());
  mpfr_sin_cos(s.raw_mut(), c.raw_mut(), a.raw(), MPFR_RNDN);
}

inline void sinh_cosh(const BigFloat& a, BigFloat& sh, BigFloat& ch) {
  sh = BigFloat(a.precision());
  ch = BigFloat(a.precision());
  mpfr_sinh_cosh(sh.raw_mut(), ch.raw_mut(), a.raw(), MPFR_RNDN);
}

inline BigFloat atan(const BigFloat& a) { return detail::bf1(a, mpfr_atan); }

inline BigFloat atan2(const BigFloat& y, const BigFloat& x) { return detail::bf2(y, x, mpfr_atan2); }

inline BigFloat pow_si(const BigFloat& a, long e) {
  BigFloat r(a.precision());
  mpfr_pow_si(r.raw_mut(), a.raw(), e, MPFR_RNDN);
  return r;
}

// Real power, principal (real) branch; base must be positive.
inline BigFloat pow(const BigFloat& base, const BigFloat& e) {
  if (base.sign() <= 0) throw domain_error("real pow needs positive base");
  return detail::bf2(base, e, mpfr_pow);
}

inline BigFloat mul_2si(const BigFloat& a, long k) {
  BigFloat r(a.precision());
  mpfr_mul_2si(r.raw_mut(), a.raw(), k, MPFR_RNDN);
  return r;
}

inline BigFloat floor(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_floor(r.raw_mut(), a.raw());
  return r;
}

inline long round_to_long(const BigFloat& a) {
  if (!a.is_finite()) throw domain_error("round of non-finite value");
  BigFloat r(a.precision());
  mpfr_round(r.raw_mut(), a.raw());
  if (!mpfr_fits_slong_p(r.raw(), MPFR_RNDZ)) throw overflow_error("round does not fit a long");
  return mpfr_get_si(r.raw(), MPFR_RNDZ);
}

inline BigFloat const_pi(Precision p) {
  BigFloat r(p);
  mpfr_const_pi(r.raw_mut(), MPFR_RNDN);
  return r;
}

inline BigFloat const_euler(Precision p) {
  BigFloat r(p);
  mpfr_const_euler(r.raw_mut(), MPFR_RNDN);
  return r;
}

inline BigFloat factorial(unsigned long n, Precision p) {
  BigFloat r(p);
  mpfr_fac_ui(r.raw_mut(), n, MPFR_RNDN);
  return r;
}

// 2^k as an exact BigFloat.
inline BigFloat pow2(long k, Precision p) { return mul_2si(BigFloat(1L, p), k); }

inline BigFloat gamma_real(const BigFloat& a) { return detail::bf1(a, mpfr_gamma); }

}  // namespace lapprox
