#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lapprox/bigfloat.hpp"

namespace lapprox {

// Complex value as a pair of arbitrary-precision reals at a shared working
// precision. Mixed-precision arithmetic promotes to the larger precision.
// No NaN or infinity escapes a public operation; such results raise instead.
class BigComplex {
 public:
  explicit BigComplex(Precision p = Precision()) : re_(p), im_(p) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
    Precision p = promote(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_.at_precision(p);
    if (im_.precision() != p) im_ = im_.at_precision(p);
  }
  explicit BigComplex(BigFloat re) : re_(std::move(re)), im_(BigFloat(re_.precision())) {}
  BigComplex(long re, Precision p) : re_(re, p), im_(p) {}
  BigComplex(long re, long im, Precision p) : re_(re, p), im_(im, p) {}

  static BigComplex i(Precision p) { return BigComplex(0L, 1L, p); }

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }

  Precision precision() const { return re_.precision(); }

  BigComplex at_precision(Precision p) const {
    return BigComplex(re_.at_precision(p), im_.at_precision(p));
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_real() const { return im_.is_zero(); }

 private:
  BigFloat re_, im_;
};

inline BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.real() + b.real(), a.imag() + b.imag());
}
inline BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.real() - b.real(), a.imag() - b.imag());
}
inline BigComplex operator-(const BigComplex& a) { return BigComplex(-a.real(), -a.imag()); }

inline BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.real() * b.real() - a.imag() * b.imag(),
                    a.real() * b.imag() + a.imag() * b.real());
}
inline BigComplex operator*(const BigComplex& a, const BigFloat& b) {
  return BigComplex(a.real() * b, a.imag() * b);
}
inline BigComplex operator*(const BigFloat& a, const BigComplex& b) { return b * a; }
inline BigComplex operator*(const BigComplex& a, long b) {
  return BigComplex(a.real() * b, a.imag() * b);
}
inline BigComplex operator*(long a, const BigComplex& b) { return b * a; }

inline BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.is_zero()) throw domain_error("complex division by zero");
  BigFloat den = b.real() * b.real() + b.imag() * b.imag();
  return BigComplex((a.real() * b.real() + a.imag() * b.imag()) / den,
                    (a.imag() * b.real() - a.real() * b.imag()) / den);
}
inline BigComplex operator/(const BigComplex& a, const BigFloat& b) {
  if (b.is_zero()) throw domain_error("complex division by zero");
  return BigComplex(a.real() / b, a.imag() / b);
}
inline BigComplex operator/(const BigComplex& a, long b) {
  if (b == 0) throw domain_error("complex division by zero");
  return BigComplex(a.real() / b, a.imag() / b);
}
inline BigComplex operator/(long a, const BigComplex& b) {
  return BigComplex(a, b.precision()) / b;
}

inline BigComplex operator+(const BigComplex& a, long b) {
  return BigComplex(a.real() + b, a.imag());
}
inline BigComplex operator+(long a, const BigComplex& b) { return b + a; }
inline BigComplex operator-(const BigComplex& a, long b) { return a + (-b); }
inline BigComplex operator-(long a, const BigComplex& b) {
  return BigComplex(a - b.real(), -b.imag());
}
inline BigComplex operator+(const BigComplex& a, const BigFloat& b) {
  return BigComplex(a.real() + b, a.imag());
}
inline BigComplex operator-(const BigComplex& a, const BigFloat& b) {
  return BigComplex(a.real() - b, a.imag());
}
inline BigComplex operator-(const BigFloat& a, const BigComplex& b) {
  return BigComplex(a - b.real(), -b.imag());
}

inline bool operator==(const BigComplex& a, const BigComplex& b) {
  return a.real() == b.real() && a.imag() == b.imag();
}
inline bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

inline BigComplex conj(const BigComplex& a) { return BigComplex(a.real(), -a.imag()); }
inline BigComplex mul_i(const BigComplex& a) { return BigComplex(-a.imag(), a.real()); }
inline BigComplex mul_2si(const BigComplex& a, long k) {
  return BigComplex(mul_2si(a.real(), k), mul_2si(a.imag(), k));
}

inline BigFloat abs2(const BigComplex& a) {
  return a.real() * a.real() + a.imag() * a.imag();
}
inline BigFloat abs(const BigComplex& a) {
  BigFloat r(a.precision());
  mpfr_hypot(r.raw_mut(), a.real().raw(), a.imag().raw(), MPFR_RNDN);
  return r;
}
inline BigFloat arg(const BigComplex& a) {
  if (a.is_zero()) throw domain_error("arg of zero");
  return atan2(a.imag(), a.real());
}

inline BigComplex exp(const BigComplex& a) {
  BigFloat ex = exp(a.real());
  BigFloat s(a.precision()), c(a.precision());
  sin_cos(a.imag(), s, c);
  BigComplex r(ex * c, ex * s);
  if (!r.is_finite()) throw overflow_error("complex exp overflow");
  return r;
}

// Principal-branch logarithm: Im(log z) in (-pi, pi].
inline BigComplex log(const BigComplex& a) {
  if (a.is_zero()) throw domain_error("log of zero");
  return BigComplex(log(abs(a)), atan2(a.imag(), a.real()));
}

// exp(z) - 1 without cancellation for small |z|.
inline BigComplex expm1(const BigComplex& a) {
  const BigFloat& x = a.real();
  const BigFloat& y = a.imag();
  BigFloat s(a.precision()), c(a.precision());
  sin_cos(y, s, c);
  BigFloat sh = sin(y / 2);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  BigFloat re = expm1(x) * c - mul_2si(sh * sh, 1);
  BigFloat im = exp(x) * s;
  return BigComplex(re, im);
}

// Principal branch: exp(e log b). b = 0 allowed only for Re(e) > 0.
inline BigComplex complex_pow(const BigComplex& base, const BigComplex& e) {
  if (base.is_zero()) {
    if (e.real().sign() > 0) return BigComplex(promote(base.precision(), e.precision()));
    throw domain_error("0 raised to exponent with non-positive real part");
  }
  if (e.is_zero()) return BigComplex(1, promote(base.precision(), e.precision()));
  BigComplex r = exp(e * log(base));
  if (!r.is_finite()) throw overflow_error("complex_pow overflow");
  return r;
}

// b^e for positive real b via the real logarithm (no branch ambiguity).
inline BigComplex pow_real_base(const BigFloat& base, const BigComplex& e) {
  if (base.sign() <= 0) throw domain_error("pow_real_base needs positive base");
  return exp(e * log(base));
}

// |a - b| <= 2^(-tol_bits) * max(1, |a|, |b|)
inline bool nearly_equal(const BigComplex& a, const BigComplex& b, int tol_bits) {
  if (!a.is_finite() || !b.is_finite()) throw domain_error("nearly_equal on non-finite value");
  BigFloat d = abs(a - b);
  BigFloat scale = abs(a);
  BigFloat sb = abs(b);
  if (sb > scale) scale = sb;
  if (scale < 1L) scale = BigFloat(1L, scale.precision());
  return d <= mul_2si(scale, -tol_bits);
}

inline bool nearly_equal(const BigFloat& a, const BigFloat& b, int tol_bits) {
  return nearly_equal(BigComplex(a), BigComplex(b), tol_bits);
}

// Simple pole of a meromorphic function: location plus residue when known.
struct pole_error : lx_error {
  BigComplex location;
  BigComplex residue;
  pole_error(const std::string& w, BigComplex loc, BigComplex res)
      : lx_error("POLE", w), location(std::move(loc)), residue(std::move(res)) {}
};

// Evaluation requested too close to a pole for direct arithmetic; callers
// that need values there must take the grouped/Laurent-aware path.
struct near_pole_error : lx_error {
  BigComplex location;
  near_pole_error(const std::string& w, BigComplex loc)
      : lx_error("NEAR_POLE", w), location(std::move(loc)) {}
};

}  // namespace lapprox
