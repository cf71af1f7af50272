#pragma once

#include <random>

#include "lapprox/lapprox.hpp"

namespace lapprox::testing {

inline Precision prec256() { return Precision(256, 32); }

inline BigFloat ratio(long num, long den, Precision p = prec256()) {
  return BigFloat::from_ratio(num, den, p);
}

inline BigComplex cplx(long re_num, long re_den, long im_num, long im_den,
                       Precision p = prec256()) {
  return BigComplex(ratio(re_num, re_den, p), ratio(im_num, im_den, p));
}

// relative-ish agreement at 2^-tol_bits, failing with readable magnitudes
inline bool close_bits(const BigComplex& a, const BigComplex& b, int tol_bits) {
  return nearly_equal(a, b, tol_bits);
}

// deterministic point generator for fuzz-style checks
class RandomPoints {
 public:
  explicit RandomPoints(unsigned long seed) : eng_(seed) {}

  double real_in(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(eng_);
  }

  BigComplex complex_in(double re_lo, double re_hi, double im_lo, double im_hi,
                        Precision p = prec256()) {
    return BigComplex(BigFloat(real_in(re_lo, re_hi), p), BigFloat(real_in(im_lo, im_hi), p));
  }

  long integer_in(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lapprox::testing
