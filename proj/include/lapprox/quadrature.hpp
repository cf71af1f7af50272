#pragma once

#include <functional>
#include <vector>

#include "lapprox/bigcomplex.hpp"

namespace lapprox {

struct QuadratureResult {
  BigComplex value;
  BigFloat err_est;
  long evals = 0;
};

namespace detail {

// One tanh-sinh abscissa/weight pair on (-1, 1) at parameter t:
//   x = tanh((pi/2) sinh t),  w = (pi/2) cosh t / cosh^2((pi/2) sinh t)
inline void ts_node(const BigFloat& t, const BigFloat& pi_half, BigFloat& x, BigFloat& w) {
  BigFloat sh(t.precision()), ch(t.precision());
  sinh_cosh(t, sh, ch);
  BigFloat u = pi_half * sh;
  BigFloat ush(t.precision()), uch(t.precision());
  sinh_cosh(u, ush, uch);
  x = ush / uch;  // tanh(u)
  w = pi_half * ch / (uch * uch);
}

}  // namespace detail

// Tanh-sinh quadrature of f over the finite interval [a, b]. Level doubling
// until two successive refinements differ by less than target_abs. Works for
// integrands analytic on the open interval, including endpoint singularities
// that the double-exponential decay tames.
template <typename F>
QuadratureResult integrate_finite(F&& f, const BigFloat& a, const BigFloat& b,
                                  const BigFloat& target_abs, Precision prec,
                                  int max_level = 11) {
  Precision pw(prec.work() + 8, 0);
  BigFloat pi_half = mul_2si(const_pi(pw), -1);
  BigFloat mid = (a.at_precision(pw) + b.at_precision(pw)) / 2;
  BigFloat rad = (b.at_precision(pw) - a.at_precision(pw)) / 2;
  // node window: 1 - tanh((pi/2) sinh t) < 2^-(wp+8) bounds useful |t|
  double wp_d = static_cast<double>(pw.work());
  double tmax_d = std::asinh((wp_d + 16) * 0.6931 / 3.14159);
  BigFloat cut = mul_2si(BigFloat(1L, pw), -(pw.work() + 8));

  long evals = 0;
  auto eval_at = [&](const BigFloat& t, BigFloat& wout) -> BigComplex {
    BigFloat x(pw), w(pw);
    detail::ts_node(t, pi_half, x, w);
    wout = w * rad;
    ++evals;
    return f(mid + rad * x);
  };

  BigFloat h(1L, pw);
  // level 0: t = 0, +-h, +-2h, ...
  BigFloat w0(pw);
  BigComplex acc = eval_at(BigFloat(0L, pw), w0) * w0;
  for (int sign = -1; sign <= 1; sign += 2) {
    for (long k = 1;; ++k) {
      BigFloat t = BigFloat(sign * k, pw) * h;
      if (std::abs(static_cast<double>(sign * k)) * 1.0 > tmax_d + 1) break;
      BigFloat w(pw);
      BigComplex v = eval_at(t, w);
      acc = acc + v * w;
      if (w < cut) break;
    }
  }
  BigComplex prev = acc * h;
  BigFloat err(pw);
  for (int level = 1; level <= max_level; ++level) {
    h = mul_2si(h, -1);
    BigComplex add(pw);
    for (int sign = -1; sign <= 1; sign += 2) {
      for (long k = 1;; k += 2) {  // odd multiples are the new nodes
        BigFloat t = BigFloat(sign * k, pw) * h;
        if (std::abs(static_cast<double>(k)) * h.to_double() > tmax_d + 1) break;
        BigFloat w(pw);
        BigComplex v = eval_at(t, w);
        add = add + v * w;
        if (w < cut) break;
      }
    }
    BigComplex cur = prev / 2 + add * h;
    err = abs(cur - prev);
    prev = cur;
    if (level >= 3 && err < target_abs) return {prev.at_precision(prec), err, evals};
  }
  throw precision_error("tanh-sinh quadrature did not converge");
}

// Exp-sinh quadrature of f over [a, infinity); f must decay at infinity.
// Substitution x = a + exp((pi/2) sinh t).
template <typename F>
QuadratureResult integrate_semi_infinite(F&& f, const BigFloat& a, const BigFloat& target_abs,
                                         Precision prec, int max_level = 11) {
  Precision pw(prec.work() + 8, 0);
  BigFloat pi_half = mul_2si(const_pi(pw), -1);
  BigFloat aa = a.at_precision(pw);
  double wp_d = static_cast<double>(pw.work());
  double tmax_d = std::asinh((wp_d + 16) * 0.6931 / 1.5708);

  long evals = 0;
  auto eval_at = [&](const BigFloat& t) -> BigComplex {
    BigFloat sh(pw), ch(pw);
    sinh_cosh(t, sh, ch);
    BigFloat g = exp(pi_half * sh);  // x - a
    BigFloat w = pi_half * ch * g;
    ++evals;
    BigComplex v = f(aa + g);
    return v * w;
  };

  BigFloat h(1L, pw);
  BigComplex acc = eval_at(BigFloat(0L, pw));
  BigFloat tiny = mul_2si(BigFloat(1L, pw), -(pw.work() + 8));
  auto scan = [&](const BigFloat& step, const BigFloat& start, long stride, BigComplex& into) {
    // walk outward in units of `stride * step` from `start`, stop after the
    // terms have collapsed (weights shrink double-exponentially)
    for (long k = 0;; ++k) {
      BigFloat t = start + BigFloat(k * stride, pw) * step;
      if (std::abs(t.to_double()) > tmax_d + 1) break;
      BigComplex v = eval_at(t);
      into = into + v;
      if (abs(v) < tiny && k > 2) break;
    }
  };
  {
    BigComplex side(pw);
    scan(h, h, 1, side);
    BigFloat nh = -h;
    scan(nh, nh, 1, side);
    acc = acc + side;
  }
  BigComplex prev = acc * h;
  BigFloat err(pw);
  for (int level = 1; level <= max_level; ++level) {
    h = mul_2si(h, -1);
    BigComplex add(pw);
    BigComplex side(pw);
    scan(mul_2si(h, 1), h, 1, side);  // odd multiples of h: h, 3h, 5h...
    BigFloat nh = -h;
    scan(mul_2si(nh, 1), nh, 1, side);
    add = side;
    BigComplex cur = prev / 2 + add * h;
    err = abs(cur - prev);
    prev = cur;
    if (level >= 3 && err < target_abs) return {prev.at_precision(prec), err, evals};
  }
  throw precision_error("exp-sinh quadrature did not converge");
}

}  // namespace lapprox
