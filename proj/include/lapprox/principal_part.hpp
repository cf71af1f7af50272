#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "lapprox/euler.hpp"

namespace lapprox {

struct Window {
  double max_imag = 30;
  double max_real_depth = 30;
};

enum class PoleSource { gamma_factor, euler_factor, origin };

struct Pole {
  BigComplex location;
  PoleSource source;
  long p = 0;  // source prime for euler_factor poles
  long h = 0;  // index within its family
  int order = 1;
  BigComplex residue;               // simple poles
  std::vector<BigComplex> laurent;  // origin block: c_1..c_ell
};

// Pole catalogue of xi_u(s, chi) together with evaluation of the principal
// part sum. Pole families:
//   gamma factor: s = -kappa - 2h, h >= 0, residue 2(-1)^h (q/pi)^-h L_u(s)/h!
//   euler factor p (p not dividing q): s = (2 pi i/log p)(n_j/phi(q) + h),
//     residue xi_u^{remove p}(s) / log p, the h with n_j/phi + h = 0 excluded
//   origin: order ell = #{p <= u, p not | q, chi(p)=1} + (1 if kappa=0),
//     Laurent coefficients by contour integration on a circle around 0.
// Residue tables extend lazily as evaluation targets demand; the imaginary-
// axis tails are cut off with the e^{-pi T/4} decay model of the gamma factor.
class PrincipalPart {
 public:
  struct PoleId {
    enum Kind { none, gamma, euler, origin } kind = none;
    long p = 0;
    long h = 0;
  };

  PrincipalPart(const DirichletCharacter& chi, const TruncationLevel& t, Precision prec)
      : chi_(chi), t_(t), prec_(prec), hstart_(chi.parity() == 0 ? 1 : 0) {
    if (t_.removed)
      throw domain_error("PrincipalPart expects the full truncated product (no removed prime)");
    ell_ = chi_.parity() == 0 ? 1 : 0;
    for (long p : t_.primes) {
      long nj = chi_.value_exponent(p);
      if (nj < 0) continue;  // p | q contributes no poles
      if (nj == 0) ++ell_;
      lines_.push_back(Line{p, nj, t_.with_removed(p)});
    }
  }

  const DirichletCharacter& character() const { return chi_; }
  const TruncationLevel& truncation() const { return t_; }
  Precision precision() const { return prec_; }
  int origin_order() const { return ell_; }

  // c_1..c_ell at construction precision.
  std::vector<BigComplex> origin_laurent() const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure_laurent();
    return std::vector<BigComplex>(laurent_.begin() + 1, laurent_.end());
  }

  BigComplex eval(const BigComplex& s, const BigFloat& target_abs,
                  BigFloat* tail_out = nullptr) const {
    return eval_impl(s, target_abs, PoleId{}, tail_out);
  }

  // Same sum with one pole family member left out (grouped evaluation close
  // to that pole handles it analytically instead).
  BigComplex eval_excluding(const BigComplex& s, const PoleId& skip, const BigFloat& target_abs,
                            BigFloat* tail_out = nullptr) const {
    return eval_impl(s, target_abs, skip, tail_out);
  }

  BigComplex pole_location(const PoleId& id, Precision pw) const {
    switch (id.kind) {
      case PoleId::gamma:
        return BigComplex(-chi_.parity() - 2 * id.h, pw);
      case PoleId::euler: {
        for (const auto& ln : lines_)
          if (ln.p == id.p) return euler_location(ln, id.h, pw);
        throw domain_error("pole_location: unknown prime");
      }
      case PoleId::origin:
        return BigComplex(pw);
      default:
        throw domain_error("pole_location: empty id");
    }
  }

  PoleId nearest_pole(const BigComplex& s, BigComplex* location = nullptr,
                      BigFloat* dist = nullptr) const {
    Precision pw(prec_.work() + 8, 0);
    PoleId best{};
    BigComplex bloc(pw);
    BigFloat bdist(pw);
    bool have = false;
    auto consider = [&](const PoleId& id, const BigComplex& loc) {
      BigFloat d = abs(s - loc);
      if (!have || d < bdist) {
        have = true;
        bdist = d;
        bloc = loc;
        best = id;
      }
    };
    if (ell_ > 0) consider({PoleId::origin, 0, 0}, BigComplex(pw));
    {
      long hc = std::lround((-s.real().to_double() - chi_.parity()) / 2.0);
      for (long h = hc - 1; h <= hc + 1; ++h) {
        if (h < hstart_) continue;
        consider({PoleId::gamma, 0, h}, BigComplex(-chi_.parity() - 2 * h, pw));
      }
    }
    for (const auto& ln : lines_) {
      double dT = 2 * 3.14159265358979324 / std::log(static_cast<double>(ln.p));
      double frac0 = static_cast<double>(ln.nj) / static_cast<double>(chi_.phi());
      long hc = std::lround(s.imag().to_double() / dT - frac0);
      for (long h = hc - 1; h <= hc + 1; ++h) {
        if (ln.nj == 0 && h == 0) continue;
        consider({PoleId::euler, ln.p, h}, euler_location(ln, h, pw));
      }
    }
    if (!have) throw domain_error("nearest_pole: no poles (empty product with kappa=1)");
    if (location) *location = bloc;
    if (dist) *dist = bdist;
    return best;
  }

  std::vector<Pole> enumerate_poles(const Window& win) const {
    if (win.max_imag <= 0 || win.max_real_depth <= 0)
      throw domain_error("enumerate_poles: window bounds must be positive");
    std::lock_guard<std::mutex> lock(mu_);
    Precision pw(prec_.work() + 8, 0);
    std::vector<Pole> out;
    if (ell_ > 0) {
      ensure_laurent();
      Pole o{BigComplex(pw), PoleSource::origin, 0, 0, ell_, BigComplex(pw), {}};
      o.laurent.assign(laurent_.begin() + 1, laurent_.end());
      out.push_back(std::move(o));
    }
    for (long h = hstart_; chi_.parity() + 2 * h <= win.max_real_depth; ++h) {
      Pole g{BigComplex(-chi_.parity() - 2 * h, pw), PoleSource::gamma_factor, 0, h, 1,
             gamma_residue_cached(h), {}};
      out.push_back(std::move(g));
    }
    for (auto& ln : lines_) {
      double dT = 2 * 3.14159265358979324 / std::log(static_cast<double>(ln.p));
      double frac0 = static_cast<double>(ln.nj) / static_cast<double>(chi_.phi());
      long hlo = static_cast<long>(std::floor(-win.max_imag / dT - frac0));
      long hhi = static_cast<long>(std::ceil(win.max_imag / dT - frac0));
      for (long h = hlo; h <= hhi; ++h) {
        if (ln.nj == 0 && h == 0) continue;  // that index belongs to the origin block
        double T = dT * (frac0 + h);
        if (std::fabs(T) > win.max_imag) continue;
        Pole e{euler_location(ln, h, pw), PoleSource::euler_factor, ln.p, h, 1,
               euler_residue_cached(ln, h), {}};
        out.push_back(std::move(e));
      }
    }
    return out;
  }

  // Laurent coefficients c_0..c_ell of the origin block at explicit working
  // precision (c_0 is the regular part's value at 0). Trapezoid rule on a
  // circle, nodes doubled until two successive counts agree to target.
  std::vector<BigComplex> laurent_block(int wp, const BigFloat& target_abs) const {
    Precision pw(wp, 0);
    BigFloat r = contour_radius(pw);
    long n_nodes = 64;
    const long max_nodes = 16384;
    std::vector<BigComplex> nodes;   // xi_u at the contour points
    std::vector<BigComplex> points;  // the contour points themselves
    auto fill_nodes = [&](long n) {
      std::vector<BigComplex> nv(static_cast<size_t>(n), BigComplex(pw));
      std::vector<BigComplex> pv(static_cast<size_t>(n), BigComplex(pw));
      BigFloat two_pi = mul_2si(const_pi(pw), 1);
      for (long k = 0; k < n; ++k) {
        if (k % 2 == 0 && !nodes.empty()) {  // reuse previous level
          nv[static_cast<size_t>(k)] = nodes[static_cast<size_t>(k / 2)];
          pv[static_cast<size_t>(k)] = points[static_cast<size_t>(k / 2)];
          continue;
        }
        BigFloat th = two_pi * BigFloat::from_ratio(k, n, pw);
        BigFloat sn(pw), cn(pw);
        sin_cos(th, sn, cn);
        BigComplex z(r * cn, r * sn);
        pv[static_cast<size_t>(k)] = z;
        nv[static_cast<size_t>(k)] = euler::detail::xi_truncated_raw(z, chi_, t_, pw);
      }
      nodes = std::move(nv);
      points = std::move(pv);
    };
    auto coeffs_from_nodes = [&]() {
      std::vector<BigComplex> cs(static_cast<size_t>(ell_) + 1, BigComplex(pw));
      long n = static_cast<long>(nodes.size());
      for (long k = 0; k < n; ++k) {
        BigComplex zp(1L, pw);
        for (int i = 0; i <= ell_; ++i) {
          cs[static_cast<size_t>(i)] = cs[static_cast<size_t>(i)] + nodes[static_cast<size_t>(k)] * zp;
          zp = zp * points[static_cast<size_t>(k)];
        }
      }
      for (auto& c : cs) c = c / n;
      return cs;
    };
    fill_nodes(n_nodes);
    std::vector<BigComplex> prev = coeffs_from_nodes();
    while (n_nodes < max_nodes) {
      n_nodes *= 2;
      fill_nodes(n_nodes);
      std::vector<BigComplex> cur = coeffs_from_nodes();
      BigFloat worst(pw);
      for (int i = 0; i <= ell_; ++i) {
        BigFloat d = abs(cur[static_cast<size_t>(i)] - prev[static_cast<size_t>(i)]);
        if (d > worst) worst = d;
      }
      if (worst < target_abs) return cur;
      prev = std::move(cur);
    }
    throw precision_error("origin Laurent contour did not stabilize");
  }

 private:
  struct Line {
    long p;
    long nj;
    TruncationLevel removed;
    mutable std::map<long, BigComplex> residues;
  };

  BigComplex euler_location(const Line& ln, long h, Precision pw) const {
    // (2 pi i / log p)(nj/phi + h); frac kept as one exact rational
    BigFloat two_pi = mul_2si(const_pi(pw), 1);
    BigFloat frac = BigFloat::from_ratio(ln.nj + h * chi_.phi(), chi_.phi(), pw);
    BigFloat T = two_pi * frac / log(BigFloat(ln.p, pw));
    return BigComplex(BigFloat(pw), T);
  }

  const BigComplex& euler_residue_cached(const Line& ln, long h) const {
    auto it = ln.residues.find(h);
    if (it != ln.residues.end()) return it->second;
    Precision pw(prec_.work() + 16, 0);
    BigComplex rho = euler_location(ln, h, pw);
    BigComplex res =
        euler::detail::xi_truncated_raw(rho, chi_, ln.removed, pw) / log(BigFloat(ln.p, pw));
    return ln.residues.emplace(h, res.at_precision(Precision(prec_.work() + 8, 0))).first->second;
  }

  BigComplex gamma_residue_cached(long h) const {
    size_t idx = static_cast<size_t>(h - hstart_);
    while (gamma_res_.size() <= idx) {
      long hh = hstart_ + static_cast<long>(gamma_res_.size());
      Precision pw(prec_.work() + 16, 0);
      BigComplex loc(-chi_.parity() - 2 * hh, pw);
      BigFloat qp = BigFloat(chi_.modulus(), pw) / const_pi(pw);
      BigComplex lu = euler::detail::l_truncated_raw(loc, chi_, t_, pw);
      BigFloat coef = mul_2si(pow_si(qp, -hh) / factorial(static_cast<unsigned long>(hh), pw), 1);
      if (hh % 2 != 0) coef = -coef;
      gamma_res_.push_back((lu * coef).at_precision(Precision(prec_.work() + 8, 0)));
    }
    return gamma_res_[idx];
  }

  void ensure_laurent() const {
    if (laurent_ready_) return;
    if (ell_ == 0) {
      laurent_ = {BigComplex(Precision(prec_.work() + 8, 0))};
      // c_0 alone: value of xi_u at 0 (no pole there when ell = 0)
      laurent_[0] = euler::detail::xi_truncated_raw(BigComplex(Precision(prec_.work() + 8, 0)),
                                                    chi_, t_, Precision(prec_.work() + 8, 0));
      laurent_ready_ = true;
      return;
    }
    int wp = prec_.work() + 16;
    laurent_ = laurent_block(wp, pow2(-(prec_.work() + 4), Precision(wp, 0)));
    laurent_ready_ = true;
  }

  BigFloat contour_radius(Precision pw) const {
    double dmin = chi_.parity() + 2.0 * hstart_;  // first gamma pole
    for (const auto& ln : lines_) {
      double dT = 2 * 3.14159265358979324 / std::log(static_cast<double>(ln.p));
      double frac0 = static_cast<double>(ln.nj) / static_cast<double>(chi_.phi());
      double f = ln.nj == 0 ? 1.0 : std::min(frac0, 1.0 - frac0);
      dmin = std::min(dmin, dT * f);
    }
    double r = std::min(1.0, dmin / 2.0);
    return BigFloat(r * 0.9375, pw);
  }

  BigComplex eval_impl(const BigComplex& s, const BigFloat& target_abs, const PoleId& skip,
                       BigFloat* tail_out) const {
    std::lock_guard<std::mutex> lock(mu_);
    Precision pw(prec_.work() + 8, 0);
    BigComplex spw = s.at_precision(pw);
    BigComplex total(pw);
    BigFloat tail(pw);
    long parts = static_cast<long>(2 * lines_.size()) + 2;
    BigFloat target_each = target_abs.at_precision(pw) / parts;
    if (target_each.sign() <= 0) throw domain_error("eval: target_abs must be positive");
    double sim = std::fabs(s.imag().to_double());

    if (ell_ > 0 && !(skip.kind == PoleId::origin)) {
      ensure_laurent();
      if (s.is_zero()) throw pole_error("principal part evaluated at the origin pole", s, laurent_[1]);
      BigComplex inv = 1L / spw;
      BigComplex zp = inv;
      for (int i = 1; i <= ell_; ++i) {
        total = total + laurent_[static_cast<size_t>(i)] * zp;
        zp = zp * inv;
      }
    }

    gamma_line_sum(spw, skip, target_each, total, tail);
    for (const auto& ln : lines_) euler_line_sum(ln, spw, sim, skip, target_each, total, tail);

    if (tail_out) *tail_out = tail.at_precision(s.precision());
    return total.at_precision(s.precision());
  }

  void gamma_line_sum(const BigComplex& spw, const PoleId& skip, const BigFloat& target_each,
                      BigComplex& total, BigFloat& tail) const {
    double sre = spw.real().to_double();
    BigFloat quarter_target = target_each / 4;
    for (long h = hstart_;; ++h) {
      if (h - hstart_ > 4000)
        throw precision_error("gamma pole line did not reach its tail target");
      BigComplex res = gamma_residue_cached(h);
      BigComplex loc(-chi_.parity() - 2 * h, spw.precision());
      BigComplex term = res / (spw - loc);
      bool skipped = skip.kind == PoleId::gamma && skip.h == h;
      if (!skipped) total = total + term;
      // residue ratio |res_{h+1}/res_h| <= (pi/q)/(h+1) * prod p^-2 < 1/2 for
      // h >= 2; once the remaining poles recede from s the tail is dominated
      // by twice the current term
      if (h >= 2 && chi_.parity() + 2.0 * h > -sre + 2.0 && abs(term) < quarter_target) {
        tail = tail + mul_2si(abs(term), 1);
        break;
      }
    }
  }

  void euler_line_sum(const Line& ln, const BigComplex& spw, double sim, const PoleId& skip,
                      const BigFloat& target_each, BigComplex& total, BigFloat& tail) const {
    const double ln2 = 0.69314718055994531;
    double dT = 2 * 3.14159265358979324 / std::log(static_cast<double>(ln.p));
    double frac0 = static_cast<double>(ln.nj) / static_cast<double>(chi_.phi());
    // per-step decay of the gamma factor along the imaginary axis, in bits
    double step_bits = (3.14159265358979324 / 4.0) * dT / ln2;
    long target_exp = target_each.mag_exp();
    for (int side : {+1, -1}) {
      long h = side > 0 ? (ln.nj > 0 ? 0 : 1) : -1;
      double cmax_bits = -1e18;  // running max of C in |res(T)| <= C e^{-pi T/4}
      for (long steps = 0;; ++steps, h += side) {
        if (steps > 20000)
          throw precision_error("euler pole line did not reach its tail target");
        const BigComplex& res = euler_residue_cached(ln, h);
        BigComplex rho = euler_location(ln, h, spw.precision());
        BigComplex term = res / (spw - rho);
        bool skipped = skip.kind == PoleId::euler && skip.p == ln.p && skip.h == h;
        if (!skipped) total = total + term;
        double absT = std::fabs(dT * (frac0 + h));
        double res_bits = static_cast<double>(abs(res).mag_exp());
        cmax_bits = std::max(cmax_bits, res_bits + absT * (3.14159265358979324 / 4.0) / ln2);
        if (absT > sim + 2.0 && steps >= 2) {
          double next_T = absT + dT;
          double dist_bits = std::log2(std::max(1.0, next_T - sim));
          double tail_bits = cmax_bits - next_T * (3.14159265358979324 / 4.0) / ln2 -
                             std::log2(1.0 - std::exp2(-step_bits)) - dist_bits + 3.0;
          if (tail_bits < static_cast<double>(target_exp) - 1.0) {
            if (tail_bits > -100000)
              tail = tail + pow2(static_cast<long>(tail_bits) + 1, tail.precision());
            break;
          }
        }
      }
    }
  }

  DirichletCharacter chi_;
  TruncationLevel t_;
  Precision prec_;
  int ell_ = 0;
  long hstart_;
  std::vector<Line> lines_;
  mutable std::vector<BigComplex> gamma_res_;
  mutable std::vector<BigComplex> laurent_;  // c_0..c_ell
  mutable bool laurent_ready_ = false;
  mutable std::mutex mu_;
};

}  // namespace lapprox
