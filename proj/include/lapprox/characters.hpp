#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lapprox/bigcomplex.hpp"
#include "lapprox/primes.hpp"

namespace lapprox {

// exp(2 pi i num/den), exact at the 4th roots of unity so that real character
// values are bit-exact +-1.
inline BigComplex root_of_unity(long num, long den, Precision p) {
  if (den <= 0) throw domain_error("root_of_unity: denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  long g = gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den == 1) return BigComplex(1, p);
  if (den == 2) return BigComplex(-1, p);
  if (den == 4) return num == 1 ? BigComplex(0L, 1L, p) : BigComplex(0L, -1L, p);
  Precision pw(p.work(), 8);
  BigFloat theta = mul_2si(const_pi(pw), 1) * BigFloat::from_ratio(num, den, pw);
  BigFloat s(pw), c(pw);
  sin_cos(theta, s, c);
  return BigComplex(c.at_precision(p), s.at_precision(p));
}

// Primitive Dirichlet character mod q in the Conrey/LMFDB labeling scheme.
// Values are stored as exact exponent numerators over phi(q): chi(n) =
// exp(2 pi i e_n / phi(q)), so tables never go stale when a caller asks for a
// higher precision. Immutable after construction; safe to share across threads.
class DirichletCharacter {
 public:
  static DirichletCharacter from_conrey_label(long q, long index) {
    DirichletCharacter chi(q, index);
    if (chi.conductor_ != q) {
      if (q % 4 == 2)
        throw not_primitive_error("no primitive character exists mod " + std::to_string(q) +
                                  " (q == 2 mod 4)");
      throw not_primitive_error("character " + chi.label() + " has conductor " +
                                std::to_string(chi.conductor_) + " < " + std::to_string(q));
    }
    return chi;
  }

  // LMFDB Conrey notation "q.n", e.g. "5.4".
  static DirichletCharacter from_label(const std::string& label) {
    auto dot = label.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= label.size())
      throw label_error("character label must look like 'q.n': '" + label + "'");
    long q = 0, n = 0;
    try {
      size_t used = 0;
      q = std::stol(label.substr(0, dot), &used);
      if (used != dot) throw label_error("bad modulus in label '" + label + "'");
      std::string rest = label.substr(dot + 1);
      n = std::stol(rest, &used);
      if (used != rest.size()) throw label_error("bad index in label '" + label + "'");
    } catch (const lx_error&) {
      throw;
    } catch (const std::exception&) {
      throw label_error("character label must look like 'q.n': '" + label + "'");
    }
    return from_conrey_label(q, n);
  }

  long modulus() const { return q_; }
  long conrey_index() const { return index_; }
  long conductor() const { return conductor_; }
  long phi() const { return phi_; }
  int parity() const { return kappa_; }  // 0 even, 1 odd
  std::string label() const { return std::to_string(q_) + "." + std::to_string(index_); }

  // Exponent e with chi(n) = exp(2 pi i e / phi(q)), or -1 when chi(n) = 0.
  long value_exponent(long n) const {
    long r = n % q_;
    if (r < 0) r += q_;
    return exps_[static_cast<size_t>(r)];
  }

  bool is_real() const {
    for (long e : exps_)
      if (e > 0 && 2 * e != phi_) return false;
    return true;
  }

  BigComplex eval(long n, Precision p = Precision()) const {
    long e = value_exponent(n);
    if (e < 0) return BigComplex(p);
    return root_of_unity(e, phi_, p);
  }

  // tau(chi) = sum_{n=1}^{q} chi(n) e^{2 pi i n / q}
  BigComplex gauss_sum(Precision p = Precision()) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->gauss.find(p.work());
      if (it != cache_->gauss.end()) return it->second.at_precision(p);
    }
    Precision pw(p.work() + 16, 16);
    BigComplex acc(pw);
    for (long n = 1; n < q_; ++n) {
      long e = exps_[static_cast<size_t>(n)];
      if (e < 0) continue;
      // chi(n) e^{2 pi i n/q} = e^{2 pi i (e q + n phi) / (phi q)}
      acc = acc + root_of_unity(e * q_ + n * phi_, phi_ * q_, pw);
    }
    BigComplex out = acc.at_precision(p);
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->gauss.emplace(p.work(), out);
    return out;
  }

  // Root number epsilon(chi) = tau(chi) / (i^kappa sqrt(q)).
  BigComplex epsilon(Precision p = Precision()) const {
    Precision pw(p.work() + 16, 16);
    BigComplex tau = gauss_sum(pw);
    BigComplex r = tau / sqrt(BigFloat(q_, pw));
    if (kappa_ == 1) r = BigComplex(r.imag(), -r.real());  // divide by i
    return r.at_precision(p);
  }

  DirichletCharacter conjugate() const {
    DirichletCharacter c(*this);
    c.index_ = mod_inverse(index_, q_);
    for (auto& e : c.exps_)
      if (e > 0) e = phi_ - e;
    c.cache_ = std::make_shared<Cache>();
    return c;
  }

 private:
  DirichletCharacter(long q, long index) : q_(q), index_(index) {
    if (q < 3)
      throw label_error("modulus must be >= 3 (no primitive non-trivial character below)");
    if (index < 1 || index >= q)
      throw label_error("Conrey index must lie in [1, q)");
    if (gcd(index, q) != 1)
      throw label_error("Conrey index " + std::to_string(index) + " not coprime to " +
                        std::to_string(q));
    phi_ = euler_phi(q);
    exps_.assign(static_cast<size_t>(q), -1);
    build_exponents();
    long em1 = exps_[static_cast<size_t>(q - 1)];
    if (em1 != 0 && 2 * em1 != phi_)
      throw domain_error("internal: chi(-1) is not +-1");
    kappa_ = (em1 == 0) ? 0 : 1;
    conductor_ = compute_conductor();
    cache_ = std::make_shared<Cache>();
  }

  void build_exponents() {
    for (long n = 0; n < q_; ++n)
      if (gcd(n, q_) == 1) exps_[static_cast<size_t>(n)] = 0;

    for (auto [p, e] : factorize(q_)) {
      long m = 1;
      for (int i = 0; i < e; ++i) m *= p;
      if (p == 2) {
        accumulate_two_part(m, e);
      } else {
        accumulate_odd_part(p, m);
      }
    }
  }

  // Conrey generator for odd p: least primitive root mod p, bumped by p when
  // it fails to generate mod p^2 (then it generates every p^k).
  static long conrey_generator(long p) {
    long phi_p = p - 1;
    auto fac = factorize(phi_p);
    for (long g = 2;; ++g) {
      bool primitive = true;
      for (auto [r, e] : fac) {
        (void)e;
        if (mod_pow(g, phi_p / r, p) == 1) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
      if (mod_pow(g, phi_p, p * p) == 1) return g + p;
      return g;
    }
  }

  void accumulate_odd_part(long p, long m) {
    long phi_m = (m / p) * (p - 1);
    long g = conrey_generator(p);
    std::vector<long> dlog(static_cast<size_t>(m), -1);
    long x = 1 % m;
    for (long k = 0; k < phi_m; ++k) {
      dlog[static_cast<size_t>(x)] = k;
      x = static_cast<long>((__int128)x * g % m);
    }
    long a = dlog[static_cast<size_t>(index_ % m)];
    long scale = phi_ / phi_m;
    for (long n = 0; n < q_; ++n) {
      if (exps_[static_cast<size_t>(n)] < 0) continue;
      long d = dlog[static_cast<size_t>(n % m)];
      long contrib = static_cast<long>((__int128)a * d % phi_m);
      exps_[static_cast<size_t>(n)] =
          (exps_[static_cast<size_t>(n)] + contrib * scale) % phi_;
    }
  }

  void accumulate_two_part(long m, int e) {
    if (e == 1) return;  // mod 2: only the trivial character
    if (e == 2) {
      // mod 4: chi(3) = -1 exactly when the index is 3 mod 4
      long a = index_ % 4 == 3 ? 1 : 0;
      for (long n = 0; n < q_; ++n) {
        if (exps_[static_cast<size_t>(n)] < 0) continue;
        long b = n % 4 == 3 ? 1 : 0;
        exps_[static_cast<size_t>(n)] =
            (exps_[static_cast<size_t>(n)] + a * b * (phi_ / 2)) % phi_;
      }
      return;
    }
    // mod 2^e, e >= 3: units are <-1> x <5>
    long half = m / 4;  // order of 5
    std::vector<long> t5(static_cast<size_t>(m), -1);
    long x = 1;
    for (long t = 0; t < half; ++t) {
      t5[static_cast<size_t>(x)] = t;
      x = static_cast<long>((__int128)x * 5 % m);
    }
    auto decompose = [&](long n) {
      long r = n % m;
      if (t5[static_cast<size_t>(r)] >= 0) return std::pair<long, long>(0, t5[static_cast<size_t>(r)]);
      return std::pair<long, long>(1, t5[static_cast<size_t>(m - r)]);
    };
    auto [sa, ta] = decompose(index_);
    for (long n = 0; n < q_; ++n) {
      if (exps_[static_cast<size_t>(n)] < 0) continue;
      auto [sn, tn] = decompose(n);
      long contrib = ((sa * sn) % 2) * (phi_ / 2) +
                     static_cast<long>((__int128)ta * tn % half) * (phi_ / half);
      exps_[static_cast<size_t>(n)] = (exps_[static_cast<size_t>(n)] + contrib) % phi_;
    }
  }

  // Smallest d | q such that chi(n) = 1 for every n == 1 (mod d) coprime to q.
  long compute_conductor() const {
    for (long d = 1; d <= q_; ++d) {
      if (q_ % d != 0) continue;
      bool trivial_on_kernel = true;
      for (long n = 1 + d; n < q_ && trivial_on_kernel; n += d)
        if (exps_[static_cast<size_t>(n)] > 0) trivial_on_kernel = false;
      if (trivial_on_kernel) return d;
    }
    return q_;
  }

  struct Cache {
    std::mutex mu;
    std::map<int, BigComplex> gauss;
  };

  long q_ = 0, index_ = 0, conductor_ = 0, phi_ = 0;
  int kappa_ = 0;
  std::vector<long> exps_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace lapprox
