#pragma once

#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

#include "lapprox/bigcomplex.hpp"

namespace lapprox {

// Decimal scientific string with an explicit significant-digit count.
// Deterministic for identical inputs; never emits raw binary floats.
inline std::string to_decimal(const BigFloat& x, int sig_digits) {
  if (sig_digits < 2) sig_digits = 2;
  if (sig_digits > 200) sig_digits = 200;
  if (!x.is_finite()) throw domain_error("to_decimal on non-finite value");
  std::vector<char> buf(static_cast<size_t>(sig_digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", sig_digits - 1, x.raw());
  return std::string(buf.data());
}

// Significant digits justified by an absolute error estimate.
inline int sig_digits_from_err(const BigFloat& value, const BigFloat& err) {
  if (value.is_zero()) return 2;
  long verr = err.is_zero() ? -(static_cast<long>(value.precision().work())) + value.mag_exp()
                            : err.mag_exp();
  long good_bits = value.mag_exp() - verr;
  int digits = static_cast<int>(static_cast<double>(good_bits) * 0.30103);
  if (digits < 2) digits = 2;
  if (digits > 100) digits = 100;
  return digits;
}

namespace detail {

// One real token: decimal ("1.25", "-3e-2") or rational ("1/2").
inline BigFloat parse_real_token(const std::string& tok, Precision p) {
  auto slash = tok.find('/');
  if (slash != std::string::npos) {
    BigFloat num = BigFloat::from_string(tok.substr(0, slash), p);
    BigFloat den = BigFloat::from_string(tok.substr(slash + 1), p);
    if (den.is_zero()) throw parse_error("zero denominator in '" + tok + "'");
    return num / den;
  }
  return BigFloat::from_string(tok, p);
}

}  // namespace detail

// Complex inputs in either "re,im" form or expression form "1/2+8i",
// "0.3-2e-1i", "3", "2i", "-i".
inline BigComplex parse_complex(const std::string& raw, Precision p) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw parse_error("empty complex literal");

  auto comma = s.find(',');
  if (comma != std::string::npos) {
    return BigComplex(detail::parse_real_token(s.substr(0, comma), p),
                      detail::parse_real_token(s.substr(comma + 1), p));
  }

  // split at the last top-level +/- that is not an exponent sign
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] != '+' && s[i] != '-') continue;
    char prev = s[i - 1];
    if (prev == 'e' || prev == 'E' || prev == '+' || prev == '-' || prev == '/') continue;
    split = i;
  }
  auto parse_imag_coeff = [&](std::string t) {
    // strip the trailing 'i'; bare "i" and signed "i" mean 1
    t.pop_back();
    if (t.empty() || t == "+") return BigFloat(1L, p);
    if (t == "-") return BigFloat(-1L, p);
    return detail::parse_real_token(t, p);
  };
  if (s.back() == 'i' || s.back() == 'I') {
    if (split == std::string::npos) return BigComplex(BigFloat(p), parse_imag_coeff(s));
    return BigComplex(detail::parse_real_token(s.substr(0, split), p),
                      parse_imag_coeff(s.substr(split)));
  }
  if (split != std::string::npos && (s.substr(split).back() == 'i'))
    throw parse_error("malformed complex literal '" + raw + "'");
  return BigComplex(detail::parse_real_token(s, p));
}

inline std::string format_complex(const BigComplex& z, int sig_digits) {
  std::string im = to_decimal(z.imag(), sig_digits);
  std::string sign = z.imag().sign() < 0 ? "" : "+";
  return to_decimal(z.real(), sig_digits) + sign + im + "i";
}

}  // namespace lapprox
