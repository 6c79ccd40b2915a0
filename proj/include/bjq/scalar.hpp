#pragma once

// Exact scalars: rationals, Gaussian rationals, and polynomials in hbar.

#include <complex>
#include <map>
#include <string>

#include <gmpxx.h>

namespace bjq {

using Rational = mpq_class;

/// Canonical rational num/den. Throws std::domain_error on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p", "-p" or "p/q" (q > 0).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

/// a + b i with a, b exact rationals.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// (-i)^k, exactly.
GaussRational minus_i_pow(unsigned k);

/// Polynomial in hbar with Gaussian-rational coefficients, stored sparsely:
/// no zero coefficient is ever kept, so structural equality is value equality.
class HCoeff {
 public:
  using Terms = std::map<unsigned, GaussRational>;

  HCoeff() = default;
  HCoeff(const Rational& r);  // NOLINT(google-explicit-constructor)
  HCoeff(long r) : HCoeff(Rational(r)) {}  // NOLINT(google-explicit-constructor)
  HCoeff(const GaussRational& g, unsigned hbar_power = 0);

  static HCoeff i() { return HCoeff(GaussRational(0, 1)); }
  static HCoeff hbar(unsigned power = 1) { return HCoeff(GaussRational(1), power); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// True when the value is exactly 1.
  bool is_one() const;
  /// Coefficient of hbar^k (zero when absent).
  GaussRational at(unsigned k) const;
  unsigned max_hbar_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  unsigned min_hbar_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  HCoeff conj() const;
  std::complex<double> evaluate(double hbar) const;

  HCoeff& operator+=(const HCoeff& o);
  HCoeff& operator-=(const HCoeff& o);
  HCoeff& operator*=(const HCoeff& o);
  HCoeff& operator*=(const Rational& r);

  friend HCoeff operator+(HCoeff a, const HCoeff& b) { return a += b; }
  friend HCoeff operator-(HCoeff a, const HCoeff& b) { return a -= b; }
  friend HCoeff operator*(HCoeff a, const HCoeff& b) { return a *= b; }
  friend HCoeff operator-(HCoeff a) {
    for (auto& [k, g] : a.terms_) g = -g;
    return a;
  }
  friend bool operator==(const HCoeff& a, const HCoeff& b) { return a.terms_ == b.terms_; }

  /// Adds g * hbar^k in place.
  void add(unsigned k, const GaussRational& g);

 private:
  Terms terms_;
};

std::string to_string(const HCoeff& c);

}  // namespace bjq
