#include "bjq/scalar.hpp"

#include <sstream>
#include <stdexcept>

namespace bjq {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto valid_int = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRational minus_i_pow(unsigned k) {
  switch (k % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

HCoeff::HCoeff(const Rational& r) {
  if (sgn(r) != 0) terms_.emplace(0u, GaussRational(r));
}

HCoeff::HCoeff(const GaussRational& g, unsigned hbar_power) {
  if (!g.is_zero()) terms_.emplace(hbar_power, g);
}

bool HCoeff::is_real() const {
  for (const auto& [k, g] : terms_)
    if (sgn(g.im) != 0) return false;
  return true;
}

bool HCoeff::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 &&
         terms_.begin()->second == GaussRational(1);
}

GaussRational HCoeff::at(unsigned k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussRational{} : it->second;
}

void HCoeff::add(unsigned k, const GaussRational& g) {
  if (g.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, g);
  if (inserted) return;
  it->second += g;
  if (it->second.is_zero()) terms_.erase(it);
}

HCoeff HCoeff::conj() const {
  HCoeff out;
  for (const auto& [k, g] : terms_) out.terms_.emplace(k, g.conj());
  return out;
}

std::complex<double> HCoeff::evaluate(double hbar) const {
  std::complex<double> sum = 0.0;
  for (const auto& [k, g] : terms_) {
    double hk = 1.0;
    for (unsigned j = 0; j < k; ++j) hk *= hbar;
    sum += std::complex<double>(g.re.get_d(), g.im.get_d()) * hk;
  }
  return sum;
}

HCoeff& HCoeff::operator+=(const HCoeff& o) {
  for (const auto& [k, g] : o.terms_) add(k, g);
  return *this;
}

HCoeff& HCoeff::operator-=(const HCoeff& o) {
  for (const auto& [k, g] : o.terms_) add(k, -g);
  return *this;
}

HCoeff& HCoeff::operator*=(const HCoeff& o) {
  HCoeff out;
  for (const auto& [ka, ga] : terms_)
    for (const auto& [kb, gb] : o.terms_) out.add(ka + kb, ga * gb);
  *this = std::move(out);
  return *this;
}

HCoeff& HCoeff::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, g] : terms_) {
    g.re *= r;
    g.im *= r;
  }
  return *this;
}

std::string to_string(const HCoeff& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, g] : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << g.re.get_str() << (sgn(g.im) < 0 ? " - " : " + ") << Rational(abs(g.im)).get_str() << "i)";
    if (k > 0) os << "*hbar^" << k;
  }
  return os.str();
}

}  // namespace bjq
