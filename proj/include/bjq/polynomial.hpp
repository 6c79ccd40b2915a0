#pragma once

// Commutative phase-space polynomials a(x, p) over n degrees of freedom.

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "bjq/scalar.hpp"

namespace bjq {

/// Raised whenever two values with different degree-of-freedom counts meet.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multi-index (alpha, beta): x-powers of dofs 1..n followed by p-powers of dofs 1..n.
class Exponents {
 public:
  Exponents() = default;
  explicit Exponents(std::size_t n) : e_(2 * n, 0) {}
  Exponents(std::vector<unsigned> x_powers, const std::vector<unsigned>& p_powers);

  std::size_t dof() const { return e_.size() / 2; }
  unsigned x(std::size_t j) const { return e_[j]; }
  unsigned p(std::size_t j) const { return e_[dof() + j]; }
  unsigned& x(std::size_t j) { return e_[j]; }
  unsigned& p(std::size_t j) { return e_[dof() + j]; }

  unsigned total_degree() const;
  unsigned total_p_degree() const;
  /// max over dofs of x(j) + p(j)
  unsigned max_dof_degree() const;
  std::span<const unsigned> raw() const { return e_; }

  friend Exponents operator+(const Exponents& a, const Exponents& b);
  friend auto operator<=>(const Exponents&, const Exponents&) = default;
  friend bool operator==(const Exponents&, const Exponents&) = default;

 private:
  std::vector<unsigned> e_;
};

/// Sort order used for printing: total degree descending, then the raw
/// (x1..xn, p1..pn) sequence lexicographically descending.
bool graded_before(const Exponents& a, const Exponents& b);

namespace detail {
template <class Map>
void accumulate(Map& terms, const typename Map::key_type& key, const HCoeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}
}  // namespace detail

class PhasePoly {
 public:
  using Terms = std::map<Exponents, HCoeff>;

  explicit PhasePoly(std::size_t n);
  PhasePoly(std::size_t n, const HCoeff& constant);

  static PhasePoly x(std::size_t n, std::size_t j);
  static PhasePoly p(std::size_t n, std::size_t j);
  static PhasePoly monomial(const Exponents& e, const HCoeff& c = HCoeff(1));

  std::size_t dof() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  /// Largest x(j)+p(j) over all terms and dofs.
  unsigned max_dof_degree() const;

  void add_term(const Exponents& e, const HCoeff& c);
  /// Same polynomial embedded in more degrees of freedom.
  PhasePoly lift(std::size_t n) const;

  PhasePoly& operator+=(const PhasePoly& o);
  PhasePoly& operator-=(const PhasePoly& o);
  PhasePoly& operator*=(const HCoeff& c);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator-(PhasePoly a) { return a *= HCoeff(-1); }
  friend PhasePoly operator*(PhasePoly a, const HCoeff& c) { return a *= c; }
  friend PhasePoly operator*(const HCoeff& c, PhasePoly a) { return a *= c; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend bool operator==(const PhasePoly&, const PhasePoly&) = default;

  /// a(x, p) with hbar substituted numerically.
  std::complex<double> evaluate(std::span<const double> x, std::span<const double> p,
                                double hbar) const;

 private:
  std::size_t n_;
  Terms terms_;
};

PhasePoly poly_mul(const PhasePoly& a, const PhasePoly& b);
PhasePoly pow(const PhasePoly& a, unsigned k);

/// d/dx_j or d/dp_j of a polynomial.
PhasePoly diff_x(const PhasePoly& a, std::size_t j);
PhasePoly diff_p(const PhasePoly& a, std::size_t j);

}  // namespace bjq
