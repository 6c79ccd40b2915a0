#pragma once

// Normal-ordered operator polynomials in x̂_j, p̂_j with [x̂_j, p̂_k] = i hbar delta_jk.
// Within each degree of freedom every x̂ sits left of every p̂.

#include <cstddef>
#include <map>

#include "bjq/polynomial.hpp"

namespace bjq {

class NormalOp {
 public:
  using Terms = std::map<Exponents, HCoeff>;

  explicit NormalOp(std::size_t n);
  NormalOp(std::size_t n, const HCoeff& scalar);

  static NormalOp identity(std::size_t n) { return NormalOp(n, HCoeff(1)); }
  static NormalOp x(std::size_t n, std::size_t j, unsigned power = 1);
  static NormalOp p(std::size_t n, std::size_t j, unsigned power = 1);
  /// c * x̂^alpha p̂^beta (already normal-ordered).
  static NormalOp monomial(const Exponents& e, const HCoeff& c = HCoeff(1));

  std::size_t dof() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// The identity coefficient when the operator is a multiple of Id.
  bool is_scalar() const;
  HCoeff scalar_part() const;
  unsigned max_dof_degree() const;

  void add_term(const Exponents& e, const HCoeff& c);
  NormalOp lift(std::size_t n) const;

  NormalOp& operator+=(const NormalOp& o);
  NormalOp& operator-=(const NormalOp& o);
  NormalOp& operator*=(const HCoeff& c);

  friend NormalOp operator+(NormalOp a, const NormalOp& b) { return a += b; }
  friend NormalOp operator-(NormalOp a, const NormalOp& b) { return a -= b; }
  friend NormalOp operator-(NormalOp a) { return a *= HCoeff(-1); }
  friend NormalOp operator*(NormalOp a, const HCoeff& c) { return a *= c; }
  friend NormalOp operator*(const HCoeff& c, NormalOp a) { return a *= c; }
  friend NormalOp operator*(const NormalOp& a, const NormalOp& b);
  friend bool operator==(const NormalOp&, const NormalOp&) = default;

 private:
  std::size_t n_;
  Terms terms_;
};

/// Normal-ordered expansion of p̂^a x̂^b for one degree of freedom:
/// sum_k k! C(a,k) C(b,k) (-i hbar)^k x̂^(b-k) p̂^(a-k).
NormalOp normal_reorder(unsigned a, unsigned b);

NormalOp op_mul(const NormalOp& a, const NormalOp& b);
NormalOp pow(const NormalOp& a, unsigned k);
NormalOp commutator(const NormalOp& a, const NormalOp& b);
/// Hermitian adjoint: conjugates coefficients and reverses operator words.
NormalOp adjoint(const NormalOp& a);

/// Product of operators acting on disjoint sets of degrees of freedom.
/// No reordering happens; overlapping support is a logic error.
NormalOp tensor_disjoint(const NormalOp& a, const NormalOp& b);

/// Polynomial in the ordering parameter tau with NormalOp coefficients.
class TauOp {
 public:
  using Coeffs = std::map<unsigned, NormalOp>;

  explicit TauOp(std::size_t n) : n_(n) {}
  TauOp(const NormalOp& constant);  // NOLINT(google-explicit-constructor)

  std::size_t dof() const { return n_; }
  const Coeffs& coeffs() const { return coeffs_; }
  unsigned degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  /// Adds tau^k * op.
  void add(unsigned k, const NormalOp& op);

  TauOp& operator+=(const TauOp& o);
  friend TauOp operator+(TauOp a, const TauOp& b) { return a += b; }
  /// (sum_k tau^k A_k)(sum_l tau^l B_l), operator product in written order.
  friend TauOp operator*(const TauOp& a, const TauOp& b);
  friend bool operator==(const TauOp&, const TauOp&) = default;

 private:
  std::size_t n_;
  Coeffs coeffs_;
};

NormalOp tau_eval(const TauOp& t, const Rational& tau);
/// Term-wise integral over tau in [0, 1].
NormalOp tau_integrate(const TauOp& t);

}  // namespace bjq
