#include "bjq/polynomial.hpp"

#include <algorithm>
#include <string>

namespace bjq {

Exponents::Exponents(std::vector<unsigned> x_powers, const std::vector<unsigned>& p_powers)
    : e_(std::move(x_powers)) {
  if (e_.size() != p_powers.size()) throw DimensionError("x and p multi-indices differ in length");
  e_.insert(e_.end(), p_powers.begin(), p_powers.end());
}

unsigned Exponents::total_degree() const {
  unsigned s = 0;
  for (unsigned v : e_) s += v;
  return s;
}

unsigned Exponents::total_p_degree() const {
  unsigned s = 0;
  for (std::size_t j = 0; j < dof(); ++j) s += p(j);
  return s;
}

unsigned Exponents::max_dof_degree() const {
  unsigned m = 0;
  for (std::size_t j = 0; j < dof(); ++j) m = std::max(m, x(j) + p(j));
  return m;
}

Exponents operator+(const Exponents& a, const Exponents& b) {
  if (a.e_.size() != b.e_.size()) throw DimensionError("multi-index length mismatch");
  Exponents out = a;
  for (std::size_t i = 0; i < out.e_.size(); ++i) out.e_[i] += b.e_[i];
  return out;
}

bool graded_before(const Exponents& a, const Exponents& b) {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.raw().begin(), b.raw().end(), a.raw().begin(),
                                      a.raw().end());
}

PhasePoly::PhasePoly(std::size_t n) : n_(n) {
  if (n == 0) throw DimensionError("degree-of-freedom count must be positive");
}

PhasePoly::PhasePoly(std::size_t n, const HCoeff& constant) : PhasePoly(n) {
  add_term(Exponents(n), constant);
}

PhasePoly PhasePoly::x(std::size_t n, std::size_t j) {
  if (j >= n) throw DimensionError("variable index out of range");
  Exponents e(n);
  e.x(j) = 1;
  return monomial(e);
}

PhasePoly PhasePoly::p(std::size_t n, std::size_t j) {
  if (j >= n) throw DimensionError("variable index out of range");
  Exponents e(n);
  e.p(j) = 1;
  return monomial(e);
}

PhasePoly PhasePoly::monomial(const Exponents& e, const HCoeff& c) {
  PhasePoly out(e.dof());
  out.add_term(e, c);
  return out;
}

bool PhasePoly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

unsigned PhasePoly::max_dof_degree() const {
  unsigned m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.max_dof_degree());
  return m;
}

void PhasePoly::add_term(const Exponents& e, const HCoeff& c) {
  if (e.dof() != n_) throw DimensionError("term has wrong number of degrees of freedom");
  detail::accumulate(terms_, e, c);
}

PhasePoly PhasePoly::lift(std::size_t n) const {
  if (n < n_) throw DimensionError("cannot lift to fewer degrees of freedom");
  PhasePoly out(n);
  for (const auto& [e, c] : terms_) {
    Exponents f(n);
    for (std::size_t j = 0; j < n_; ++j) {
      f.x(j) = e.x(j);
      f.p(j) = e.p(j);
    }
    out.add_term(f, c);
  }
  return out;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
  if (o.n_ != n_) throw DimensionError("PhasePoly dimension mismatch");
  for (const auto& [e, c] : o.terms_) detail::accumulate(terms_, e, c);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
  if (o.n_ != n_) throw DimensionError("PhasePoly dimension mismatch");
  for (const auto& [e, c] : o.terms_) detail::accumulate(terms_, e, -c);
  return *this;
}

PhasePoly& PhasePoly::operator*=(const HCoeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) { return poly_mul(a, b); }

PhasePoly poly_mul(const PhasePoly& a, const PhasePoly& b) {
  if (a.dof() != b.dof()) throw DimensionError("PhasePoly dimension mismatch");
  PhasePoly out(a.dof());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out.add_term(ea + eb, ca * cb);
  return out;
}

PhasePoly pow(const PhasePoly& a, unsigned k) {
  PhasePoly out(a.dof(), HCoeff(1));
  for (unsigned i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

PhasePoly diff_x(const PhasePoly& a, std::size_t j) {
  PhasePoly out(a.dof());
  for (const auto& [e, c] : a.terms()) {
    if (e.x(j) == 0) continue;
    Exponents f = e;
    f.x(j) -= 1;
    out.add_term(f, c * HCoeff(static_cast<long>(e.x(j))));
  }
  return out;
}

PhasePoly diff_p(const PhasePoly& a, std::size_t j) {
  PhasePoly out(a.dof());
  for (const auto& [e, c] : a.terms()) {
    if (e.p(j) == 0) continue;
    Exponents f = e;
    f.p(j) -= 1;
    out.add_term(f, c * HCoeff(static_cast<long>(e.p(j))));
  }
  return out;
}

std::complex<double> PhasePoly::evaluate(std::span<const double> x, std::span<const double> p,
                                         double hbar) const {
  if (x.size() != n_ || p.size() != n_) throw DimensionError("evaluation point has wrong dimension");
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      for (unsigned k = 0; k < e.x(j); ++k) m *= x[j];
      for (unsigned k = 0; k < e.p(j); ++k) m *= p[j];
    }
    sum += c.evaluate(hbar) * m;
  }
  return sum;
}

}  // namespace bjq
