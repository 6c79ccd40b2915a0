#include "bjq/operator.hpp"

#include <algorithm>
#include <vector>

namespace bjq {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// One way of contracting p̂^b x̂^c inside a single degree of freedom.
struct Contraction {
  unsigned k;
  mpz_class weight;  // k! C(b,k) C(c,k)
};

std::vector<Contraction> contractions(unsigned b, unsigned c) {
  std::vector<Contraction> out;
  for (unsigned k = 0; k <= std::min(b, c); ++k)
    out.push_back({k, factorial(k) * binomial(b, k) * binomial(c, k)});
  return out;
}

}  // namespace

NormalOp::NormalOp(std::size_t n) : n_(n) {
  if (n == 0) throw DimensionError("degree-of-freedom count must be positive");
}

NormalOp::NormalOp(std::size_t n, const HCoeff& scalar) : NormalOp(n) {
  add_term(Exponents(n), scalar);
}

NormalOp NormalOp::x(std::size_t n, std::size_t j, unsigned power) {
  if (j >= n) throw DimensionError("operator index out of range");
  Exponents e(n);
  e.x(j) = power;
  return monomial(e);
}

NormalOp NormalOp::p(std::size_t n, std::size_t j, unsigned power) {
  if (j >= n) throw DimensionError("operator index out of range");
  Exponents e(n);
  e.p(j) = power;
  return monomial(e);
}

NormalOp NormalOp::monomial(const Exponents& e, const HCoeff& c) {
  NormalOp out(e.dof());
  out.add_term(e, c);
  return out;
}

bool NormalOp::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

HCoeff NormalOp::scalar_part() const {
  auto it = terms_.find(Exponents(n_));
  return it == terms_.end() ? HCoeff{} : it->second;
}

unsigned NormalOp::max_dof_degree() const {
  unsigned m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, e.max_dof_degree());
  return m;
}

void NormalOp::add_term(const Exponents& e, const HCoeff& c) {
  if (e.dof() != n_) throw DimensionError("term has wrong number of degrees of freedom");
  detail::accumulate(terms_, e, c);
}

NormalOp NormalOp::lift(std::size_t n) const {
  if (n < n_) throw DimensionError("cannot lift to fewer degrees of freedom");
  NormalOp out(n);
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

NormalOp& NormalOp::operator+=(const NormalOp& o) {
  if (o.n_ != n_) throw DimensionError("NormalOp dimension mismatch");
  for (const auto& [e, c] : o.terms_) detail::accumulate(terms_, e, c);
  return *this;
}

NormalOp& NormalOp::operator-=(const NormalOp& o) {
  if (o.n_ != n_) throw DimensionError("NormalOp dimension mismatch");
  for (const auto& [e, c] : o.terms_) detail::accumulate(terms_, e, -c);
  return *this;
}

NormalOp& NormalOp::operator*=(const HCoeff& c) {
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

NormalOp operator*(const NormalOp& a, const NormalOp& b) { return op_mul(a, b); }

NormalOp normal_reorder(unsigned a, unsigned b) {
  NormalOp out(1);
  for (const auto& [k, w] : contractions(a, b)) {
    Exponents e(1);
    e.x(0) = b - k;
    e.p(0) = a - k;
    out.add_term(e, HCoeff(GaussRational(Rational(w)) * minus_i_pow(k), k));
  }
  return out;
}

NormalOp op_mul(const NormalOp& a, const NormalOp& b) {
  if (a.dof() != b.dof()) throw DimensionError("NormalOp dimension mismatch");
  const std::size_t n = a.dof();
  NormalOp out(n);
  std::vector<std::vector<Contraction>> options(n);
  std::vector<std::size_t> pick(n);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      const HCoeff c = ca * cb;
      // (x^a1 p^b1)(x^a2 p^b2): move p^b1 through x^a2 in every dof.
      for (std::size_t j = 0; j < n; ++j) options[j] = contractions(ea.p(j), eb.x(j));
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        Exponents e(n);
        unsigned k_total = 0;
        mpz_class weight = 1;
        for (std::size_t j = 0; j < n; ++j) {
          const Contraction& ct = options[j][pick[j]];
          e.x(j) = ea.x(j) + eb.x(j) - ct.k;
          e.p(j) = ea.p(j) + eb.p(j) - ct.k;
          k_total += ct.k;
          weight *= ct.weight;
        }
        out.add_term(e, c * HCoeff(GaussRational(Rational(weight)) * minus_i_pow(k_total), k_total));
        std::size_t j = 0;
        while (j < n && ++pick[j] == options[j].size()) pick[j++] = 0;
        if (j == n) break;
      }
    }
  }
  return out;
}

NormalOp pow(const NormalOp& a, unsigned k) {
  NormalOp out = NormalOp::identity(a.dof());
  for (unsigned i = 0; i < k; ++i) out = op_mul(out, a);
  return out;
}

NormalOp commutator(const NormalOp& a, const NormalOp& b) { return op_mul(a, b) - op_mul(b, a); }

NormalOp tensor_disjoint(const NormalOp& a, const NormalOp& b) {
  if (a.dof() != b.dof()) throw DimensionError("NormalOp dimension mismatch");
  NormalOp out(a.dof());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out.add_term(ea + eb, ca * cb);
  return out;
}

NormalOp adjoint(const NormalOp& a) {
  const std::size_t n = a.dof();
  NormalOp out(n);
  for (const auto& [e, c] : a.terms()) {
    // (x^a p^b)^dagger = p^b x^a in every dof; dofs commute.
    NormalOp term(n, c.conj());
    for (std::size_t j = 0; j < n; ++j) {
      if (e.x(j) == 0 || e.p(j) == 0) {
        Exponents f(n);
        f.x(j) = e.x(j);
        f.p(j) = e.p(j);
        term = tensor_disjoint(term, NormalOp::monomial(f));
        continue;
      }
      NormalOp embedded(n);
      const NormalOp reordered = normal_reorder(e.p(j), e.x(j));
      for (const auto& [g, gc] : reordered.terms()) {
        Exponents f(n);
        f.x(j) = g.x(0);
        f.p(j) = g.p(0);
        embedded.add_term(f, gc);
      }
      term = tensor_disjoint(term, embedded);
    }
    out += term;
  }
  return out;
}

TauOp::TauOp(const NormalOp& constant) : n_(constant.dof()) { add(0, constant); }

void TauOp::add(unsigned k, const NormalOp& op) {
  if (op.dof() != n_) throw DimensionError("TauOp dimension mismatch");
  if (op.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(k, op);
  if (inserted) return;
  it->second += op;
  if (it->second.is_zero()) coeffs_.erase(it);
}

TauOp& TauOp::operator+=(const TauOp& o) {
  if (o.n_ != n_) throw DimensionError("TauOp dimension mismatch");
  for (const auto& [k, op] : o.coeffs_) add(k, op);
  return *this;
}

TauOp operator*(const TauOp& a, const TauOp& b) {
  if (a.n_ != b.n_) throw DimensionError("TauOp dimension mismatch");
  TauOp out(a.n_);
  for (const auto& [ka, oa] : a.coeffs_)
    for (const auto& [kb, ob] : b.coeffs_) out.add(ka + kb, op_mul(oa, ob));
  return out;
}

NormalOp tau_eval(const TauOp& t, const Rational& tau) {
  NormalOp out(t.dof());
  for (const auto& [k, op] : t.coeffs()) {
    Rational tk = 1;
    for (unsigned i = 0; i < k; ++i) tk *= tau;
    out += op * HCoeff(tk);
  }
  return out;
}

NormalOp tau_integrate(const TauOp& t) {
  NormalOp out(t.dof());
  for (const auto& [k, op] : t.coeffs()) out += op * HCoeff(make_rational(1, static_cast<long>(k) + 1));
  return out;
}

}  // namespace bjq
