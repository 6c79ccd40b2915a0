#include "bjq/quantize.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace bjq {

namespace {

Rational binomial_q(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

// p̂^(s-l) x̂^r p̂^l for dof j, normal-ordered and embedded in n dofs.
NormalOp sandwich(std::size_t n, std::size_t j, unsigned r, unsigned s, unsigned l) {
  NormalOp out(n);
  const NormalOp reordered = normal_reorder(s - l, r);
  for (const auto& [g, c] : reordered.terms()) {
    Exponents e(n);
    e.x(j) = g.x(0);
    e.p(j) = g.p(0) + l;
    out.add_term(e, c);
  }
  return out;
}

// Per-dof factor of op_tau with tau symbolic.
TauOp tau_factor(std::size_t n, std::size_t j, unsigned r, unsigned s) {
  TauOp out(n);
  for (unsigned l = 0; l <= s; ++l) {
    const NormalOp word = sandwich(n, j, r, s, l) * HCoeff(binomial_q(s, l));
    // (1 - tau)^l tau^(s-l) = sum_i C(l,i) (-1)^i tau^(s-l+i)
    for (unsigned i = 0; i <= l; ++i) {
      Rational w = binomial_q(l, i);
      if (i % 2) w = -w;
      out.add(s - l + i, word * HCoeff(w));
    }
  }
  return out;
}

TauOp tensor_disjoint(const TauOp& a, const TauOp& b) {
  TauOp out(a.dof());
  for (const auto& [ka, oa] : a.coeffs())
    for (const auto& [kb, ob] : b.coeffs()) out.add(ka + kb, tensor_disjoint(oa, ob));
  return out;
}

template <class PerDof>
NormalOp quantize_numeric(const PhasePoly& a, PerDof&& weight) {
  const std::size_t n = a.dof();
  NormalOp out(n);
  for (const auto& [e, c] : a.terms()) {
    NormalOp term(n, c);
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned r = e.x(j), s = e.p(j);
      NormalOp factor(n);
      for (unsigned l = 0; l <= s; ++l) factor += sandwich(n, j, r, s, l) * HCoeff(weight(s, l));
      term = tensor_disjoint(term, factor);
    }
    out += term;
  }
  return out;
}

}  // namespace

QuantRule QuantRule::parse(std::string_view text) {
  if (text == "weyl") return weyl();
  if (text == "bj") return bj();
  if (text.starts_with("tau:")) return tau(parse_rational(std::string(text.substr(4))));
  throw std::invalid_argument("unknown quantization rule '" + std::string(text) +
                              "' (expected weyl, bj or tau:<p/q>)");
}

std::string QuantRule::name() const {
  switch (kind_) {
    case Kind::weyl: return "weyl";
    case Kind::bj: return "bj";
    case Kind::tau: return "tau:" + tau_.get_str();
  }
  return {};
}

NormalOp op_tau(const PhasePoly& a, const Rational& tau) {
  const Rational one_minus = 1 - tau;
  return quantize_numeric(a, [&](unsigned s, unsigned l) {
    Rational w = binomial_q(s, l);
    for (unsigned i = 0; i < l; ++i) w *= one_minus;
    for (unsigned i = 0; i < s - l; ++i) w *= tau;
    return w;
  });
}

TauOp op_tau(const PhasePoly& a) {
  const std::size_t n = a.dof();
  TauOp out(n);
  for (const auto& [e, c] : a.terms()) {
    TauOp term(NormalOp(n, c));
    for (std::size_t j = 0; j < n; ++j) term = tensor_disjoint(term, tau_factor(n, j, e.x(j), e.p(j)));
    out += term;
  }
  return out;
}

NormalOp op_weyl(const PhasePoly& a) {
  return quantize_numeric(a, [](unsigned s, unsigned l) {
    Rational w = binomial_q(s, l);
    w /= Rational(mpz_class(1) << s);
    return w;
  });
}

NormalOp op_bj(const PhasePoly& a) { return tau_integrate(op_tau(a)); }

NormalOp quantize(const PhasePoly& a, const QuantRule& rule) {
  switch (rule.kind()) {
    case QuantRule::Kind::weyl: return op_weyl(a);
    case QuantRule::Kind::bj: return op_bj(a);
    case QuantRule::Kind::tau: return op_tau(a, rule.tau_value());
  }
  throw std::logic_error("unhandled quantization rule");
}

NormalOp rule_diff(const PhasePoly& a, const QuantRule& r1, const QuantRule& r2) {
  return quantize(a, r1) - quantize(a, r2);
}

PhasePoly dequantize_weyl(const NormalOp& a) {
  const std::size_t n = a.dof();
  const HCoeff half_i_hbar = HCoeff(GaussRational(0, Rational(1, 2)), 1);
  PhasePoly symbol(n);
  for (const auto& [e, c] : a.terms()) {
    // Symbol of p̂^b is p^b; left multiplication by x̂_j acts as x_j + (i hbar/2) d/dp_j.
    Exponents pb(n);
    for (std::size_t j = 0; j < n; ++j) pb.p(j) = e.p(j);
    PhasePoly s = PhasePoly::monomial(pb, c);
    for (std::size_t j = 0; j < n; ++j)
      for (unsigned k = 0; k < e.x(j); ++k) s = PhasePoly::x(n, j) * s + half_i_hbar * diff_p(s, j);
    symbol += s;
  }
  if (op_weyl(symbol) != a) throw std::logic_error("Weyl symbol round trip failed");
  return symbol;
}

PhasePoly bj_weyl_symbol(const PhasePoly& a) { return dequantize_weyl(op_bj(a)); }

// --- builtin catalog ---

namespace {

constexpr std::array<std::string_view, 10> kNames = {"l1",   "l2",   "l3",     "lsq", "Lop1",
                                                    "Lop2", "Lop3", "Lsq_op", "ho",  "cross12"};

// l_i = x_a p_b - x_b p_a with (a, b) cycling through (2,3), (3,1), (1,2).
constexpr std::array<std::array<std::size_t, 2>, 3> kAngularPairs = {{{1, 2}, {2, 0}, {0, 1}}};

PhasePoly angular_component(std::size_t i) {
  const auto [a, b] = kAngularPairs[i];
  return PhasePoly::x(3, a) * PhasePoly::p(3, b) - PhasePoly::x(3, b) * PhasePoly::p(3, a);
}

NormalOp angular_operator(std::size_t i) {
  const auto [a, b] = kAngularPairs[i];
  return NormalOp::x(3, a) * NormalOp::p(3, b) - NormalOp::x(3, b) * NormalOp::p(3, a);
}

}  // namespace

std::span<const std::string_view> builtin_names() { return kNames; }

bool is_builtin(std::string_view name) {
  for (std::string_view known : kNames)
    if (known == name) return true;
  return false;
}

bool builtin_is_operator(std::string_view name) {
  if (!is_builtin(name)) throw UnknownBuiltin("unknown builtin '" + std::string(name) + "'");
  return name.starts_with("L");
}

std::size_t builtin_dof(std::string_view name) {
  if (!is_builtin(name)) throw UnknownBuiltin("unknown builtin '" + std::string(name) + "'");
  if (name == "ho") return 1;
  if (name == "cross12") return 2;
  return 3;
}

Observable builtin(std::string_view name, std::size_t n) {
  const std::size_t natural = builtin_dof(name);
  if (n == 0) n = natural;
  const bool angular = natural == 3;
  if (angular && n != 3)
    throw DimensionError("'" + std::string(name) + "' is defined for n = 3 only");
  if (n < natural)
    throw DimensionError("'" + std::string(name) + "' needs at least " + std::to_string(natural) +
                         " degrees of freedom");

  if (name.size() == 2 && name[0] == 'l') return angular_component(name[1] - '1');
  if (name.starts_with("Lop")) return angular_operator(name[3] - '1');
  if (name == "lsq") {
    PhasePoly out(3);
    for (std::size_t i = 0; i < 3; ++i) out += pow(angular_component(i), 2);
    return out;
  }
  if (name == "Lsq_op") {
    NormalOp out(3);
    for (std::size_t i = 0; i < 3; ++i) out += pow(angular_operator(i), 2);
    return out;
  }
  if (name == "ho") {
    PhasePoly out(n);
    for (std::size_t j = 0; j < n; ++j)
      out += (pow(PhasePoly::p(n, j), 2) + pow(PhasePoly::x(n, j), 2)) * HCoeff(Rational(1, 2));
    return out;
  }
  // cross12
  return PhasePoly::x(n, 0) * PhasePoly::p(n, 0) * PhasePoly::x(n, 1) * PhasePoly::p(n, 1) *
         HCoeff(2);
}

}  // namespace bjq
