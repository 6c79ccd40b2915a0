#pragma once

// Weyl, tau-ordered and Born-Jordan quantization of polynomial observables,
// and the Weyl symbol calculus that inverts Weyl quantization.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "bjq/operator.hpp"
#include "bjq/polynomial.hpp"

namespace bjq {

/// Selects a quantization map: weyl, bj, or tau(t) for an exact rational t.
class QuantRule {
 public:
  enum class Kind { weyl, bj, tau };

  static QuantRule weyl() { return QuantRule(Kind::weyl, Rational(1, 2)); }
  static QuantRule bj() { return QuantRule(Kind::bj, 0); }
  static QuantRule tau(const Rational& t) { return QuantRule(Kind::tau, t); }
  /// "weyl", "bj", or "tau:<p/q>". Throws std::invalid_argument.
  static QuantRule parse(std::string_view text);

  Kind kind() const { return kind_; }
  const Rational& tau_value() const { return tau_; }
  std::string name() const;

  friend bool operator==(const QuantRule& a, const QuantRule& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::tau || a.tau_ == b.tau_);
  }

 private:
  QuantRule(Kind k, Rational t) : kind_(k), tau_(std::move(t)) {}
  Kind kind_;
  Rational tau_;
};

/// tau-ordered quantization with one tau shared by all degrees of freedom.
/// On x^r p^s (per dof): sum_l C(s,l) (1-tau)^l tau^(s-l) p̂^(s-l) x̂^r p̂^l.
NormalOp op_tau(const PhasePoly& a, const Rational& tau);
/// Same map with tau kept symbolic.
TauOp op_tau(const PhasePoly& a);

/// McCoy form: 2^-s sum_l C(s,l) p̂^(s-l) x̂^r p̂^l per dof, tensored over dofs.
NormalOp op_weyl(const PhasePoly& a);

/// Average of op_tau over tau in [0, 1].
NormalOp op_bj(const PhasePoly& a);

NormalOp quantize(const PhasePoly& a, const QuantRule& rule);

/// op_{r1}(a) - op_{r2}(a).
NormalOp rule_diff(const PhasePoly& a, const QuantRule& r1, const QuantRule& r2);

/// Weyl symbol of a normal-ordered operator. The result is checked against
/// op_weyl before returning; a mismatch throws std::logic_error.
PhasePoly dequantize_weyl(const NormalOp& a);

/// Weyl symbol of the Born-Jordan operator of a.
PhasePoly bj_weyl_symbol(const PhasePoly& a);

// Catalog of named observables.

using Observable = std::variant<PhasePoly, NormalOp>;

class UnknownBuiltin : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::span<const std::string_view> builtin_names();
bool is_builtin(std::string_view name);
bool builtin_is_operator(std::string_view name);
/// Smallest dof count the observable lives in.
std::size_t builtin_dof(std::string_view name);
/// Catalog value over n dofs (n = 0 selects builtin_dof(name)). Angular
/// momentum entries exist only for n = 3; cross12 needs n >= 2.
Observable builtin(std::string_view name, std::size_t n = 0);

}  // namespace bjq
