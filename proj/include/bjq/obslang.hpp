#pragma once

// Input language for observables and operators.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*        division only by an integer literal
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Identifiers: i, hbar, x1..x9, p1..p9 (x, p alias x1, p1) for classical
// variables, X1..X9, P1..P9 (X, P) for operators, and the builtin names.
// Operator products keep their written order and are normal-ordered on
// evaluation. Multiplication is always explicit.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bjq/operator.hpp"
#include "bjq/polynomial.hpp"

namespace bjq {

/// Malformed input. column() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& what);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Well-formed input that cannot be evaluated as requested (wrong kind,
/// wrong degree-of-freedom count, result too large).
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExprKind { constant, classical, operator_ };

/// Kind of a parsed expression (constant when no variables occur).
ExprKind expression_kind(std::string_view text);

/// n = 0 infers the dof count from the highest variable index or builtin.
PhasePoly parse_classical(std::string_view text, std::size_t n = 0);
NormalOp parse_operator(std::string_view text, std::size_t n = 0);

std::string print_canonical(const PhasePoly& a);
std::string print_canonical(const NormalOp& a);

}  // namespace bjq
