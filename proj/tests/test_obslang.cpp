#include <doctest.h>

#include "bjq/obslang.hpp"
#include "bjq/quantize.hpp"
#include "support/random.hpp"

using namespace bjq;

namespace {

std::size_t error_column(const char* text) {
  try {
    parse_classical(text);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

/// Parses as classical or operator; true if a structured error came back.
bool structured_failure(const std::string& text) {
  try {
    if (expression_kind(text) == ExprKind::operator_)
      (void)parse_operator(text);
    else
      (void)parse_classical(text);
    return false;
  } catch (const ParseError&) {
    return true;
  } catch (const SemanticError&) {
    return true;
  } catch (const DimensionError&) {
    return true;
  }
}

}  // namespace

TEST_CASE("classical parsing") {
  const PhasePoly a = parse_classical("x^2*p^2");
  CHECK(a == PhasePoly::monomial(Exponents({2}, {2})));
  CHECK(parse_classical("lsq").terms().size() == 9);
  CHECK(parse_classical("lsq").dof() == 3);
  CHECK(parse_classical("x1*p2 - x2*p1", 3) == std::get<PhasePoly>(builtin("l3")));
  CHECK(parse_classical("x1*p2 - x2*p1").dof() == 2);
  CHECK(parse_classical("3/4*x").terms().begin()->second == HCoeff(make_rational(3, 4)));
  CHECK(parse_classical("x/2 - -x") == parse_classical("3/2*x"));
  CHECK(parse_classical("(x + p)^2") == parse_classical("x^2 + 2*x*p + p^2"));
  CHECK(parse_classical("-x^2") == parse_classical("-(x^2)"));
  CHECK(parse_classical("2^3") == parse_classical("8"));
  CHECK(parse_classical("x^0") == parse_classical("1"));
  CHECK(parse_classical("i*i") == parse_classical("-1"));
  CHECK(parse_classical("1 - 1").is_zero());
  CHECK(parse_classical("p*x") == parse_classical("x*p"));
  CHECK(parse_classical("x", 4).dof() == 4);
  CHECK(parse_classical("ho") == std::get<PhasePoly>(builtin("ho", 1)));
}

TEST_CASE("operator parsing keeps written order") {
  CHECK(parse_operator("X*P - P*X") == parse_operator("i*hbar"));
  CHECK(parse_operator("1/2*(X*P + P*X)") == parse_operator("X*P - i*hbar/2"));
  CHECK(parse_operator("P*X") == parse_operator("X*P - i*hbar"));
  CHECK(parse_operator("P*X") != parse_operator("X*P"));
  CHECK(parse_operator("X^2") == NormalOp::x(1, 0, 2));
  CHECK(parse_operator("Lsq_op") == std::get<NormalOp>(builtin("Lsq_op")));
  CHECK(parse_operator("P2*X2 - X2*P2", 2) == NormalOp(2, -HCoeff::i() * HCoeff::hbar()));
  CHECK(parse_operator("(P*X)^2") == parse_operator("P*X*P*X"));
}

TEST_CASE("expression kinds") {
  CHECK(expression_kind("1/2*hbar") == ExprKind::constant);
  CHECK(expression_kind("x + 1") == ExprKind::classical);
  CHECK(expression_kind("P") == ExprKind::operator_);
  CHECK(expression_kind("Lsq_op") == ExprKind::operator_);
  CHECK(expression_kind("cross12") == ExprKind::classical);
  CHECK(parse_operator("3*hbar") == NormalOp(1, HCoeff(3) * HCoeff::hbar()));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_classical("x*X"), ParseError);
  CHECK_THROWS_AS(parse_classical("x*Lsq_op"), ParseError);
  CHECK_THROWS_AS(parse_classical("x^p"), ParseError);
  CHECK_THROWS_AS(parse_classical("x^-1"), ParseError);
  CHECK_THROWS_AS(parse_classical("x^(2)"), ParseError);
  CHECK_THROWS_AS(parse_classical("x^2^3"), ParseError);
  CHECK_THROWS_AS(parse_classical("x^65"), ParseError);
  CHECK_THROWS_AS(parse_classical("foo"), ParseError);
  CHECK_THROWS_AS(parse_classical("x p"), ParseError);
  CHECK_THROWS_AS(parse_classical("2x"), ParseError);
  CHECK_THROWS_AS(parse_classical("1.5"), ParseError);
  CHECK_THROWS_AS(parse_classical("x/0"), ParseError);
  CHECK_THROWS_AS(parse_classical("x/p"), ParseError);
  CHECK_THROWS_AS(parse_classical("(x"), ParseError);
  CHECK_THROWS_AS(parse_classical("x)"), ParseError);
  CHECK_THROWS_AS(parse_classical(""), ParseError);
  CHECK_THROWS_AS(parse_classical("x0"), ParseError);
  CHECK_THROWS_AS(parse_classical("x10"), ParseError);
  CHECK(error_column("x + $") == 5);
  CHECK(error_column("x*X") == 3);
  CHECK(error_column("1.5") == 2);
}

TEST_CASE("semantic errors") {
  CHECK_THROWS_AS(parse_operator("x*p"), SemanticError);
  CHECK_THROWS_AS(parse_classical("X*P"), SemanticError);
  CHECK_THROWS_AS(parse_classical("x3", 2), SemanticError);
  CHECK_THROWS_AS(parse_classical("lsq", 2), SemanticError);
  CHECK_THROWS_AS(parse_classical("(x1 + x2 + x3 + p1 + p2 + p3 + 1)^40"), SemanticError);
}

TEST_CASE("canonical printing") {
  CHECK(print_canonical(op_weyl(parse_classical("x^2*p^2"))) == "X^2*P^2 - 2*i*hbar*X*P - 1/2*hbar^2");
  CHECK(print_canonical(NormalOp(1)) == "0");
  CHECK(print_canonical(PhasePoly(2)) == "0");
  CHECK(print_canonical(op_bj(parse_classical("p^2*x"))) == "X*P^2 - i*hbar*P");
  CHECK(print_canonical(parse_operator("X*P - i*hbar/2")) == "X*P - 1/2*i*hbar");
  CHECK(print_canonical(parse_classical("x*p + i*hbar/2")) == "x*p + 1/2*i*hbar");
  CHECK(print_canonical(parse_classical("x1*p2 - x2*p1")) == "x1*p2 - x2*p1");
  CHECK(print_canonical(parse_classical("(1 + i)*hbar + 3")) == "3 + hbar + i*hbar");
  CHECK(print_canonical(parse_classical("-x + x^2 - 7/3")) == "x^2 - x - 7/3");
}

TEST_CASE("printing is deterministic across construction orders") {
  PhasePoly a(2), b(2);
  a.add_term(Exponents({1, 0}, {0, 2}), HCoeff(2));
  a.add_term(Exponents({0, 0}, {1, 0}), HCoeff::i());
  b.add_term(Exponents({0, 0}, {1, 0}), HCoeff::i());
  b.add_term(Exponents({1, 0}, {0, 2}), HCoeff(2));
  CHECK(print_canonical(a) == print_canonical(b));
}

TEST_CASE("round trip on random values") {
  testing::Gen gen(0x5eed0301);
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 4));
    const PhasePoly a = gen.poly(n, 6, 5, false, 3);
    const NormalOp b = gen.op(n, 6, 5);
    const std::string sa = print_canonical(a), sb = print_canonical(b);
    CAPTURE(sa);
    CAPTURE(sb);
    CHECK(parse_classical(sa, n) == a);
    CHECK(parse_operator(sb, n) == b);
    CHECK(print_canonical(parse_classical(sa, n)) == sa);
  }
}

TEST_CASE("fuzz: random bytes never escape as unstructured failures") {
  testing::Gen gen(0x5eed0302);
  int structured = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::string s = t % 2 ? gen.bytes(40) : gen.token_soup(12);
    try {
      structured += structured_failure(s) ? 1 : 0;
    } catch (const std::exception& e) {
      FAIL("unstructured exception: " << e.what() << " on input of length " << s.size());
    }
  }
  CHECK(structured > 5000);
}

TEST_CASE("fuzz: pathological sizes") {
  CHECK(structured_failure(std::string(65536, '(')));
  CHECK(structured_failure(std::string(65536, '-')));
  std::string chain = "x";
  for (int k = 0; k < 20000; ++k) chain += "*x";
  CHECK(structured_failure(chain));
  std::string sum = "x";
  for (int k = 0; k < 1500; ++k) sum += "+x";
  CHECK(parse_classical(sum) == parse_classical("1501*x"));
  for (int k = 0; k < 10000; ++k) sum += "+x";
  CHECK(structured_failure(sum));
  testing::Gen gen(0x5eed0303);
  CHECK(structured_failure(gen.bytes(65536) + "\x01"));
}
