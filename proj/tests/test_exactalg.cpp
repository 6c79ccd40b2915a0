#include <doctest.h>

#include "bjq/obslang.hpp"
#include "bjq/operator.hpp"
#include "bjq/polynomial.hpp"
#include "bjq/scalar.hpp"
#include "support/random.hpp"

using namespace bjq;

namespace {

const HCoeff ih = HCoeff::i() * HCoeff::hbar();

NormalOp X(std::size_t n = 1, std::size_t j = 0, unsigned k = 1) { return NormalOp::x(n, j, k); }
NormalOp P(std::size_t n = 1, std::size_t j = 0, unsigned k = 1) { return NormalOp::p(n, j, k); }
NormalOp Id(std::size_t n = 1) { return NormalOp::identity(n); }

}  // namespace

TEST_CASE("hcoeff arithmetic") {
  CHECK(ih * ih == -HCoeff::hbar(2));
  CHECK(ih.conj() == -ih);
  const HCoeff half_h2 = HCoeff(make_rational(1, 2)) * HCoeff::hbar(2);
  CHECK((half_h2 + -half_h2).is_zero());
  CHECK((half_h2 + -half_h2).terms().empty());
  CHECK(HCoeff(1).is_one());
  CHECK_FALSE(ih.is_real());
  CHECK(ih.evaluate(0.5) == std::complex<double>(0, 0.5));
  CHECK(HCoeff(GaussRational(Rational(0), Rational(0)), 3).is_zero());
  CHECK(minus_i_pow(2) == GaussRational(-1));
  CHECK(minus_i_pow(3) == GaussRational(0, 1));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == make_rational(3, 4));
  CHECK(parse_rational("-6/8") == make_rational(-3, 4));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1/-2"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("poly_mul") {
  const std::size_t n = 2;
  const PhasePoly x1 = PhasePoly::x(n, 0), x2 = PhasePoly::x(n, 1);
  const PhasePoly p1 = PhasePoly::p(n, 0), p2 = PhasePoly::p(n, 1);
  const PhasePoly l = x1 * p2 - x2 * p1;
  CHECK(l * l == x1 * x1 * p2 * p2 - HCoeff(2) * x1 * x2 * p1 * p2 + x2 * x2 * p1 * p1);
  CHECK(l * PhasePoly(n, HCoeff(1)) == l);
  const PhasePoly x = PhasePoly::x(1, 0), p = PhasePoly::p(1, 0);
  CHECK((x + p) * (x - p) == x * x - p * p);
  CHECK_THROWS_AS(poly_mul(x, x1), DimensionError);
  CHECK(pow(x + p, 0) == PhasePoly(1, HCoeff(1)));
}

TEST_CASE("polynomial derivatives and evaluation") {
  const PhasePoly a = parse_classical("x^3*p^2 + 2*hbar*x");
  CHECK(diff_x(a, 0) == parse_classical("3*x^2*p^2 + 2*hbar"));
  CHECK(diff_p(a, 0) == parse_classical("2*x^3*p"));
  const double xs[] = {2.0}, ps[] = {3.0};
  CHECK(a.evaluate(xs, ps, 0.5).real() == doctest::Approx(8 * 9 + 2.0));
}

TEST_CASE("normal_reorder") {
  CHECK(normal_reorder(1, 1) == X() * P() - ih * Id());
  CHECK(normal_reorder(2, 1) == X() * P(1, 0, 2) - HCoeff(2) * ih * P());
  CHECK(normal_reorder(0, 5) == X(1, 0, 5));
  CHECK(normal_reorder(3, 0) == P(1, 0, 3));
  CHECK(normal_reorder(2, 2) == parse_operator("(1)*X^2*P^2 + (-4)*i*hbar*X*P + (-2)*hbar^2"));
  CHECK(normal_reorder(3, 3) ==
        parse_operator("(1)*X^3*P^3 + (-9)*i*hbar*X^2*P^2 + (-18)*hbar^2*X*P + (6)*i*hbar^3"));
}

TEST_CASE("op_mul examples") {
  const NormalOp xp = X() * P();
  CHECK(xp * xp == X(1, 0, 2) * P(1, 0, 2) - ih * xp);
  CHECK(xp * Id() == xp);
  CHECK(P(1, 0, 2) * X(1, 0, 2) == X(1, 0, 2) * P(1, 0, 2) - HCoeff(4) * ih * xp - HCoeff(2) * HCoeff::hbar(2) * Id());
  CHECK_THROWS_AS(op_mul(X(1), X(2)), DimensionError);
}

TEST_CASE("normal_reorder equals the abstract product p^a x^b") {
  for (unsigned a = 0; a <= 6; ++a)
    for (unsigned b = 0; b <= 6; ++b) CHECK(op_mul(P(1, 0, a), X(1, 0, b)) == normal_reorder(a, b));
}

TEST_CASE("commutators") {
  CHECK(commutator(X(), P()) == ih * Id());
  CHECK(commutator(X(2, 0), P(2, 1)).is_zero());
  CHECK(commutator(X(), X(1, 0, 2)).is_zero());
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const NormalOp c = commutator(X(n, j), P(n, k));
        if (j == k)
          CHECK(c == ih * Id(n));
        else
          CHECK(c.is_zero());
      }
}

TEST_CASE("adjoint examples") {
  CHECK(adjoint(X() * P()) == X() * P() - ih * Id());
  const NormalOp sym = HCoeff(make_rational(1, 2)) * (X() * P() + P() * X());
  CHECK(adjoint(sym) == sym);
  CHECK(adjoint(Id()) == Id());
  CHECK(adjoint(ih * Id()) == -ih * Id());
}

TEST_CASE("ring laws on random operators") {
  testing::Gen gen(0x5eed0001);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 3));
    const NormalOp a = gen.op(n, 2), b = gen.op(n, 2), c = gen.op(n, 2);
    CAPTURE(t);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * Id(n) == a);
    CHECK(Id(n) * a == a);
  }
}

TEST_CASE("ring laws reach degree six") {
  testing::Gen gen(0x5eed0002);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 2));
    const NormalOp a = gen.op(n, 3, 2), b = gen.op(n, 3, 2), c = gen.op(n, 3, 2);
    CAPTURE(t);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("adjoint is an antimultiplicative involution") {
  testing::Gen gen(0x5eed0003);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 3));
    const NormalOp a = gen.op(n, 3), b = gen.op(n, 3);
    CAPTURE(t);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
  }
}

TEST_CASE("tau_eval and tau_integrate") {
  TauOp t(1);
  const NormalOp m = X() * P(1, 0, 2) + ih * X();
  t.add(1, m);
  CHECK(tau_integrate(t) == HCoeff(make_rational(1, 2)) * m);
  TauOp t2(1);
  t2.add(2, m);
  CHECK(tau_integrate(t2) == HCoeff(make_rational(1, 3)) * m);

  // tau * p x + (1 - tau) * x p
  TauOp mix(1);
  mix.add(0, X() * P());
  mix.add(1, P() * X() - X() * P());
  CHECK(tau_eval(mix, make_rational(1, 2)) == HCoeff(make_rational(1, 2)) * (P() * X() + X() * P()));
  CHECK(tau_eval(mix, 0) == X() * P());
  CHECK(tau_eval(mix, 1) == P() * X());
}

TEST_CASE("TauOp products expand in tau") {
  TauOp a(1), b(1);
  a.add(0, X());
  a.add(1, P());
  b.add(1, X());
  const TauOp ab = a * b;
  CHECK(tau_eval(ab, make_rational(2, 3)) ==
        (X() + HCoeff(make_rational(2, 3)) * P()) * (HCoeff(make_rational(2, 3)) * X()));
}

TEST_CASE("structural equality has no zero terms") {
  NormalOp a = X() * P();
  a -= X() * P();
  CHECK(a.is_zero());
  CHECK(a == NormalOp(1));
  PhasePoly b = PhasePoly::x(2, 1);
  b -= PhasePoly::x(2, 1);
  CHECK(b.terms().empty());
}

TEST_CASE("dimension mismatches are errors") {
  CHECK_THROWS_AS(X(1) + X(2), DimensionError);
  CHECK_THROWS_AS(PhasePoly::x(1, 0) + PhasePoly::x(2, 0), DimensionError);
  CHECK_THROWS_AS(NormalOp(0), DimensionError);
  CHECK_THROWS_AS(NormalOp::x(2, 2), DimensionError);
  CHECK(X(1).lift(3) == X(3, 0));
}

TEST_CASE("tensor_disjoint") {
  const NormalOp a = X(2, 0) * P(2, 0), b = P(2, 1, 2) + X(2, 1);
  CHECK(tensor_disjoint(a, b) == a * b);
  CHECK(tensor_disjoint(a, b) == b * a);
}
