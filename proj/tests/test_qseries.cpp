#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wtheta/qseries.hpp"

#include <cmath>

using namespace wtheta;

TEST_CASE("eta expansion has pentagonal-number support") {
  QExpansion eta = eta_expansion(Rational(200));
  QExpansion ref(CoefMode::Exact, Rational(200));
  for (int k = -100; k <= 100; ++k) {
    Rational e = Rational(k * (3 * k - 1), 2) + Rational(1, 24);
    if (e >= 0 && e <= Rational(200))
      ref.add_exact(e, (k % 2 == 0) ? Rational(1) : Rational(-1));
  }
  CHECK(qx_equal(eta, ref));
}

TEST_CASE("eta_value at tau = i") {
  // eta(i) = Gamma(1/4) / (2 pi^{3/4})
  const double gamma_quarter = 3.6256099082219083119;
  double expect = gamma_quarter / (2.0 * std::pow(M_PI, 0.75));
  Complex v = eta_value(Complex(0.0, 1.0));
  CHECK(std::abs(v - Complex(expect, 0.0)) < 1e-12);
}

TEST_CASE("series evaluation matches eta product") {
  QExpansion eta = eta_expansion(Rational(80));
  Complex tau(0.1, 0.9);
  NumericResult r = qx_eval(eta, tau, 1e-6);
  CHECK(std::abs(r.value - eta_value(tau)) < 1e-12);
  CHECK(r.error_bound < 1e-10);
}

TEST_CASE("arithmetic: add, mul, scale, shift, inverse") {
  QExpansion f(CoefMode::Exact, Rational(10));
  f.add_exact(Rational(0), Rational(1));
  f.add_exact(Rational(1), Rational(-2));
  QExpansion g(CoefMode::Exact, Rational(10));
  g.add_exact(Rational(0), Rational(1));
  g.add_exact(Rational(2), Rational(3));

  QExpansion s = qx_add(f, g);
  CHECK(s.coeff_exact(Rational(0)) == Rational(2));
  CHECK(s.coeff_exact(Rational(1)) == Rational(-2));
  CHECK(s.coeff_exact(Rational(2)) == Rational(3));

  QExpansion m = qx_mul(f, g);
  CHECK(m.coeff_exact(Rational(0)) == Rational(1));
  CHECK(m.coeff_exact(Rational(1)) == Rational(-2));
  CHECK(m.coeff_exact(Rational(2)) == Rational(3));
  CHECK(m.coeff_exact(Rational(3)) == Rational(-6));

  QExpansion sc = qx_scale(Rational(5), f);
  CHECK(sc.coeff_exact(Rational(1)) == Rational(-10));

  QExpansion sh = qx_shift(f, Rational(1, 2));
  CHECK(sh.coeff_exact(Rational(1, 2)) == Rational(1));

  // f * f^{-1} = 1 up to the cap
  QExpansion inv = qx_inverse(f);
  QExpansion one = qx_mul(f, inv);
  CHECK(one.coeff_exact(Rational(0)) == Rational(1));
  for (int k = 1; k <= 9; ++k) CHECK(one.coeff_exact(Rational(k)) == Rational(0));
}

TEST_CASE("inverse of eta times eta is one") {
  QExpansion eta = eta_expansion(Rational(30));
  QExpansion inv = qx_inverse(eta);
  CHECK(inv.eta_power == 0);  // symbolic power not touched by the product form
  QExpansion one = qx_mul(eta, inv);
  CHECK(one.coeff_exact(Rational(0)) == Rational(1));
  for (int k = 1; k <= 20; ++k)
    CHECK(one.coeff_exact(Rational(k)) == Rational(0));
}

TEST_CASE("evaluation includes symbolic eta power and exp_offset") {
  QExpansion f(CoefMode::Exact, Rational(10));
  f.add_exact(Rational(1, 8), Rational(1));
  f.eta_power = -1;
  f.exp_offset = 0.25;
  Complex tau(0.0, 1.3);
  Complex q = std::exp(Complex(0.0, 2.0 * M_PI) * tau);
  Complex expect = std::pow(q, 0.125 + 0.25) / eta_value(tau);
  CHECK(std::abs(qx_eval(f, tau).value - expect) < 1e-12);
}

TEST_CASE("rational and complex literal parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("x"), PreconditionError);
  CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(parse_complex("-0.3+0.1i") == Complex(-0.3, 0.1));
  CHECK(parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("1e-2-3e-1i") == Complex(0.01, -0.3));
}

TEST_CASE("cap truncation drops high exponents") {
  QExpansion f(CoefMode::Exact, Rational(5));
  f.add_exact(Rational(3), Rational(1));
  f.add_exact(Rational(7), Rational(1));  // beyond cap, dropped
  CHECK(f.num_terms() == 1);
  f.set_cap(Rational(2));
  CHECK(f.num_terms() == 0);
}
