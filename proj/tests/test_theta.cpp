#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wtheta/theta.hpp"

#include <cmath>

using namespace wtheta;

namespace {

const double kPi = 3.14159265358979323846;

QuadLattice lat1(int a) {
  IntMat A(1, 1);
  A << a;
  return QuadLattice::from_matrix(A);
}

}  // namespace

TEST_CASE("rank-1 partial theta against a direct sum") {
  QuadLattice L = lat1(1);
  CVec u = CVec::Zero(1);
  CVec e(1);
  e << Complex(-1.0, 0.0);
  Complex tau(0.0, 1.0);
  Complex direct = 0.0;
  for (int k = 0; k < 60; ++k) {
    double x = k + 0.5;
    direct += std::exp(Complex(0.0, kPi) * tau * x * x) * std::exp(-2.0 * kPi * x);
  }
  auto r = partial_theta_eval(L, u, RegEps::make(e), tau, 1e-14);
  CHECK(std::abs(r.value - direct) < 1e-13);
  CHECK(r.error_bound < 1e-13);
}

TEST_CASE("regularization is a shift of the elliptic variable") {
  // weight e^{2 pi (k,eps)} equals the substitution u -> u - i A^{-1} eps
  QuadLattice L = lat1(3);
  Complex tau(0.2, 0.8);
  CVec u(1), e1(1), e2(1);
  u << Complex(0.1, -0.05);
  e1 << Complex(-0.7, 0.2);
  e2 << Complex(-0.25, -0.1);
  CVec u2(1);
  u2[0] = u[0] - Complex(0.0, 1.0) * (e1[0] - e2[0]) / 3.0;
  Complex a = partial_theta_eval(L, u, RegEps::make(e1), tau, 1e-13).value;
  Complex b = partial_theta_eval(L, u2, RegEps::make(e2), tau, 1e-13).value;
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("elliptic translation law with the shifted cone") {
  QuadLattice L = lat1(2);
  Complex tau(0.1, 0.9);
  CVec u(1), e(1);
  u << Complex(0.07, 0.02);
  e << Complex(-0.4, 0.1);
  RegEps eps = RegEps::make(e);
  IntVec m(1), l(1);
  m << -2;
  l << 1;
  CVec u2(1);
  u2[0] = u[0] + Complex(m[0], 0.0) * tau + Complex(l[0], 0.0);
  Complex lhs = partial_theta_eval(L, u2, eps, tau, 1e-13).value;
  Complex pref = std::exp(Complex(0.0, kPi) * Complex(2.0 * l[0], 0.0)) *
                 std::exp(Complex(0.0, -kPi) * tau * Complex(2.0 * m[0] * m[0], 0.0)) *
                 std::exp(Complex(0.0, -2.0 * kPi) * Complex(2.0 * m[0], 0.0) * u[0]) *
                 std::exp(-2.0 * kPi * Complex(m[0], 0.0) * e[0]);
  Complex rhs = pref * partial_theta_eval(L, u, eps, tau, 1e-13, &m).value;
  CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
}

TEST_CASE("epsilon translation absorbs a real shift of u") {
  // P_eps(u/tau, -1/tau) = P_{eps-a}((u - i A^{-1} a tau)/tau, -1/tau)
  QuadLattice L = lat1(2);
  Complex tau(0.0, 0.7);
  Complex stau = -1.0 / tau;
  CVec u(1), e(1);
  u << Complex(0.12, 0.0);
  e << Complex(-0.3, 0.05);
  double a = 0.4;
  CVec ua(1), ea(1);
  ua[0] = (u[0] - Complex(0.0, 1.0) * (a / 2.0) * tau) / tau;
  ea[0] = e[0] - a;
  CVec ut(1);
  ut[0] = u[0] / tau;
  Complex lhs = partial_theta_eval(L, ut, RegEps::make(e), stau, 1e-13).value;
  Complex rhs = partial_theta_eval(L, ua, RegEps::make(ea), stau, 1e-13).value;
  CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(lhs)));
}

TEST_CASE("modified theta against a direct lattice sum") {
  Eigen::MatrixXd B(1, 1);
  B << 1.0;
  CVec u(1), e(1);
  u << Complex(0.21, 0.05);
  e << Complex(0.3, -0.1);
  Complex tau(0.1, 1.1);
  Complex direct = 0.0;
  for (int m = -40; m <= 40; ++m) {
    Complex x = Complex(m, 0.0) + Complex(0.0, 1.0) * e[0];
    direct += std::pow(-1.0, m) * std::exp(Complex(0.0, kPi) * tau * x * x) *
              std::exp(Complex(0.0, 2.0 * kPi) * u[0] * x);
  }
  auto r = theta_B_eval(B, u, e, tau, 1e-13);
  CHECK(std::abs(r.value - direct) < 1e-12);
}

TEST_CASE("tolerance tightening is consistent") {
  RootSystem rs = build_root_system(Family::A, 2);
  QuadLattice L = QuadLattice::rescaled(rs, 2);
  CVec u(2), e(2);
  u << Complex(0.1, 0.0), Complex(-0.05, 0.1);
  e << Complex(-0.5, 0.1), Complex(-0.3, -0.2);
  RegEps eps = RegEps::make(e);
  Complex tau(0.3, 0.7);
  Complex coarse = partial_theta_eval(L, u, eps, tau, 1e-6).value;
  Complex fine = partial_theta_eval(L, u, eps, tau, 1e-13).value;
  CHECK(std::abs(coarse - fine) < 1e-6);
}

TEST_CASE("Kostant theta series evaluates to the direct cone sum") {
  RootSystem rs = build_root_system(Family::A, 1);
  RatVec v(1);
  v[0] = Rational(1, 4);
  QExpansion f = kostant_theta_series(rs, 2, v, nullptr, Rational(40));
  Complex tau(0.0, 0.9);
  CVec u(1), e(1);
  u << Complex(0.25, 0.0) * tau;  // u = v tau with v = 1/4 alpha-coordinate
  e << Complex(-1e-12, 0.0);
  // series has no regularization; compare against a tiny-eps direct sum
  Complex direct = kostant_theta_eval(rs, 2, u, RegEps::make(e, rs), tau, 1e-14).value;
  CHECK(std::abs(qx_eval(f, tau).value - direct) < 1e-10);
}

TEST_CASE("partial theta series with regularization weight") {
  QuadLattice L = lat1(2);
  RatVec v(1);
  v[0] = Rational(1, 3);
  CVec e(1);
  e << Complex(-0.2, 0.1);
  QExpansion f = partial_theta_series(L, v, &e, Rational(40));
  CHECK(f.mode() == CoefMode::Numeric);
  Complex tau(0.0, 1.2);
  CVec u(1);
  u << Complex(Rational(1, 3).convert_to<double>(), 0.0) * tau;
  Complex direct = partial_theta_eval(L, u, RegEps::make(e), tau, 1e-14).value;
  CHECK(std::abs(qx_eval(f, tau).value - direct) < 1e-10);
}

TEST_CASE("constructor preconditions") {
  CVec e(1);
  e << Complex(0.0, 0.4);
  CHECK_THROWS_AS(RegEps::make(e), PreconditionError);

  RootSystem rs = build_root_system(Family::A, 2);
  CVec e2(2);
  e2 << Complex(0.3, 0.0), Complex(-0.3, 0.0);  // (alpha1+alpha2, Re eps) = 0
  CHECK_THROWS_AS(RegEps::make(e2, rs), PreconditionError);

  IntMat bad(2, 2);
  bad << 2, 1, -1, 2;  // not symmetric
  CHECK_THROWS_AS(QuadLattice::from_matrix(bad), PreconditionError);
  bad << 1, 2, 2, 1;  // symmetric but indefinite
  CHECK_THROWS_AS(QuadLattice::from_matrix(bad), PreconditionError);
}

TEST_CASE("exact inverse of the rescaled Gram matrix") {
  RootSystem rs = build_root_system(Family::A, 2);
  QuadLattice L = QuadLattice::rescaled(rs, 3);
  RatMat inv = L.inverse();
  CHECK(inv(0, 0) == Rational(2, 9));
  CHECK(inv(0, 1) == Rational(1, 9));
  CHECK(L.det() == doctest::Approx(27.0));
}
