#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wtheta/modular.hpp"

#include <cmath>

using namespace wtheta;

namespace {

QuadLattice lat1(int a) {
  IntMat A(1, 1);
  A << a;
  return QuadLattice::from_matrix(A);
}

}  // namespace

TEST_CASE("Gaussian integral identity, ranks 1 to 3") {
  for (int n = 1; n <= 3; ++n) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) * 2.0;
    for (int i = 0; i + 1 < n; ++i) {
      M(i, i + 1) = 0.5;
      M(i + 1, i) = 0.5;
    }
    CVec b(n);
    for (int i = 0; i < n; ++i) b[i] = Complex(0.2 * (i + 1), -0.1 * i);
    auto g = gauss_integral_check(M, b, 1e-10);
    CHECK(g.residual < 1e-8);
  }
}

TEST_CASE("partial theta S-transform, rank 1") {
  QuadLattice L = lat1(2);
  CVec u(1), e(1);
  u << Complex(0.13, 0.05);
  e << Complex(-0.4, 0.2);
  auto r = s_check_negative(L, u, RegEps::make(e), Complex(0.0, 0.8), 1e-9);
  CHECK(r.rel_residual < 1e-8);
}

TEST_CASE("partial theta S-transform, rank 2 at generic tau") {
  RootSystem rs = build_root_system(Family::A, 2);
  QuadLattice L = QuadLattice::rescaled(rs, 1);
  CVec u(2), e(2);
  u << Complex(0.1, 0.0), Complex(-0.15, 0.1);
  e << Complex(-0.5, 0.1), Complex(-0.35, -0.2);
  auto r = s_check_negative(L, u, RegEps::make(e), Complex(0.3, 0.7), 1e-8);
  CHECK(r.rel_residual < 1e-7);
}

TEST_CASE("Kostant theta S-transform, A1 and A2") {
  {
    RootSystem rs = build_root_system(Family::A, 1);
    CVec u(1), e(1);
    u << Complex(0.2, -0.1);
    e << Complex(-0.45, 0.15);
    auto r = s_check_kostant_negative(rs, 2, u, RegEps::make(e, rs),
                                      Complex(0.0, 0.8), 1e-8);
    CHECK(r.rel_residual < 1e-7);
  }
  {
    RootSystem rs = build_root_system(Family::A, 2);
    CVec u(2), e(2);
    u << Complex(0.1, 0.05), Complex(-0.1, 0.0);
    e << Complex(-0.5, 0.1), Complex(-0.3, -0.1);
    auto r = s_check_kostant_negative(rs, 2, u, RegEps::make(e, rs),
                                      Complex(0.0, 0.8), 1e-8);
    CHECK(r.rel_residual < 1e-7);
  }
}

TEST_CASE("full S-identity with contour corrections") {
  {
    QuadLattice L = lat1(3);
    CVec u(1), e(1);
    u << Complex(0.1, -0.05);
    e << Complex(0.35, 0.1);  // positive region needs the correction term
    auto r = s_check_full(L, u, RegEps::make(e), Complex(0.0, 0.8), 1e-8);
    CHECK(r.rel_residual < 1e-6);
  }
  {
    RootSystem rs = build_root_system(Family::A, 2);
    QuadLattice L = QuadLattice::rescaled(rs, 2);
    CVec u(2), e(2);
    u << Complex(0.1, 0.0), Complex(0.05, 0.05);
    e << Complex(0.4, 0.1), Complex(-0.35, -0.1);  // mixed signs
    auto r = s_check_full(L, u, RegEps::make(e), Complex(0.0, 0.8), 1e-8);
    CHECK(r.rel_residual < 1e-6);
  }
}

TEST_CASE("full S-identity reduces to the negative-region identity") {
  QuadLattice L = lat1(2);
  CVec u(1), e(1);
  u << Complex(0.08, 0.02);
  e << Complex(-0.3, 0.1);
  auto full = s_check_full(L, u, RegEps::make(e), Complex(0.0, 0.9), 1e-9);
  auto neg = s_check_negative(L, u, RegEps::make(e), Complex(0.0, 0.9), 1e-9);
  CHECK(std::abs(full.rhs - neg.rhs) < 1e-10);  // empty correction sum
}

TEST_CASE("rectangle contour lemma delta table") {
  struct Case {
    double er, mr;
    int delta;
  };
  for (const Case& c : {Case{0.3, 0.15, 0}, Case{0.3, 0.6, 1},
                        Case{-0.3, -0.6, -1}, Case{-0.3, -0.1, 0}}) {
    auto r = contour_lemma_1d(Complex(c.er, 0.0), Complex(c.mr, 0.0),
                              Complex(0.7, 0.3), Complex(0.0, 0.9), 6.0);
    CHECK(r.delta == c.delta);
    CHECK(r.mismatch < 1e-6);
    if (c.delta == 0) CHECK(std::abs(r.contour) < 1e-6);
  }
}

TEST_CASE("type-A pole orders") {
  // m_i = min{m >= 0 : R_i + m + 1 not in R}
  CHECK(pole_orders_typeA({5, 4, 2}, 3) == std::vector<int>{0, 1, 0});
  CHECK(pole_orders_typeA({7, 6, 5, 2}, 4) == std::vector<int>{0, 1, 2, 0});
  CHECK(pole_orders_typeA({3}, 1) == std::vector<int>{0});
  CHECK_THROWS_AS(pole_orders_typeA({2, 2}, 2), PreconditionError);
}

TEST_CASE("region analysis: dominance conditions") {
  RootSystem a1 = build_root_system(Family::A, 1);
  {
    CVec e(1);
    e << Complex(3.0, -1.0);
    auto rd = region_analysis(a1, 2, RegEps::make(e, a1));
    CHECK(rd.k_star[0] == 1);
    CHECK(rd.conditions_met);
  }
  {
    CVec e(1);
    e << Complex(3.0, -0.1);  // minimizer k* = 0 lies on the zero set
    auto rd = region_analysis(a1, 2, RegEps::make(e, a1));
    CHECK(rd.k_star[0] == 0);
    CHECK(!rd.k_star_in_N);
    CHECK(!rd.conditions_met);
  }
  {
    // A2 at p=2: every lattice point pairs to an even value with some root
    RootSystem a2 = build_root_system(Family::A, 2);
    CVec e(2);
    e << Complex(3.0, -0.1), Complex(3.0, -0.2);
    auto rd = region_analysis(a2, 2, RegEps::make(e, a2));
    CHECK(!rd.cell_meets_N);
    CHECK(!rd.conditions_met);
  }
}

TEST_CASE("h integral matches the transformed cone sum directly") {
  QuadLattice L = lat1(1);
  CVec u(1), e(1);
  u << Complex(0.05, 0.01);
  e << Complex(-0.6, 0.0);
  RegEps eps = RegEps::make(e);
  Complex tau(0.0, 1.1);
  CVec ut(1);
  ut[0] = u[0] / tau;
  Complex lhs = partial_theta_eval(L, ut, eps, -1.0 / tau, 1e-12).value;
  Complex rhs = h_integral(L, u, eps, tau, 1e-10).value;
  CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(lhs)));
}
