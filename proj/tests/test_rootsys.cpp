#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wtheta/rootsys.hpp"

using namespace wtheta;

TEST_CASE("positive root counts for ADE families") {
  CHECK(build_root_system(Family::A, 2).num_positive_roots() == 3);
  CHECK(build_root_system(Family::A, 3).num_positive_roots() == 6);
  CHECK(build_root_system(Family::D, 4).num_positive_roots() == 12);
  CHECK(build_root_system(Family::E, 6).num_positive_roots() == 36);
  CHECK(build_root_system(Family::E, 7).num_positive_roots() == 63);
  CHECK(build_root_system(Family::E, 8).num_positive_roots() == 120);
}

TEST_CASE("Weyl group orders") {
  CHECK(weyl_group(build_root_system(Family::A, 1)).size() == 2);
  CHECK(weyl_group(build_root_system(Family::A, 2)).size() == 6);
  CHECK(weyl_group(build_root_system(Family::A, 3)).size() == 24);
  CHECK(weyl_group(build_root_system(Family::D, 4)).size() == 192);
}

TEST_CASE("rho pairs to 1 with every simple coroot") {
  for (auto [f, r] : {std::pair{Family::A, 3}, {Family::D, 4}}) {
    RootSystem rs = build_root_system(f, r);
    for (int i = 0; i < rs.rank; ++i) {
      RatVec ei = RatVec::Zero(rs.rank);
      ei[i] = 1;
      CHECK(rs.form(rs.rho_alpha, ei) == Rational(1));
    }
  }
}

TEST_CASE("Weyl elements are form isometries with sign = det") {
  RootSystem rs = build_root_system(Family::A, 2);
  for (const auto& w : weyl_group(rs)) {
    IntMat g = w.matrix.transpose() * rs.cartan * w.matrix;
    CHECK(g == rs.cartan);
    int det = w.matrix(0, 0) * w.matrix(1, 1) - w.matrix(0, 1) * w.matrix(1, 0);
    CHECK(det == w.sign);
    CHECK(w.sign == ((w.length % 2 == 0) ? 1 : -1));
  }
}

TEST_CASE("Kostant partition values, rank 2") {
  RootSystem rs = build_root_system(Family::A, 2);
  IntVec b(2);
  b << 0, 0;
  CHECK(kostant_partition(rs, b) == 1);
  b << 1, 1;
  CHECK(kostant_partition(rs, b) == 2);  // a1+a2 or (a1+a2)
  b << 2, 1;
  CHECK(kostant_partition(rs, b) == 2);
  b << 3, 2;
  CHECK(kostant_partition(rs, b) == 3);  // min(3,2)+1
  b << -1, 0;
  CHECK_THROWS_AS(kostant_partition(rs, b), PreconditionError);
}

TEST_CASE("Weyl dimension formula") {
  RootSystem rs = build_root_system(Family::A, 2);
  RatVec lam = rat_vec(IntVec::Zero(2));
  CHECK(weyl_dimension(rs, lam) == Rational(1));
  // adjoint: highest root = a1 + a2
  lam[0] = 1;
  lam[1] = 1;
  CHECK(weyl_dimension(rs, lam) == Rational(8));
  // fundamental omega_1 = (2 a1 + a2) / 3
  lam[0] = Rational(2, 3);
  lam[1] = Rational(1, 3);
  CHECK(weyl_dimension(rs, lam) == Rational(3));
}

TEST_CASE("weyl_character consistency: generic point and singular limit") {
  RootSystem rs = build_root_system(Family::A, 2);
  auto W = weyl_group(rs);
  RatVec lam(2);
  lam[0] = 1;
  lam[1] = 1;
  CVec x(2);
  x << Complex(0.13, 0.02), Complex(-0.07, 0.05);
  Complex generic = weyl_character(rs, W, lam, x);
  // character value stays finite and approaches dim V as x -> 0
  CVec x0(2);
  x0 << Complex(1e-9, 0.0), Complex(2e-9, 0.0);
  Complex near0 = weyl_character(rs, W, lam, x0);
  CHECK(std::abs(near0 - Complex(8.0, 0.0)) < 1e-5);
  CHECK(std::abs(generic) <= 8.0 + 1e-9);
  // exact zero argument takes the dimension-formula path
  CVec z = CVec::Zero(2);
  CHECK(weyl_character(rs, W, lam, z) == Complex(8.0, 0.0));
}

TEST_CASE("D and E Cartan matrices are symmetric with unit-det isometries") {
  for (auto [f, r] : {std::pair{Family::D, 5}, {Family::E, 6}}) {
    RootSystem rs = build_root_system(f, r);
    CHECK(rs.cartan == IntMat(rs.cartan.transpose()));
    for (int i = 0; i < rs.rank; ++i) CHECK(rs.cartan(i, i) == 2);
  }
}

TEST_CASE("family parsing round-trips") {
  CHECK(parse_family("A") == Family::A);
  CHECK(parse_family("D") == Family::D);
  CHECK(parse_family("E") == Family::E);
  CHECK_THROWS_AS(parse_family("B"), PreconditionError);
  CHECK_THROWS_AS(build_root_system(Family::E, 9), PreconditionError);
}
