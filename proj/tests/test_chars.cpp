#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wtheta/chars.hpp"

#include <cmath>
#include <random>

using namespace wtheta;

TEST_CASE("vacuum character of the rank-1 algebra at p=2") {
  RootSystem rs = build_root_system(Family::A, 1);
  IntVec mu(1);
  mu << 0;
  auto rec = atypical_character(rs, 2, mu, nullptr, Rational(8));
  CHECK(rec.series.eta_power == -1);
  CHECK(rec.series.coeff_exact(Rational(1, 8)) == Rational(1));
  CHECK(rec.series.coeff_exact(Rational(9, 8)) == Rational(-1));
  CHECK(rec.series.coeff_exact(Rational(25, 8)) == Rational(1));
  CHECK(rec.series.coeff_exact(Rational(49, 8)) == Rational(-1));
  CHECK(rec.series.num_terms() == 4);
}

TEST_CASE("rank-1 telescoping case: mu=1, p=2 leaves a single power") {
  RootSystem rs = build_root_system(Family::A, 1);
  IntVec mu(1);
  mu << 1;
  auto rec = atypical_character(rs, 2, mu, nullptr, Rational(10));
  CHECK(rec.series.num_terms() == 1);
  CHECK(rec.series.coeff_exact(Rational(1, 2)) == Rational(1));
}

TEST_CASE("vacuum leading exponent is (p/2)||(1-1/p) rho||^2") {
  RootSystem rs = build_root_system(Family::A, 2);
  IntVec mu = IntVec::Zero(2);
  auto rec = atypical_character(rs, 2, mu, nullptr, Rational(10));
  CHECK(rec.series.min_exponent() == Rational(1, 2));
}

TEST_CASE("two character paths agree exactly") {
  RootSystem a1 = build_root_system(Family::A, 1);
  for (int p : {2, 3})
    for (int m : {0, 1, 2, -3}) {
      IntVec mu(1);
      mu << m;
      auto a = atypical_character(a1, p, mu, nullptr, Rational(10));
      auto c = constant_term_character(a1, p, mu, Rational(10));
      CHECK(qx_equal(a.series, c));
    }
  RootSystem a2 = build_root_system(Family::A, 2);
  IntVec mu(2);
  mu << 1, -2;
  auto a = atypical_character(a2, 2, mu, nullptr, Rational(10));
  auto c = constant_term_character(a2, 2, mu, Rational(10));
  CHECK(qx_equal(a.series, c));
}

TEST_CASE("decompose / reassemble round-trip on random weights") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-30, 30);
  for (auto [f, r, p] : {std::tuple{Family::A, 2, 3}, {Family::A, 3, 2},
                         {Family::D, 4, 2}}) {
    RootSystem rs = build_root_system(f, r);
    for (int trial = 0; trial < 200; ++trial) {
      IntVec mu(rs.rank);
      for (int i = 0; i < rs.rank; ++i) mu[i] = d(rng);
      WeightDecomposition dec = decompose_weight(rs, p, mu);
      for (int i = 0; i < rs.rank; ++i) {
        CHECK(dec.s[i] >= 1);
        CHECK(dec.s[i] <= p);
      }
      CHECK(reassemble_weight(rs, dec) == mu);
    }
  }
}

TEST_CASE("Weyl action on mu: involution and series invariance") {
  RootSystem rs = build_root_system(Family::A, 2);
  auto W = weyl_group(rs);
  IntVec mu(2);
  mu << 2, 1;
  for (const auto& w : W) {
    if (w.length != 1) continue;  // reflections
    IntVec mw = shifted_weyl_action_mu(rs, 2, mu, w);
    CHECK(shifted_weyl_action_mu(rs, 2, mw, w) == mu);
    CHECK(weyl_invariance_check(rs, 2, mu, w, Rational(10)));
  }
}

TEST_CASE("regularized coefficients are continuous at eps -> 0") {
  RootSystem rs = build_root_system(Family::A, 1);
  IntVec mu(1);
  mu << 0;
  CVec e(1);
  e << Complex(-1e-6, 0.0);
  auto reg = atypical_character(rs, 2, mu, &e, Rational(8));
  auto exact = atypical_character(rs, 2, mu, nullptr, Rational(8));
  CHECK(reg.series.mode() == CoefMode::Numeric);
  for (const auto& [expo, c] : exact.series.exact_terms()) {
    Complex cr = reg.series.coeff(expo);
    CHECK(std::abs(cr - Complex(to_double(c), 0.0)) < 1e-4);
  }
}

TEST_CASE("typical character at lam = a0 rho is 1/eta^n") {
  for (auto [f, r, p] : {std::tuple{Family::A, 1, 2}, {Family::A, 2, 3}}) {
    RootSystem rs = build_root_system(f, r);
    CVec lam(rs.rank);
    for (int i = 0; i < rs.rank; ++i) lam[i] = Complex(p - 1, 0.0);
    auto rec = typical_character(rs, p, lam, nullptr, Rational(10));
    CHECK(rec.series.eta_power == -rs.rank);
    CHECK(rec.series.num_terms() == 1);
    CHECK(rec.series.min_exponent() == Rational(0));
  }
}

TEST_CASE("typical character with irrational weight downgrades to numeric") {
  RootSystem rs = build_root_system(Family::A, 1);
  CVec lam(1);
  lam << Complex(0.3, 0.0);
  auto rec = typical_character(rs, 2, lam, nullptr, Rational(10));
  CHECK(rec.series.mode() == CoefMode::Numeric);
  // q-exponent (lam - a0 rho, X^{-1}(lam - a0 rho)) / (2p) with lam in the
  // lambda_j basis: rank 1 value (0.3-1)^2 (1/2) / 4
  Complex tau(0.0, 1.0);
  double expo = (0.3 - 1.0) * (0.3 - 1.0) * 0.5 / 4.0;
  Complex q = std::exp(Complex(0.0, 2.0 * M_PI) * tau);
  Complex expect = std::pow(q, expo) / eta_value(tau);
  CHECK(std::abs(qx_eval(rec.series, tau).value - expect) < 1e-10);
}

TEST_CASE("z=1 specialization has positive integer-weighted leading data") {
  RootSystem rs = build_root_system(Family::A, 1);
  IntVec mu(1);
  mu << 0;
  WeightDecomposition dec = decompose_weight(rs, 2, mu);
  auto f = full_character_specialized(rs, 2, dec, Rational(6));
  CHECK(f.mode() == CoefMode::Exact);
  CHECK(!f.empty());
  // leading term: alpha = 0 contributes dim V(0) = 1 at the vacuum exponent
  CHECK(f.min_exponent() == Rational(1, 8));
  CHECK(f.coeff_exact(f.min_exponent()) == Rational(1));
}
