#include "wtheta/acceptance.hpp"

#include "wtheta/qdim.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <vector>

namespace wtheta {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void line(int idx, const std::string& name, bool ok,
            const std::string& detail) {
    out << "[" << idx << "] " << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
    if (!ok) ++failures;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

Complex rand_tau(std::mt19937_64& rng) {
  static const Complex taus[3] = {Complex(0.0, 0.5), Complex(0.0, 0.8),
                                  Complex(0.3, 0.7)};
  return taus[rng() % 3];
}

CVec rand_u(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec u(n);
  for (int i = 0; i < n; ++i) u[i] = Complex(d(rng), 0.3 * d(rng));
  double nr = 0.0;
  for (int i = 0; i < n; ++i) nr += std::norm(u[i]);
  nr = std::sqrt(nr);
  if (nr > 0.5) u *= 0.5 / nr;
  return u;
}

CVec rand_eps_neg(std::mt19937_64& rng, int n, double lo = -1.0,
                  double hi = -0.1) {
  std::uniform_real_distribution<double> re(lo, hi), im(-0.15, 0.15);
  CVec e(n);
  for (int i = 0; i < n; ++i) e[i] = Complex(re(rng), im(rng));
  return e;
}

// criterion 1: modular transform of the regularized partial theta against
// the Gaussian-kernel integral, Re(eps) < 0
bool crit_partial_s(std::mt19937_64& rng, Reporter& rep) {
  RootSystem a2 = build_root_system(Family::A, 2);
  std::vector<QuadLattice> lats;
  for (int a : {1, 2, 3}) {
    IntMat A(1, 1);
    A << a;
    lats.push_back(QuadLattice::from_matrix(A));
  }
  lats.push_back(QuadLattice::rescaled(a2, 2));
  lats.push_back(QuadLattice::rescaled(a2, 1));

  auto t0 = Clock::now();
  double worst = 0.0;
  for (int d = 0; d < 20; ++d) {
    const QuadLattice& L = lats[d % lats.size()];
    int n = L.rank();
    RegEps eps = RegEps::make(rand_eps_neg(rng, n));
    auto r = s_check_negative(L, rand_u(rng, n), eps, rand_tau(rng), 1e-9);
    worst = std::max(worst, r.rel_residual);
  }
  bool in_time = seconds_since(t0) < 60.0;
  bool ok = worst < 1e-6 && in_time;
  rep.line(1, "partial theta S-transform, Re(eps)<0", ok,
           "max rel residual " + fmt(worst) +
               (in_time ? "" : ", time budget exceeded"));
  return ok;
}

// criterion 2: Kostant-weighted theta against the Weyl-denominator kernel
bool crit_kostant_s(std::mt19937_64& rng, Reporter& rep) {
  RootSystem a1 = build_root_system(Family::A, 1);
  RootSystem a2 = build_root_system(Family::A, 2);
  struct Case {
    const RootSystem* rs;
    int p;
  };
  std::vector<Case> cases = {{&a1, 2}, {&a1, 3}, {&a2, 2}};

  auto t0 = Clock::now();
  double worst = 0.0;
  for (int d = 0; d < 20; ++d) {
    const Case& c = cases[d % cases.size()];
    int n = c.rs->rank;
    RegEps eps = RegEps::make(rand_eps_neg(rng, n), *c.rs);
    auto r = s_check_kostant_negative(*c.rs, c.p, rand_u(rng, n), eps,
                                      rand_tau(rng), 1e-8);
    worst = std::max(worst, r.rel_residual);
  }
  bool in_time = seconds_since(t0) < 120.0;
  bool ok = worst < 1e-5 && in_time;
  rep.line(2, "Kostant theta S-transform, Re(eps)<0", ok,
           "max rel residual " + fmt(worst) +
               (in_time ? "" : ", time budget exceeded"));
  return ok;
}

// criterion 3: full S-identity with the contour-correction terms for
// positive / mixed-sign regularization
bool crit_full_s(std::mt19937_64& rng, Reporter& rep) {
  RootSystem a2 = build_root_system(Family::A, 2);
  IntMat A1(1, 1);
  A1 << 3;
  QuadLattice L1 = QuadLattice::from_matrix(A1);
  QuadLattice L2 = QuadLattice::rescaled(a2, 2);

  std::uniform_real_distribution<double> pos(0.15, 0.45), im(-0.1, 0.1);
  auto t0 = Clock::now();
  double worst = 0.0;
  for (int d = 0; d < 10; ++d) {
    if (d % 2 == 0) {
      CVec e(1);
      e << Complex(pos(rng), im(rng));
      auto r = s_check_full(L1, rand_u(rng, 1), RegEps::make(e),
                            Complex(0.0, 0.8), 1e-8);
      worst = std::max(worst, r.rel_residual);
    } else {
      CVec e(2);
      e << Complex(pos(rng), im(rng)), Complex(-pos(rng), im(rng));
      auto r = s_check_full(L2, rand_u(rng, 2), RegEps::make(e),
                            Complex(0.0, 0.8), 1e-8);
      worst = std::max(worst, r.rel_residual);
    }
  }
  bool in_time = seconds_since(t0) < 120.0;
  bool ok = worst < 1e-5 && in_time;
  rep.line(3, "full S-identity with contour corrections", ok,
           "max rel residual " + fmt(worst) +
               (in_time ? "" : ", time budget exceeded"));
  return ok;
}

// criterion 4: one-dimensional rectangle-contour lemma, four delta cases
bool crit_contour(Reporter& rep) {
  struct Case {
    double er, mr;
    int delta;
  };
  const Case cases[4] = {
      {0.3, 0.15, 0}, {0.3, 0.6, 1}, {-0.3, -0.6, -1}, {-0.3, -0.1, 0}};
  double worst = 0.0;
  bool ok = true;
  for (const Case& c : cases) {
    auto r = contour_lemma_1d(Complex(c.er, 0.0), Complex(c.mr, 0.0),
                              Complex(0.7, 0.3), Complex(0.0, 0.9), 6.0);
    if (r.delta != c.delta) ok = false;
    worst = std::max(worst, r.mismatch);
    if (r.mismatch >= 1e-6) ok = false;
    if (c.delta == 0 && std::abs(r.contour) >= 1e-6) ok = false;
  }
  rep.line(4, "rectangle contour lemma (four delta cases)", ok,
           "max mismatch " + fmt(worst));
  return ok;
}

// rank-1 character as a direct half-integer-square sum; labels follow the
// (lambda_hat, s, gamma) split of the weight
QExpansion singlet_direct_series(const RootSystem& rs, int p,
                                 const IntVec& mu, const Rational& order) {
  WeightDecomposition d = decompose_weight(rs, p, mu);
  int s = d.s[0];
  int gamma = d.gamma[0];
  QExpansion out(CoefMode::Exact, order);
  out.eta_power = -1;
  auto add_tail = [&](int num, const Rational& coeff) {
    // sum_{n >= gamma} coeff * q^{p (n + num/(2p))^2}
    Rational c(num, 2 * p);
    for (int n = gamma;; ++n) {
      Rational x = Rational(n) + c;
      Rational e = Rational(p) * x * x;
      if (n > gamma + 4 && e > order) break;
      if (e <= order) out.add_exact(e, coeff);
    }
  };
  if (d.lambda_hat[0] == 0) {
    int j = 1 - s;
    add_tail(p + j - 1, Rational(1));
    add_tail(p - j + 1, Rational(-1));
  } else {
    int j = s - 1;
    add_tail(2 * p - j - 1, Rational(1));
    add_tail(2 * p + j + 1, Rational(-1));
  }
  return out;
}

// criterion 5: character cross-paths (Weyl-sum vs constant-term extraction;
// rank-1 additionally vs direct square-exponent sums)
bool crit_char_paths(Reporter& rep) {
  RootSystem a1 = build_root_system(Family::A, 1);
  RootSystem a2 = build_root_system(Family::A, 2);
  Rational order(10);
  bool ok = true;
  std::string bad;

  for (int p : {2, 3}) {
    for (int m = 0; m < 2 * p; ++m) {
      IntVec mu(1);
      mu << m;
      auto a = atypical_character(a1, p, mu, nullptr, order);
      auto c = constant_term_character(a1, p, mu, order);
      auto dsum = singlet_direct_series(a1, p, mu, order);
      if (!qx_equal(a.series, c)) {
        ok = false;
        bad += " A1(p=" + std::to_string(p) + ",mu=" + std::to_string(m) + ")ct";
      }
      if (!qx_equal(a.series, dsum)) {
        ok = false;
        bad += " A1(p=" + std::to_string(p) + ",mu=" + std::to_string(m) + ")dir";
      }
    }
  }
  {
    std::vector<std::pair<int, int>> mus = {{0, 0}, {1, -2}, {2, 1}};
    for (auto [m1, m2] : mus) {
      IntVec mu(2);
      mu << m1, m2;
      auto a = atypical_character(a2, 2, mu, nullptr, order);
      auto c = constant_term_character(a2, 2, mu, order);
      if (!qx_equal(a.series, c)) {
        ok = false;
        bad += " A2(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
      }
    }
  }
  rep.line(5, "character cross-paths (exact to order 10)", ok,
           ok ? "all coset representatives agree" : "mismatch:" + bad);
  return ok;
}

// criterion 6: Weyl invariance of the regularized character series
bool crit_weyl_inv(Reporter& rep) {
  RootSystem a1 = build_root_system(Family::A, 1);
  RootSystem a2 = build_root_system(Family::A, 2);
  Rational order(10);
  bool ok = true;
  {
    auto W = weyl_group(a1);
    for (int m : {0, 1, 3}) {
      IntVec mu(1);
      mu << m;
      for (auto& w : W)
        if (!weyl_invariance_check(a1, 2, mu, w, order)) ok = false;
    }
  }
  {
    auto W = weyl_group(a2);
    std::vector<std::pair<int, int>> mus = {{0, 0}, {1, -2}, {2, 1}};
    for (auto [m1, m2] : mus) {
      IntVec mu(2);
      mu << m1, m2;
      for (auto& w : W)
        if (!weyl_invariance_check(a2, 2, mu, w, order)) ok = false;
    }
  }
  rep.line(6, "Weyl invariance of character series", ok, "");
  return ok;
}

// criterion 7: Re(eps)<0 quantum dimensions, closed forms vs numeric limits
bool crit_qdim_neg(std::mt19937_64& rng, Reporter& rep) {
  RootSystem a1 = build_root_system(Family::A, 1);
  RootSystem a2 = build_root_system(Family::A, 2);
  double worst = 0.0;
  bool ok = true;

  struct ACase {
    const RootSystem* rs;
    int p;
    std::vector<int> mu;
  };
  std::vector<ACase> at = {
      {&a1, 2, {0}},      {&a1, 2, {1}},      {&a1, 2, {2}},
      {&a1, 2, {3}},      {&a1, 3, {1}},      {&a1, 3, {4}},
      {&a2, 2, {0, 0}},   {&a2, 2, {1, -2}},  {&a2, 2, {2, 1}},
      {&a2, 2, {1, 1}}};
  for (const ACase& c : at) {
    IntVec mu(static_cast<int>(c.mu.size()));
    for (std::size_t i = 0; i < c.mu.size(); ++i) mu[static_cast<int>(i)] = c.mu[i];
    CVec e = rand_eps_neg(rng, c.rs->rank, -0.45, -0.15);
    Complex closed = qdim_atypical_closed(*c.rs, c.p, mu, e);
    Complex num = qdim_numeric(*c.rs, c.p, QdimRequest::atypical(mu, e)).value;
    double rel = std::abs(closed - num) / (1.0 + std::abs(closed));
    worst = std::max(worst, rel);
    if (rel >= 1e-3) ok = false;
  }

  struct TCase {
    const RootSystem* rs;
    int p;
    std::vector<double> lam;
  };
  std::vector<TCase> ty = {{&a1, 2, {0.3}},
                           {&a1, 3, {-0.7}},
                           {&a2, 2, {0.3, -0.4}},
                           {&a2, 3, {0.25, 0.1}},
                           {&a2, 2, {1.2, 0.7}}};
  for (const TCase& c : ty) {
    CVec lam(c.rs->rank);
    for (int i = 0; i < c.rs->rank; ++i) lam[i] = Complex(c.lam[i], 0.0);
    CVec e = rand_eps_neg(rng, c.rs->rank, -0.45, -0.15);
    Complex closed = qdim_typical_closed(*c.rs, c.p, lam, e);
    Complex num =
        qdim_numeric(*c.rs, c.p, QdimRequest::typical_req(lam, e)).value;
    double rel = std::abs(closed - num) / (1.0 + std::abs(closed));
    worst = std::max(worst, rel);
    if (rel >= 1e-3) ok = false;
  }

  // eps -> 0^- limit of the atypical closed form against the Weyl dimension
  for (const ACase& c : {at[1], at[4], at[7]}) {
    IntVec mu(static_cast<int>(c.mu.size()));
    for (std::size_t i = 0; i < c.mu.size(); ++i) mu[static_cast<int>(i)] = c.mu[i];
    CVec e(c.rs->rank);
    for (int i = 0; i < c.rs->rank; ++i) e[i] = Complex(-1e-4, 0.0);
    Complex closed = qdim_atypical_closed(*c.rs, c.p, mu, e);
    double dim = to_double(qdim_atypical_eps0(*c.rs, c.p, mu));
    double rel = std::abs(closed - Complex(dim, 0.0)) / (1.0 + dim);
    worst = std::max(worst, rel);
    if (rel >= 1e-3) ok = false;
  }

  rep.line(7, "quantum dimensions, Re(eps)<0 closed vs numeric", ok,
           "max rel deviation " + fmt(worst));
  return ok;
}

// criterion 8: Re(eps)>0 region — dominance conditions, closed value vs
// numeric limit, typical collapse to zero, unmet-condition flags
bool crit_qdim_pos(Reporter& rep) {
  RootSystem a1 = build_root_system(Family::A, 1);
  RootSystem a2 = build_root_system(Family::A, 2);
  bool ok = true;
  std::string detail;
  double worst = 0.0;

  {
    IntVec mu(1);
    mu << 2;
    CVec e(1);
    e << Complex(3.0, -1.0);
    auto r = qdim_positive_region(a1, 2, mu, e);
    Complex num = qdim_numeric(a1, 2, QdimRequest::atypical(mu, e)).value;
    double rel = std::abs(r.value - num) / (1.0 + std::abs(r.value));
    worst = std::max(worst, rel);
    if (!r.conditions_met || rel >= 5e-3) ok = false;
  }
  {
    IntVec mu(2);
    mu << 4, 3;
    CVec e(2);
    e << Complex(4.0, -1.0), Complex(4.0, -2.0);
    auto r = qdim_positive_region(a2, 4, mu, e);
    Complex num = qdim_numeric(a2, 4, QdimRequest::atypical(mu, e)).value;
    double rel = std::abs(r.value - num) / (1.0 + std::abs(r.value));
    worst = std::max(worst, rel);
    if (!r.conditions_met || rel >= 5e-3) ok = false;
  }

  // typical modules: the ratio must collapse to zero along t -> 0
  {
    CVec lam(1), e(1);
    lam << Complex(0.3, 0.0);
    e << Complex(3.0, -1.0);
    auto r = qdim_numeric(a1, 2, QdimRequest::typical_req(lam, e));
    if (std::abs(r.ratios.back()) >= 1e-4) ok = false;
  }
  {
    CVec lam(2), e(2);
    lam << Complex(0.3, 0.0), Complex(-0.2, 0.0);
    e << Complex(3.0, -1.0), Complex(3.0, -0.5);
    auto r = qdim_numeric(a2, 2, QdimRequest::typical_req(lam, e));
    if (std::abs(r.ratios.back()) >= 1e-4) ok = false;
  }

  // unmet dominance conditions must be flagged, not silently evaluated
  {
    IntVec mu(1);
    mu << 2;
    CVec e(1);
    e << Complex(3.0, -0.1);  // minimizer k* = 0 hits the denominator zero set
    auto r = qdim_positive_region(a1, 2, mu, e);
    if (r.conditions_met) ok = false;
  }
  {
    IntVec mu(2);
    mu << 1, -2;
    CVec e(2);
    e << Complex(3.0, -0.1), Complex(3.0, -0.2);  // p=2: zero set exhausts Z^2
    auto r = qdim_positive_region(a2, 2, mu, e);
    if (r.conditions_met) ok = false;
  }

  rep.line(8, "quantum dimensions, Re(eps)>0 region", ok,
           "max rel deviation " + fmt(worst));
  return ok;
}

Int kostant_brute(const RootSystem& rs, const IntVec& beta) {
  // count N-combinations of positive roots summing to beta
  std::function<Int(std::size_t, IntVec)> rec = [&](std::size_t i,
                                                    IntVec rest) -> Int {
    for (int j = 0; j < rest.size(); ++j)
      if (rest[j] < 0) return 0;
    if (i == rs.positive_roots.size()) {
      for (int j = 0; j < rest.size(); ++j)
        if (rest[j] != 0) return 0;
      return 1;
    }
    Int total = 0;
    while (true) {
      total += rec(i + 1, rest);
      rest -= rs.positive_roots[i];
      for (int j = 0; j < rest.size(); ++j)
        if (rest[j] < 0) return total;
    }
  };
  return rec(0, beta);
}

// criterion 9: infrastructure — Gaussian quadrature identity, elliptic
// translation law (shifted-cone form), eta expansion, Kostant partitions
bool crit_infra(std::mt19937_64& rng, Reporter& rep) {
  bool ok = true;
  std::string bad;
  double worst = 0.0;

  // Gaussian integral vs closed form, ranks 1..3
  for (int n = 1; n <= 3; ++n) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) * 1.5;
    for (int i = 0; i + 1 < n; ++i) {
      M(i, i + 1) = 0.4;
      M(i + 1, i) = 0.4;
    }
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    CVec b(n);
    for (int i = 0; i < n; ++i) b[i] = Complex(d(rng), d(rng));
    auto g = gauss_integral_check(M, b, 1e-10);
    worst = std::max(worst, g.residual);
    if (g.residual >= 1e-8) {
      ok = false;
      bad += " gauss" + std::to_string(n);
    }
  }

  // elliptic translation law with the shifted summation cone
  {
    RootSystem a2 = build_root_system(Family::A, 2);
    RootSystem a3 = build_root_system(Family::A, 3);
    IntMat A1(1, 1);
    A1 << 2;
    std::vector<QuadLattice> lats = {QuadLattice::from_matrix(A1),
                                     QuadLattice::rescaled(a2, 1),
                                     QuadLattice::rescaled(a3, 1)};
    std::uniform_int_distribution<int> di(-2, 2);
    Complex tau(0.2, 0.9);
    double worst_ell = 0.0;
    for (int d = 0; d < 50; ++d) {
      const QuadLattice& L = lats[d % 3];
      int n = L.rank();
      CVec u = rand_u(rng, n);
      CVec e = rand_eps_neg(rng, n, -0.6, -0.2);
      RegEps eps = RegEps::make(e);
      IntVec m(n), l(n);
      for (int i = 0; i < n; ++i) {
        m[i] = di(rng);
        l[i] = di(rng);
      }
      CVec u2(n);
      for (int i = 0; i < n; ++i)
        u2[i] = u[i] + Complex(m[i], 0.0) * tau + Complex(l[i], 0.0);
      Complex lhs = partial_theta_eval(L, u2, eps, tau, 1e-13).value;

      Complex eAl = 0.0, mAm = 0.0, mAu = 0.0, meps = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          eAl += Complex(L.A(i, j) * l[j], 0.0);
          mAm += Complex(m[i] * L.A(i, j) * m[j], 0.0);
          mAu += Complex(m[i], 0.0) * Complex(L.A(i, j), 0.0) * u[j];
        }
        meps += Complex(m[i], 0.0) * e[i];
      }
      const double pi = 3.14159265358979323846;
      Complex pref = std::exp(Complex(0.0, pi) * eAl) *
                     std::exp(Complex(0.0, -pi) * tau * mAm) *
                     std::exp(Complex(0.0, -2.0 * pi) * mAu) *
                     std::exp(-2.0 * pi * meps);
      Complex rhs = pref * partial_theta_eval(L, u, eps, tau, 1e-13, &m).value;
      worst_ell =
          std::max(worst_ell, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    worst = std::max(worst, worst_ell);
    if (worst_ell >= 1e-9) {
      ok = false;
      bad += " elliptic";
    }
  }

  // eta expansion: pentagonal-number support with unit coefficients
  {
    QExpansion eta = eta_expansion(Rational(200));
    QExpansion ref(CoefMode::Exact, Rational(200));
    Rational shift(1, 24);
    for (int k = -100; k <= 100; ++k) {
      Rational e = Rational(k * (3 * k - 1), 2) + shift;
      if (e < 0 || e > Rational(200)) continue;
      ref.add_exact(e, (k % 2 == 0) ? Rational(1) : Rational(-1));
    }
    if (!qx_equal(eta, ref)) {
      ok = false;
      bad += " eta";
    }
  }

  // Kostant partition values vs brute-force enumeration (A2, sum <= 8)
  {
    RootSystem a2 = build_root_system(Family::A, 2);
    for (int b1 = 0; b1 <= 8; ++b1)
      for (int b2 = 0; b1 + b2 <= 8; ++b2) {
        IntVec beta(2);
        beta << b1, b2;
        if (kostant_partition(a2, beta) != kostant_brute(a2, beta)) {
          ok = false;
          bad += " kostant";
          b1 = 9;
          break;
        }
      }
  }

  rep.line(9, "infrastructure (Gauss, translation law, eta, Kostant)", ok,
           ok ? "max residual " + fmt(worst) : "failing:" + bad);
  return ok;
}

}  // namespace

int run_acceptance(std::uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  Reporter rep{out};
  crit_partial_s(rng, rep);
  crit_kostant_s(rng, rep);
  crit_full_s(rng, rep);
  crit_contour(rep);
  crit_char_paths(rep);
  crit_weyl_inv(rep);
  crit_qdim_neg(rng, rep);
  crit_qdim_pos(rep);
  crit_infra(rng, rep);
  out << (rep.failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT")
      << "\n";
  return rep.failures;
}

}  // namespace wtheta
