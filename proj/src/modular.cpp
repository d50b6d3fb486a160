#include "wtheta/modular.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <set>

namespace wtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

template <typename F>
void for_box(int n, int lo, int hi, F&& f) {
  std::vector<int> idx(n, lo);
  while (true) {
    f(idx);
    int d = 0;
    while (d < n) {
      if (++idx[d] <= hi) break;
      idx[d] = lo;
      ++d;
    }
    if (d == n) break;
  }
}

// sqrt((-i tau)^n) with the principal branch (Re(-i tau) > 0 for Im tau > 0,
// so the power is continuous in tau).
Complex sqrt_minus_i_tau_pow(Complex tau, int n) {
  return std::pow(Complex(0.0, -1.0) * tau, 0.5 * n);
}

// R solving exp(-a R^2 + b R + c) < target.
double tail_radius(double a, double b, double c, double target) {
  double R = 1.0;
  while (-a * R * R + b * R + c > std::log(target) && R < 200.0) R += 0.25;
  return R;
}

// Midpoint-rule integral of f over [-R,R]^n with step h, refined by halving
// h until two successive values agree to tol (or the halving budget runs
// out). Decaying analytic integrands make this spectrally accurate.
NumericResult integrate_box(int n, double R, double h, double tol,
                            const std::function<Complex(const Eigen::VectorXd&)>& f,
                            int max_halvings = 3, double max_points = 3e6) {
  auto pass = [&](double step) {
    int m = static_cast<int>(std::ceil(2.0 * R / step));
    double cell = 2.0 * R / m;
    Complex sum(0.0, 0.0);
    Eigen::VectorXd w(n);
    for_box(n, 0, m - 1, [&](const std::vector<int>& idx) {
      for (int i = 0; i < n; ++i) w[i] = -R + (idx[i] + 0.5) * cell;
      sum += f(w);
    });
    return sum * std::pow(cell, n);
  };
  while (std::pow(2.0 * R / h, n) > max_points && h < R) h *= 2.0;
  Complex prev = pass(h);
  double err = 1e300;
  for (int it = 0; it < max_halvings; ++it) {
    if (std::pow(2.0 * R / (h * 0.5), n) > max_points) break;
    h *= 0.5;
    Complex cur = pass(h);
    err = std::abs(cur - prev);
    prev = cur;
    if (err < 0.5 * tol) break;
  }
  return {prev, err};
}

}  // namespace

GaussCheckResult gauss_integral_check(const Eigen::MatrixXd& M, const CVec& b,
                                      double tol) {
  const int n = static_cast<int>(M.rows());
  if (n > 3) throw PreconditionError("gauss_integral_check: n <= 3");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin <= 0.0) throw PreconditionError("M must be positive definite");

  double bre = b.real().norm();
  double R = tail_radius(0.5 * lmin, bre * std::sqrt(double(n)), 0.0,
                         tol / 50.0);
  double h = std::min(0.25, 2.0 / (1.0 + b.imag().norm()));
  auto f = [&](const Eigen::VectorXd& w) {
    Complex lw = 0.0;
    for (int i = 0; i < n; ++i) lw += b[i] * w[i];
    return std::exp(-0.5 * w.dot(M * w) + lw);
  };
  NumericResult num = integrate_box(n, R, h, tol, f, 4);

  Complex bMb = 0.0;
  Eigen::MatrixXd Mi = M.inverse();
  CVec Mib = Mi * b;
  for (int i = 0; i < n; ++i) bMb += b[i] * Mib[i];
  Complex closed = std::sqrt(std::pow(kTwoPi, n) / M.determinant()) *
                   std::exp(0.5 * bMb);
  return {num.value, closed, std::abs(num.value - closed)};
}

namespace {

struct KernelIntegral {
  Eigen::MatrixXd Ainv;
  Complex pref;
  Complex tau;
  CVec u;
  double strip;  // pole clearance controlling the initial step

  NumericResult run(const std::function<Complex(const Eigen::VectorXd&)>& kernel,
                    double tol) const {
    const int n = static_cast<int>(Ainv.rows());
    double lmin =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Ainv).eigenvalues().minCoeff();
    double a = kPi * tau.imag() * lmin;
    double b = kTwoPi * u.imag().norm() * std::sqrt(double(n));
    double R = tail_radius(a, b, std::log(1e3), tol / (50.0 * (std::abs(pref) + 1e-30)));
    double h = std::min(strip / 4.0, 0.5 / (1.0 + u.real().norm() + u.imag().norm()));
    Complex pi_i_tau = Complex(0.0, kPi) * tau;
    auto f = [&](const Eigen::VectorXd& w) -> Complex {
      Complex uw = 0.0;
      for (int i = 0; i < n; ++i) uw += u[i] * w[i];
      Complex g = std::exp(pi_i_tau * w.dot(Ainv * w) +
                           Complex(0.0, kTwoPi) * uw);
      return g * kernel(w);
    };
    NumericResult base = integrate_box(n, R, h, tol / (std::abs(pref) + 1e-30), f, 4);
    return {pref * base.value, std::abs(pref) * base.error_bound};
  }
};

}  // namespace

NumericResult h_integral(const QuadLattice& L, const CVec& u,
                         const RegEps& eps, Complex tau, double tol) {
  if (tau.imag() <= 0.0) throw PreconditionError("Im tau must be positive");
  const int n = L.rank();
  if (u.size() != n || eps.size() != n)
    throw PreconditionError("dimension mismatch");
  KernelIntegral ki;
  ki.Ainv = L.A.cast<double>().inverse();
  Complex uAu = 0.0;
  CVec Au = L.A.cast<double>() * u;
  for (int i = 0; i < n; ++i) uAu += u[i] * Au[i];
  ki.pref = std::exp(Complex(0.0, kPi) * uAu / tau) *
            std::pow(Complex(0.0, 2.0), -n) *
            sqrt_minus_i_tau_pow(tau, n) / std::sqrt(L.det());
  ki.tau = tau;
  ki.u = u;
  double strip = 1e300;
  for (int s = 0; s < n; ++s)
    strip = std::min(strip, std::abs(eps.eps[s].real()));
  ki.strip = strip;
  auto kernel = [&](const Eigen::VectorXd& w) -> Complex {
    Complex den(1.0, 0.0);
    for (int j = 0; j < n; ++j)
      den *= std::sin(kPi * (Complex(w[j], 0.0) + Complex(0.0, 1.0) * eps.eps[j]));
    return 1.0 / den;
  };
  return ki.run(kernel, tol);
}

NumericResult k_integral(const RootSystem& rs, int p, const CVec& u,
                         const RegEps& eps, Complex tau, double tol) {
  if (tau.imag() <= 0.0) throw PreconditionError("Im tau must be positive");
  const int n = rs.rank;
  if (u.size() != n || eps.size() != n)
    throw PreconditionError("dimension mismatch");
  if (eps.stokes_clearance <= 0.0)
    throw PreconditionError("k_integral needs root-system clearance in eps");
  QuadLattice L = QuadLattice::rescaled(rs, p);
  KernelIntegral ki;
  ki.Ainv = L.A.cast<double>().inverse();
  Complex uAu = 0.0;
  CVec Au = L.A.cast<double>() * u;
  for (int i = 0; i < n; ++i) uAu += u[i] * Au[i];
  ki.pref = std::exp(Complex(0.0, kPi) * uAu / tau) *
            std::pow(Complex(0.0, 2.0), -rs.num_positive_roots()) *
            sqrt_minus_i_tau_pow(tau, n) / std::sqrt(L.det());
  ki.tau = tau;
  ki.u = u;
  double root_norm = 1.0;
  for (const auto& a : rs.positive_roots)
    root_norm = std::max(root_norm, a.cast<double>().norm());
  ki.strip = eps.stokes_clearance / (root_norm * root_norm);
  auto kernel = [&](const Eigen::VectorXd& w) -> Complex {
    CVec v(n);
    for (int i = 0; i < n; ++i)
      v[i] = Complex(w[i], 0.0) + Complex(0.0, 1.0) * eps.eps[i];
    Complex sum_v = 0.0;
    for (int i = 0; i < n; ++i) sum_v += v[i];
    Complex rho_v = 0.0;
    Complex den(1.0, 0.0);
    for (const auto& a : rs.positive_roots) {
      Complex av = 0.0;
      for (int i = 0; i < n; ++i) av += static_cast<double>(a[i]) * v[i];
      rho_v += 0.5 * av;
      den *= std::sin(kPi * av);
    }
    return std::exp(Complex(0.0, -kPi) * sum_v + Complex(0.0, kTwoPi) * rho_v) /
           den;
  };
  return ki.run(kernel, tol);
}

SCheckResult s_check_negative(const QuadLattice& L, const CVec& u,
                              const RegEps& eps, Complex tau, double tol) {
  if (!eps.all_negative())
    throw PreconditionError("s_check_negative needs Re(eps) < 0");
  NumericResult lhs =
      partial_theta_eval(L, (u / tau).eval(), eps, -1.0 / tau, tol);
  NumericResult rhs = h_integral(L, u, eps, tau, tol);
  double res = std::abs(lhs.value - rhs.value);
  return {lhs.value, rhs.value, res, res / (1.0 + std::abs(rhs.value))};
}

SCheckResult s_check_kostant_negative(const RootSystem& rs, int p,
                                      const CVec& u, const RegEps& eps,
                                      Complex tau, double tol) {
  if (!eps.all_negative())
    throw PreconditionError("s_check_kostant_negative needs Re(eps) < 0");
  NumericResult lhs =
      kostant_theta_eval(rs, p, (u / tau).eval(), eps, -1.0 / tau, tol);
  NumericResult rhs = k_integral(rs, p, u, eps, tau, tol);
  double res = std::abs(lhs.value - rhs.value);
  return {lhs.value, rhs.value, res, res / (1.0 + std::abs(rhs.value))};
}

ContourLemmaResult contour_lemma_1d(Complex eps, Complex mu, Complex z,
                                    Complex tau, double R) {
  if (tau.imag() <= 0.0) throw PreconditionError("Im tau must be positive");
  if (eps.real() == 0.0 || mu.real() == 0.0 || mu.real() == eps.real())
    throw PreconditionError("contour_lemma_1d: boundary configuration");
  Complex pi_i_tau = Complex(0.0, kPi) * tau;
  Complex logz = std::log(z);
  auto f = [&](Complex x) {
    return std::exp(pi_i_tau * x * x + logz * x) /
           std::sin(kPi * (x - Complex(0.0, 1.0) * eps));
  };
  // counterclockwise rectangle with corners -R, R, R+i mu, -R+i mu
  // (orientation flips with the sign of Im(i mu) = Re mu)
  Complex imu = Complex(0.0, 1.0) * mu;
  auto line = [&](Complex a, Complex b, int steps) {
    Complex d = (b - a) / static_cast<double>(steps);
    Complex s(0.0, 0.0);
    for (int i = 0; i < steps; ++i) s += f(a + (i + 0.5) * d);
    return s * d;
  };
  auto whole = [&](int steps_per_unit) {
    int hsteps = std::max(64, static_cast<int>(2.0 * R * steps_per_unit));
    int vsteps = std::max(64, static_cast<int>(std::abs(imu) * steps_per_unit));
    Complex a(-R, 0.0), b(R, 0.0);
    return line(a, b, hsteps) + line(b, b + imu, vsteps) +
           line(b + imu, a + imu, hsteps) + line(a + imu, a, vsteps);
  };
  Complex contour = whole(64);
  Complex refined = whole(128);
  for (int spu = 256; std::abs(refined - contour) > 1e-10 && spu <= 1024;
       spu *= 2) {
    contour = refined;
    refined = whole(spu);
  }
  contour = refined;

  int delta;
  if (eps.real() > 0.0)
    delta = (mu.real() > eps.real()) ? 1 : 0;
  else
    delta = (mu.real() < eps.real()) ? -1 : 0;

  Complex theta(0.0, 0.0);
  if (delta != 0) {
    for (int n = -200; n <= 200; ++n) {
      Complex w = static_cast<double>(n) + Complex(0.0, 1.0) * eps;
      Complex term = std::exp(pi_i_tau * w * w + logz * w);
      if (n & 1) term = -term;
      theta += term;
    }
    theta *= Complex(0.0, 2.0) * static_cast<double>(delta);
  }
  // the contour orientation above is bottom->right->top->left; residues are
  // enclosed with winding +1 when Re mu > 0 (strip above the axis traversed
  // counterclockwise), -1 otherwise -- the delta table already carries this.
  return {contour, theta, delta, std::abs(contour - theta)};
}

NumericResult i_correction(const QuadLattice& L, const CVec& u,
                           const RegEps& eps, Complex tau, double tol) {
  if (tau.imag() <= 0.0) throw PreconditionError("Im tau must be positive");
  const int n = L.rank();
  if (u.size() != n || eps.size() != n)
    throw PreconditionError("dimension mismatch");
  std::vector<int> pos;
  for (int j = 0; j < n; ++j)
    if (eps.re_signs[j] > 0) pos.push_back(j);
  if (pos.empty()) return {Complex(0.0, 0.0), 0.0};

  RatMat AinvR = L.inverse();
  Eigen::MatrixXd Ainv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ainv(i, j) = to_double(AinvR(i, j));

  Complex total(0.0, 0.0);
  double total_err = 0.0;
  int np = static_cast<int>(pos.size());
  for (int mask = 1; mask < (1 << np); ++mask) {
    std::vector<int> v, comp;
    for (int j = 0, b = 0; j < n; ++j) {
      if (b < np && pos[b] == j) {
        if (mask & (1 << b)) v.push_back(j); else comp.push_back(j);
        ++b;
      } else {
        comp.push_back(j);
      }
    }
    int vs = static_cast<int>(v.size());
    int cs = static_cast<int>(comp.size());
    Complex coeff = std::pow(Complex(0.0, 1.0), vs) *
                    std::pow(2.0, vs) *
                    ((n - vs) % 2 == 0 ? 1.0 : -1.0);

    Eigen::MatrixXd Bv(vs, vs);
    for (int a = 0; a < vs; ++a)
      for (int b = 0; b < vs; ++b) Bv(a, b) = Ainv(v[a], v[b]);
    CVec eps_v(vs), u_v(vs);
    for (int a = 0; a < vs; ++a) {
      eps_v[a] = eps.eps[v[a]];
      u_v[a] = u[v[a]];
    }

    Complex value(0.0, 0.0);
    double err = 0.0;
    if (cs == 0) {
      NumericResult th = theta_B_eval(Bv, (-u_v).eval(), eps_v, tau, tol);
      value = th.value;
      err = th.error_bound;
    } else {
      double lmin_c = 1e300;
      {
        Eigen::MatrixXd Ac(cs, cs);
        for (int a = 0; a < cs; ++a)
          for (int b = 0; b < cs; ++b) Ac(a, b) = Ainv(comp[a], comp[b]);
        lmin_c = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Ac)
                     .eigenvalues()
                     .minCoeff();
      }
      double a_coef = kPi * tau.imag() * lmin_c;
      double b_coef = kTwoPi * u.imag().norm() * std::sqrt(double(cs));
      double R = tail_radius(a_coef, b_coef, std::log(1e3), tol / 50.0);
      double strip = 1e300;
      for (int j : comp) strip = std::min(strip, std::abs(eps.eps[j].real()));
      double h = std::min(strip / 4.0,
                          0.5 / (1.0 + u.real().norm() + u.imag().norm()));
      Complex pi_i_tau = Complex(0.0, kPi) * tau;
      Eigen::VectorXd wfull(n);
      auto f = [&](const Eigen::VectorXd& wc) -> Complex {
        wfull.setZero();
        for (int a = 0; a < cs; ++a) wfull[comp[a]] = wc[a];
        Eigen::VectorXd Aw = Ainv * wfull;
        CVec theta_arg(vs);
        for (int a = 0; a < vs; ++a) theta_arg[a] = Aw[v[a]] * tau - u[v[a]];
        NumericResult th =
            theta_B_eval(Bv, theta_arg, eps_v, tau, tol * 1e-2);
        Complex uw = 0.0;
        for (int a = 0; a < cs; ++a) uw += u[comp[a]] * wc[a];
        Complex den(1.0, 0.0);
        for (int a = 0; a < cs; ++a)
          den *= std::sin(kPi * (Complex(wc[a], 0.0) -
                                 Complex(0.0, 1.0) * eps.eps[comp[a]]));
        return th.value *
               std::exp(pi_i_tau * wfull.dot(Ainv * wfull) -
                        Complex(0.0, kTwoPi) * uw) /
               den;
      };
      NumericResult integral = integrate_box(cs, R, h, tol, f, 3, 4e5);
      value = integral.value;
      err = integral.error_bound;
    }
    total += coeff * value;
    total_err += std::abs(coeff) * err;
  }
  return {total, total_err};
}

SCheckResult s_check_full(const QuadLattice& L, const CVec& u,
                          const RegEps& eps, Complex tau, double tol) {
  const int n = L.rank();
  NumericResult lhs =
      partial_theta_eval(L, (u / tau).eval(), eps, -1.0 / tau, tol);
  NumericResult h = h_integral(L, u, eps, tau, tol);
  NumericResult corr = i_correction(L, u, eps, tau, tol);
  Complex uAu = 0.0;
  CVec Au = L.A.cast<double>() * u;
  for (int i = 0; i < n; ++i) uAu += u[i] * Au[i];
  Complex pref = std::exp(Complex(0.0, kPi) * uAu / tau) *
                 std::pow(Complex(0.0, 2.0), -n) *
                 sqrt_minus_i_tau_pow(tau, n) / std::sqrt(L.det());
  Complex rhs = h.value + pref * corr.value;
  double res = std::abs(lhs.value - rhs);
  return {lhs.value, rhs, res, res / (1.0 + std::abs(rhs))};
}

std::vector<int> pole_orders_typeA(const std::vector<int>& R_desc, int n) {
  for (std::size_t i = 0; i + 1 < R_desc.size(); ++i)
    if (R_desc[i] <= R_desc[i + 1])
      throw PreconditionError("pole_orders_typeA: R must be strictly descending");
  if (n < 0 || static_cast<std::size_t>(n) > R_desc.size())
    throw PreconditionError("pole_orders_typeA: bad n");
  std::set<int> in_R(R_desc.begin(), R_desc.end());
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    while (in_R.count(R_desc[i] + m + 1)) ++m;
    out.push_back(m);
  }
  return out;
}

RegionData region_analysis(const RootSystem& rs, int p, const RegEps& eps) {
  const int n = rs.rank;
  if (eps.size() != n) throw PreconditionError("dimension mismatch");
  QuadLattice L = QuadLattice::rescaled(rs, p);
  RatMat AinvR = L.inverse();
  Eigen::MatrixXd Ainv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ainv(i, j) = to_double(AinvR(i, j));

  RegionData out;
  out.y = eps.im();
  Eigen::VectorXd x = eps.re();

  // fundamental cell J(y): all integer m with |m_i + y_i| <= 1/2 (ties kept)
  std::vector<std::vector<int>> cand(n);
  for (int i = 0; i < n; ++i) {
    int c = static_cast<int>(std::lround(-out.y[i]));
    for (int m = c - 1; m <= c + 1; ++m)
      if (std::abs(m + out.y[i]) <= 0.5 + 1e-12) cand[i].push_back(m);
  }
  {
    std::vector<int> pick(n, 0);
    std::function<void(int)> rec = [&](int d) {
      if (d == n) {
        IntVec m(n);
        for (int i = 0; i < n; ++i) m[i] = cand[i][pick[i]];
        out.cell.push_back(m);
        return;
      }
      for (std::size_t j = 0; j < cand[d].size(); ++j) {
        pick[d] = static_cast<int>(j);
        rec(d + 1);
      }
    };
    rec(0);
  }

  // minimizer of (k+y, A^{-1}(k+y)) over the box ||k+y||_inf <= 3
  double best = 1e300, second = 1e300;
  IntVec kbest = IntVec::Zero(n);
  std::vector<int> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = static_cast<int>(std::floor(-out.y[i] - 3.0));
    hi[i] = static_cast<int>(std::ceil(-out.y[i] + 3.0));
  }
  std::vector<int> idx(lo);
  while (true) {
    Eigen::VectorXd ky(n);
    for (int i = 0; i < n; ++i) ky[i] = idx[i] + out.y[i];
    double val = ky.dot(Ainv * ky);
    if (val < best) {
      second = best;
      best = val;
      for (int i = 0; i < n; ++i) kbest[i] = idx[i];
    } else if (val < second) {
      second = val;
    }
    int d = 0;
    while (d < n) {
      if (++idx[d] <= hi[d]) break;
      idx[d] = lo[d];
      ++d;
    }
    if (d == n) break;
  }
  out.k_star = kbest;
  out.unique_min = (second - best) > 1e-9;
  out.d_value = -0.5 * x.dot(Ainv * x) + 0.5 * best;

  auto in_N = [&](const IntVec& k) {
    for (const auto& a : rs.positive_roots) {
      long s = 0;
      for (int i = 0; i < n; ++i) s += static_cast<long>(a[i]) * k[i];
      if (((s % p) + p) % p == 0) return false;
    }
    return true;
  };
  out.k_star_in_N = in_N(out.k_star);
  out.k_star_in_cell = false;
  out.cell_meets_N = false;
  for (const auto& m : out.cell) {
    if (m == out.k_star) out.k_star_in_cell = true;
    if (in_N(m)) out.cell_meets_N = true;
  }

  double total = Ainv.sum();
  out.large_ok = true;
  for (int i = 0; i < n; ++i)
    if (!(x[i] * x[i] * Ainv(i, i) > 0.25 * total)) out.large_ok = false;

  out.conditions_met = eps.all_positive() && out.unique_min &&
                       out.k_star_in_cell && out.k_star_in_N && out.large_ok;
  return out;
}

}  // namespace wtheta
