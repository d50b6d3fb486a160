#include "wtheta/theta.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace wtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

// Odometer over {0,...,hi}^n (or {lo..hi}); calls f with the index vector.
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

void check_tau(Complex tau) {
  if (tau.imag() <= 0.0) throw PreconditionError("Im tau must be positive");
}

// Smallest K with shell-bound tail below target for a cone/lattice Gaussian:
// |term| <= exp(-a m^2 + b m + c) on the shell ||k||_inf in [m, m+1),
// shell count <= count_pow * (m+1)^{n-1} (times a polynomial weight degree).
struct TailModel {
  double a = 0.0;  // quadratic decay coefficient (> 0)
  double b = 0.0;  // linear growth coefficient
  double c = 0.0;
  int n = 1;
  int poly_deg = 0;  // extra polynomial weight degree (Kostant)

  double shell_log(double m) const {
    double count = (n) * std::log(2.0 * (m + 1.0)) +
                   poly_deg * std::log(static_cast<double>(n) * (m + 2.0));
    return -a * m * m + b * (m + 1.0) + c + count;
  }
  double tail(int K) const {
    double s = 0.0;
    for (int m = K; m < K + 400; ++m) {
      double lg = shell_log(static_cast<double>(m));
      if (lg < -700.0) break;
      s += std::exp(lg);
    }
    return s;
  }
  int choose_K(double target, int max_K) const {
    for (int K = 1; K <= max_K; ++K)
      if (shell_log(static_cast<double>(K)) < std::log(target) - 2.0 &&
          tail(K) < target)
        return K;
    throw NumericError("EnumerationTooLarge");
  }
};

double lambda_min_sym(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return es.eigenvalues().minCoeff();
}

}  // namespace

RegEps RegEps::make(const CVec& e) {
  RegEps out;
  out.eps = e;
  out.re_signs.resize(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i].real() == 0.0)
      throw PreconditionError("EpsOnImaginaryAxis: Re(eps) component is zero");
    out.re_signs[i] = e[i].real() > 0.0 ? 1 : -1;
  }
  return out;
}

RegEps RegEps::make(const CVec& e, const RootSystem& rs) {
  RegEps out = make(e);
  double clearance = 1e300;
  for (const auto& a : rs.positive_roots) {
    double s = 0.0;
    for (int i = 0; i < rs.rank; ++i) s += a[i] * e[i].real();
    clearance = std::min(clearance, std::abs(s));
  }
  if (clearance == 0.0)
    throw PreconditionError("EpsOnStokesLine: (alpha, Re eps) vanishes");
  out.stokes_clearance = clearance;
  return out;
}

bool RegEps::all_negative() const {
  for (int s : re_signs)
    if (s > 0) return false;
  return true;
}

bool RegEps::all_positive() const {
  for (int s : re_signs)
    if (s < 0) return false;
  return true;
}

Eigen::VectorXd RegEps::re() const {
  return eps.real();
}

Eigen::VectorXd RegEps::im() const {
  return eps.imag();
}

RatMat rat_inverse(const RatMat& M) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n) throw PreconditionError("rat_inverse: not square");
  RatMat W(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      W(i, j) = M(i, j);
      W(i, n + j) = (i == j) ? 1 : 0;
    }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && W(p, c) == 0) ++p;
    if (p == n) throw PreconditionError("rat_inverse: singular matrix");
    if (p != c) W.row(p).swap(W.row(c));
    Rational piv = W(c, c);
    for (int j = 0; j < 2 * n; ++j) W(c, j) /= piv;
    for (int r = 0; r < n; ++r) {
      if (r == c || W(r, c) == 0) continue;
      Rational f = W(r, c);
      for (int j = 0; j < 2 * n; ++j) W(r, j) -= f * W(c, j);
    }
  }
  return W.rightCols(n);
}

QuadLattice QuadLattice::from_matrix(const IntMat& A) {
  if (A.rows() != A.cols()) throw PreconditionError("A must be square");
  if (A != A.transpose()) throw PreconditionError("A must be symmetric");
  Eigen::MatrixXd Ad = A.cast<double>();
  if (lambda_min_sym(Ad) <= 0.0)
    throw PreconditionError("A must be positive definite");
  QuadLattice L;
  L.A = A;
  return L;
}

QuadLattice QuadLattice::rescaled(const RootSystem& rs, int p) {
  if (p < 1) throw PreconditionError("p must be a positive integer");
  QuadLattice L = from_matrix((p * rs.cartan).eval());
  L.p = p;
  L.rs = &rs;
  return L;
}

RatMat QuadLattice::inverse() const {
  const int n = rank();
  RatMat M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = Rational(A(i, j));
  return rat_inverse(M);
}

double QuadLattice::det() const {
  return A.cast<double>().determinant();
}

double QuadLattice::lambda_min() const {
  return lambda_min_sym(A.cast<double>());
}

double QuadLattice::lambda_min_inv() const {
  return lambda_min_sym(A.cast<double>().inverse());
}

namespace {

// Shared cone sum over k in (Z>=0 + 1/2)^n + offset; weight(idx) multiplies
// each term.
template <typename WeightFn>
NumericResult cone_sum(const IntMat& A, const CVec& u, const CVec& eps,
                       Complex tau, double tol, int poly_deg,
                       WeightFn&& weight, const IntVec* offset = nullptr) {
  check_tau(tau);
  const int n = static_cast<int>(A.rows());
  if (u.size() != n || eps.size() != n)
    throw PreconditionError("dimension mismatch");
  Eigen::MatrixXd Ad = A.cast<double>();
  CVec Au = Ad * u;
  // |term| = exp(-pi Im tau (k,Ak) + 2 pi (k, g)), g = Re eps - Im(Au)
  Eigen::VectorXd g = eps.real() - Au.imag();
  double off_max = 0.0;
  if (offset)
    for (int i = 0; i < n; ++i)
      off_max = std::max(off_max, std::abs(static_cast<double>((*offset)[i])));
  TailModel tm;
  tm.a = kPi * tau.imag() * lambda_min_sym(Ad);
  tm.b = kTwoPi * g.norm() * std::sqrt(static_cast<double>(n)) +
         2.0 * kPi * tau.imag() * lambda_min_sym(Ad) * off_max;
  tm.c = tm.b * off_max;
  tm.n = n;
  tm.poly_deg = poly_deg;
  double target = std::max(tol * 0.1, 1e-280);
  int max_K = static_cast<int>(std::pow(4e7, 1.0 / n));
  int K = tm.choose_K(target, max_K);

  Complex pi_i_tau = Complex(0.0, kPi) * tau;
  Complex sum(0.0, 0.0);
  CVec k(n), Ak(n);
  for_box(n, 0, K, [&](const std::vector<int>& idx) {
    Complex w = weight(idx);
    if (w == Complex(0.0, 0.0)) return;
    for (int i = 0; i < n; ++i)
      k[i] = idx[i] + 0.5 + (offset ? (*offset)[i] : 0);
    for (int i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (int j = 0; j < n; ++j) s += Ad(i, j) * k[j];
      Ak[i] = s;
    }
    Complex kAu = 0.0, keps = 0.0;
    for (int i = 0; i < n; ++i) {
      kAu += k[i] * Au[i];
      keps += k[i] * eps[i];
    }
    Complex expo =
        pi_i_tau * cdot(k, Ak) + Complex(0.0, kTwoPi) * kAu + kTwoPi * keps;
    sum += w * std::exp(expo);
  });
  return {sum, tm.tail(K)};
}

}  // namespace

NumericResult partial_theta_eval(const QuadLattice& L, const CVec& u,
                                 const RegEps& eps, Complex tau, double tol,
                                 const IntVec* cone_offset) {
  return cone_sum(L.A, u, eps.eps, tau, tol, 0,
                  [](const std::vector<int>&) { return Complex(1.0, 0.0); },
                  cone_offset);
}

NumericResult kostant_theta_eval(const RootSystem& rs, int p, const CVec& u,
                                 const RegEps& eps, Complex tau, double tol) {
  QuadLattice L = QuadLattice::rescaled(rs, p);
  KostantTable table(rs);
  const int n = rs.rank;
  IntVec beta(n);
  return cone_sum(L.A, u, eps.eps, tau, tol, rs.num_positive_roots(),
                  [&](const std::vector<int>& idx) {
                    for (int i = 0; i < n; ++i) beta[i] = idx[i];
                    Int v = table(beta);
                    return Complex(v.convert_to<double>(), 0.0);
                  });
}

namespace {

template <typename WeightFn>
QExpansion cone_series(const IntMat& A, const RatVec& v, const CVec* eps,
                       const Rational& cap, WeightFn&& weight) {
  const int n = static_cast<int>(A.rows());
  if (v.size() != n) throw PreconditionError("dimension mismatch");
  if (eps && eps->size() != n) throw PreconditionError("dimension mismatch");
  // exponent (k,Ak)/2 + (k,Av) >= lmin/2 ||k||^2 - ||Av|| ||k||
  Eigen::MatrixXd Ad = A.cast<double>();
  double lmin = lambda_min_sym(Ad);
  RatVec Av(n);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += Rational(A(i, j)) * v[j];
    Av[i] = s;
  }
  double bnorm = to_dvec(Av).norm();
  double capd = to_double(cap);
  // lmin/2 r^2 - bnorm r <= capd  =>  r <= (bnorm + sqrt(bnorm^2 + 2 lmin capd))/lmin
  double disc = bnorm * bnorm + 2.0 * lmin * std::max(capd, 0.0);
  int K = static_cast<int>((bnorm + std::sqrt(std::max(disc, 0.0))) / lmin) + 2;
  if (std::pow(static_cast<double>(K + 1), n) > 4e7)
    throw NumericError("EnumerationTooLarge");

  QExpansion out(eps ? CoefMode::Numeric : CoefMode::Exact, cap);
  RatVec k(n);
  for_box(n, 0, K, [&](const std::vector<int>& idx) {
    Rational w = weight(idx);
    if (w == 0) return;
    for (int i = 0; i < n; ++i) k[i] = Rational(2 * idx[i] + 1, 2);
    RatVec Ak(n);
    for (int i = 0; i < n; ++i) {
      Rational s = 0;
      for (int j = 0; j < n; ++j) s += Rational(A(i, j)) * k[j];
      Ak[i] = s;
    }
    Rational expo = rdot(k, Ak) / 2 + rdot(Ak, v);
    if (expo > cap) return;
    if (!eps) {
      out.add_exact(expo, w);
    } else {
      double kepsr = 0.0, kepsi = 0.0;
      for (int i = 0; i < n; ++i) {
        double kd = to_double(k[i]);
        kepsr += kd * (*eps)[i].real();
        kepsi += kd * (*eps)[i].imag();
      }
      Complex c = to_double(w) *
                  std::exp(Complex(kTwoPi * kepsr, kTwoPi * kepsi));
      out.add_numeric(expo, c);
    }
  });
  return out;
}

}  // namespace

QExpansion partial_theta_series(const QuadLattice& L, const RatVec& v,
                                const CVec* eps, const Rational& cap) {
  return cone_series(L.A, v, eps, cap,
                     [](const std::vector<int>&) { return Rational(1); });
}

QExpansion kostant_theta_series(const RootSystem& rs, int p, const RatVec& v,
                                const CVec* eps, const Rational& cap) {
  QuadLattice L = QuadLattice::rescaled(rs, p);
  KostantTable table(rs);
  const int n = rs.rank;
  IntVec beta(n);
  return cone_series(L.A, v, eps, cap, [&](const std::vector<int>& idx) {
    for (int i = 0; i < n; ++i) beta[i] = idx[i];
    return Rational(table(beta));
  });
}

NumericResult theta_B_eval(const Eigen::MatrixXd& B, const CVec& u,
                           const CVec& eps, Complex tau, double tol,
                           const IntVec* s) {
  check_tau(tau);
  const int r = static_cast<int>(B.rows());
  if (B.cols() != r || u.size() != r || eps.size() != r)
    throw PreconditionError("dimension mismatch");
  double lmin = lambda_min_sym(B);
  if (lmin <= 0.0) throw PreconditionError("B must be positive definite");

  // |term| ~ exp(-pi Im tau lmin ||m||^2 + C ||m||) for large m
  double C = kTwoPi * (u.norm() + (std::abs(tau) + 1.0) *
                                      B.norm() * (eps.norm() + 1.0));
  TailModel tm;
  tm.a = kPi * tau.imag() * lmin;
  tm.b = C * std::sqrt(static_cast<double>(r));
  tm.c = kPi * std::abs(tau) * B.norm() * eps.squaredNorm() +
         kTwoPi * u.norm() * eps.norm();
  tm.n = r;
  int max_M = static_cast<int>(std::pow(4e7, 1.0 / r) / 2.0);
  int M = tm.choose_K(std::max(tol * 0.1, 1e-280), max_M);

  Complex pi_i_tau = Complex(0.0, kPi) * tau;
  Complex sum(0.0, 0.0);
  CVec mv(r), Bm(r);
  for_box(r, -M, M, [&](const std::vector<int>& idx) {
    int par = 0;
    for (int i = 0; i < r; ++i) par += (s ? (*s)[i] : 1) * idx[i];
    for (int i = 0; i < r; ++i) mv[i] = Complex(idx[i], 0.0) + Complex(0.0, 1.0) * eps[i];
    for (int i = 0; i < r; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < r; ++j) acc += B(i, j) * mv[j];
      Bm[i] = acc;
    }
    Complex expo = pi_i_tau * cdot(mv, Bm) + Complex(0.0, kTwoPi) * cdot(u, mv);
    Complex term = std::exp(expo);
    if (par % 2 != 0) term = -term;
    sum += term;
  });
  return {sum, tm.tail(M)};
}

}  // namespace wtheta
