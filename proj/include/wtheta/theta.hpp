#pragma once

#include "wtheta/qseries.hpp"
#include "wtheta/rootsys.hpp"

namespace wtheta {

// Regularization vector: construction rejects any component on the
// imaginary axis. When built with a root-system context, stokes_clearance
// is min over positive roots alpha of |(alpha, Re eps)| (plain dot).
struct RegEps {
  CVec eps;
  std::vector<int> re_signs;
  double stokes_clearance = -1.0;

  static RegEps make(const CVec& e);
  static RegEps make(const CVec& e, const RootSystem& rs);

  int size() const { return static_cast<int>(eps.size()); }
  bool all_negative() const;
  bool all_positive() const;
  Eigen::VectorXd re() const;
  Eigen::VectorXd im() const;
};

// Positive-definite integer quadratic form; optionally carries (p, rs)
// provenance when A = p X for a rescaled root lattice.
struct QuadLattice {
  IntMat A;
  int p = 0;
  const RootSystem* rs = nullptr;

  static QuadLattice from_matrix(const IntMat& A);
  static QuadLattice rescaled(const RootSystem& rs, int p);

  int rank() const { return static_cast<int>(A.rows()); }
  RatMat inverse() const;      // exact A^{-1}
  double det() const;
  double lambda_min() const;   // smallest eigenvalue of A
  double lambda_min_inv() const;  // smallest eigenvalue of A^{-1}
};

// exact inverse of a rational matrix (Gauss-Jordan)
RatMat rat_inverse(const RatMat& M);

// P_eps(u,tau) = sum over k in (Z>=0 + 1/2)^n of
//   q^{(k,Ak)/2} e^{2 pi i (k,Au)} e^{2 pi (k,eps)}.
// With cone_offset = m, the summation cone is shifted to (Z>=0 + 1/2)^n + m;
// this is the sum appearing on the right of the exact translation law
//   P_eps(u + m tau + l, tau) = e^{pi i (e,Al)} q^{-(m,Am)/2}
//     e^{-2 pi i (m,Au)} e^{-2 pi (m,eps)} * [shifted-cone sum](u,tau).
NumericResult partial_theta_eval(const QuadLattice& L, const CVec& u,
                                 const RegEps& eps, Complex tau, double tol,
                                 const IntVec* cone_offset = nullptr);

// Same cone sum with Kostant-partition weights K(k - e/2); A = pX.
NumericResult kostant_theta_eval(const RootSystem& rs, int p, const CVec& u,
                                 const RegEps& eps, Complex tau, double tol);

// u = v tau specialization as a q-series: exponents (k,Ak)/2 + (Ak,v),
// coefficients e^{2 pi (k,eps)} (numeric mode) or 1 (exact, eps null).
QExpansion partial_theta_series(const QuadLattice& L, const RatVec& v,
                                const CVec* eps, const Rational& cap);
QExpansion kostant_theta_series(const RootSystem& rs, int p, const RatVec& v,
                                const CVec* eps, const Rational& cap);

// theta_{B,eps}(u;tau) = sum over m in Z^r of
//   (-1)^{(m,s)} q^{(m+i eps, B(m+i eps))/2} e^{2 pi i (u, m+i eps)},
// with s = (1,...,1) unless given. B must be positive definite.
NumericResult theta_B_eval(const Eigen::MatrixXd& B, const CVec& u,
                           const CVec& eps, Complex tau, double tol,
                           const IntVec* s = nullptr);

}  // namespace wtheta
