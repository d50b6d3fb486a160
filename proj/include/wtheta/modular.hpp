#pragma once

#include "wtheta/theta.hpp"

namespace wtheta {

// Tensor-trapezoid grid on [-R,R]^n: R from the Gaussian tail of the
// integrand, h from oscillation frequency and pole clearance.
struct QuadratureSpec {
  double R = 0.0;
  double h = 0.0;
  std::size_t points_per_axis = 0;
  double est_error = 0.0;
};

struct GaussCheckResult {
  Complex numeric{0.0, 0.0};
  Complex closed_form{0.0, 0.0};
  double residual = 0.0;
};

// int_{R^n} e^{-(w,Mw)/2 + (b,w)} d^n w  vs  sqrt((2 pi)^n / det M)
// e^{(b, M^{-1} b)/2}; n <= 3.
GaussCheckResult gauss_integral_check(const Eigen::MatrixXd& M, const CVec& b,
                                      double tol);

// h_eps(u,tau) = e^{pi i (u,Au)/tau} (2i)^{-n} sqrt((-i tau)^n / det A)
//   int q^{(w,A^{-1}w)/2} e^{2 pi i (u,w)} / prod_j sin(pi(w_j + i eps_j)).
// (This sign convention is fixed by the rank-1 calibration against the
// direct cone sum; see s_check_negative.)
NumericResult h_integral(const QuadLattice& L, const CVec& u,
                         const RegEps& eps, Complex tau, double tol);

// k_eps(u,tau): as above with (2i)^{-|Delta+|} and the Weyl-denominator
// kernel  e^{-pi i (sum_j w_j + i sum_j eps_j)} e^{2 pi i rho_{w+i eps}}
//   / prod_{alpha>0} sin(pi (alpha, w + i eps)),
// rho_v = (1/2) sum_{alpha>0} (alpha, v).
NumericResult k_integral(const RootSystem& rs, int p, const CVec& u,
                         const RegEps& eps, Complex tau, double tol);

struct SCheckResult {
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double residual = 0.0;       // |lhs - rhs|
  double rel_residual = 0.0;   // residual / (1 + |rhs|)
};

// P_eps(u/tau, -1/tau)  vs  h_eps(u,tau); valid for all Re(eps_i) < 0.
SCheckResult s_check_negative(const QuadLattice& L, const CVec& u,
                              const RegEps& eps, Complex tau, double tol);
// K_eps(u/tau, -1/tau)  vs  k_eps(u,tau); same region.
SCheckResult s_check_kostant_negative(const RootSystem& rs, int p,
                                      const CVec& u, const RegEps& eps,
                                      Complex tau, double tol);

struct ContourLemmaResult {
  Complex contour{0.0, 0.0};     // numeric rectangle contour integral
  Complex theta_side{0.0, 0.0};  // 2i * delta * alternating theta sum
  int delta = 0;
  double mismatch = 0.0;
};

// Rectangle contour R -> R+i mu for f = q^{x^2/2} z^x / sin(pi(x - i eps)),
// compared against the residue-sum side with the four-case delta table.
ContourLemmaResult contour_lemma_1d(Complex eps, Complex mu, Complex z,
                                    Complex tau, double R);

// Subset-recursion contour correction: for every nonempty v of {1..n} with
// all Re(eps_j) > 0 (j in v),
//   I = sum_v (-1)^{n-|v|} i^{|v|} prod_{j in v}(1 + sgn Re eps_j) I^(v),
// I^(v) = int over the remaining coordinates of
//   theta_{B_v, eps_v}(x_v(w) tau - u_v; tau) q^{(w,A^{-1}w)/2}
//     e^{-2 pi i (u,w)} / prod_{j not in v} sin(pi(w_j - i eps_j)),
// with B_v the v-submatrix of A^{-1} and x_v(w)_i = (A^{-1} w)_i.
NumericResult i_correction(const QuadLattice& L, const CVec& u,
                           const RegEps& eps, Complex tau, double tol);

// Full S-identity residual:
//   P_eps(u/tau,-1/tau)  vs  h_eps(u,tau)
//     + e^{pi i (u,Au)/tau} (2i)^{-n} sqrt((-i tau)^n / det A) * I.
SCheckResult s_check_full(const QuadLattice& L, const CVec& u,
                          const RegEps& eps, Complex tau, double tol);

// Type-A pole orders: m_{r_i} = min{m >= 0 | r_i + m + 1 not in R},
// R given strictly descending.
std::vector<int> pole_orders_typeA(const std::vector<int>& R_desc, int n);

// Dominance data for the Re(eps) >> 0 region: fundamental cell J(y),
// minimizer k* of (k+y, A^{-1}(k+y)), Weyl-denominator nonvanishing at
// e^{-2 pi i k/p}, and the componentwise largeness condition
// x_i^2 (A^{-1})_{ii} > (1/4) sum_{l,j} (A^{-1})_{lj}.
struct RegionData {
  Eigen::VectorXd y;
  std::vector<IntVec> cell;
  IntVec k_star;
  double d_value = 0.0;
  bool unique_min = false;
  bool k_star_in_cell = false;
  bool k_star_in_N = false;
  bool cell_meets_N = false;
  bool large_ok = false;
  bool conditions_met = false;
};

RegionData region_analysis(const RootSystem& rs, int p, const RegEps& eps);

}  // namespace wtheta
