#pragma once

#include "wtheta/chars.hpp"
#include "wtheta/modular.hpp"

namespace wtheta {

enum class QdimRegion { Neg, Pos, Eps0 };

struct QdimRequest {
  bool typical = false;
  IntVec mu_coords;  // atypical
  CVec lam;          // typical, lambda_j-basis coordinates
  CVec eps;
  QdimRegion region = QdimRegion::Neg;
  std::vector<double> t_sequence;  // decreasing; default filled per region

  static QdimRequest atypical(const IntVec& mu, const CVec& eps);
  static QdimRequest typical_req(const CVec& lam, const CVec& eps);
};

struct QdimNumericResult {
  Complex value{0.0, 0.0};
  std::vector<Complex> ratios;      // per t in t_sequence
  std::vector<double> differences;  // successive |ratio_{j+1} - ratio_j|
};

// Character ratio ch[M]^eps(it) / ch[vacuum]^eps(it) along the imaginary
// axis, Richardson-extrapolated in t. Throws NumericError("NoConvergence")
// if the estimates diverge.
QdimNumericResult qdim_numeric(const RootSystem& rs, int p,
                               const QdimRequest& req);

// Re(eps) < 0 closed form:
//   e^{2 pi (gamma + lambda_hat, eps)} chi_{-sqrt(p) lambda_bar}(i eps / p)
// (plain dot with alpha-coordinates; sign convention fixed by the direct
// tau -> 0 limit of the character ratio).
Complex qdim_atypical_closed(const RootSystem& rs, int p, const IntVec& mu,
                             const CVec& eps);

// Re(eps) < 0 closed form for Fock modules:
//   e^{2 pi (eps, lam - a0 rho)} e^{-pi (e, eps)}
//     prod_{alpha>0} sinh(pi (alpha, eps)) / sinh(pi (alpha, eps) / p).
Complex qdim_typical_closed(const RootSystem& rs, int p, const CVec& lam,
                            const CVec& eps);

// eps = 0 entry points. Atypical: dim V(-sqrt(p) lambda_bar). The typical
// value is convention-dependent: the factor-wise limit of the closed form
// gives p^{+|Delta+|} while the inverted product gives p^{-|Delta+|};
// both are reported rather than arbitrated.
Rational qdim_atypical_eps0(const RootSystem& rs, int p, const IntVec& mu);
struct TypicalEps0 {
  double limit_value = 0.0;    // p^{+|Delta+|}
  double inverted_value = 0.0; // p^{-|Delta+|}
};
TypicalEps0 qdim_typical_eps0(const RootSystem& rs, int p);

struct QdimPosResult {
  bool conditions_met = false;
  Complex value{0.0, 0.0};
  RegionData region;
};

// Re(eps) > 0 region: runs region_analysis; when the cell/minimizer/
// largeness conditions hold, the value is
//   e^{-2 pi i (gamma + lambda_hat, k*)} chi_{-sqrt(p) lambda_bar}(k*/p)
// (both signs fixed numerically against the direct character ratio).
QdimPosResult qdim_positive_region(const RootSystem& rs, int p,
                                   const IntVec& mu, const CVec& eps);

// S-kernel for typical modules:
//   S^eps_{lam+a0 rho, mu+a0 rho} = e^{2 pi (eps, lam-mu)} e^{-2 pi i (lam, A^{-1} mu)}.
Complex s_kernel_typical(const RootSystem& rs, int p, const CVec& lam,
                         const CVec& mu_var, const CVec& eps);

}  // namespace wtheta
