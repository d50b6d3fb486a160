#pragma once

#include "wtheta/theta.hpp"

namespace wtheta {

// mu in the dual of the rescaled lattice is given by integer coordinates
// in the basis lambda_j = omega_j / sqrt(p); the unique split is
//   mu = sqrt(p) lambda_hat + sum_j (1 - s_j) lambda_j + sqrt(p) gamma,
// with s_j in {1..p}, lambda_hat a fixed coset representative of the
// weight lattice modulo the root lattice, gamma in the root lattice.
struct WeightDecomposition {
  int p = 0;
  IntVec mu_coords;
  IntVec lambda_hat;  // coordinates in the omega basis (the representative)
  IntVec s;
  IntVec gamma;  // alpha-coordinates

  RatVec lambda_hat_alpha(const RootSystem& rs) const;
  // alpha-coordinates of lambda_bar / sqrt(p) = sum_j (1-s_j) omega_j / p
  RatVec lambda_bar_scaled_alpha(const RootSystem& rs) const;
  // alpha-coordinates of -sqrt(p) lambda_bar = sum_j (s_j - 1) omega_j
  RatVec minus_sqrtp_lambda_bar_alpha(const RootSystem& rs) const;
  // alpha-coordinates of gamma + lambda_hat
  RatVec gamma_plus_hat_alpha(const RootSystem& rs) const;
};

// Fixed transversal of the weight lattice modulo the root lattice, as
// omega-basis coordinate vectors (0 and the relevant fundamental weights).
std::vector<IntVec> coset_representatives(const RootSystem& rs);

WeightDecomposition decompose_weight(const RootSystem& rs, int p,
                                     const IntVec& mu_coords);
IntVec reassemble_weight(const RootSystem& rs, const WeightDecomposition& d);

// Weyl action on mu-coordinates fixing the lambda_bar part:
//   w.m = C w C^{-1} (m - (1-s)) + (1-s),
// C the Cartan matrix (change of basis alpha -> omega coordinates). This
// is the action under which the character series is invariant: the
// z-coefficient extracted at mu is a weight multiplicity of finite
// dimensional modules, constant on the Weyl orbit of (mu-lambda_bar)/sqrt(p).
IntVec shifted_weyl_action_mu(const RootSystem& rs, int p,
                              const IntVec& mu_coords, const WeylElement& w);

struct CharacterRecord {
  bool typical = false;
  WeightDecomposition dec;  // atypical only
  CVec lam;                 // typical only: coordinates in the lambda_j basis
  CVec eps;                 // empty means eps = 0
  QExpansion series{CoefMode::Exact, 0};
};

// Alternating sum over the Weyl group of shifted Kostant theta series;
// exact mode when eps is null. eta_power = -rank.
CharacterRecord atypical_character(const RootSystem& rs, int p,
                                   const IntVec& mu_coords, const CVec* eps,
                                   const Rational& order);

// Independent path: expand the full two-variable character with the
// Kostant generating series for the inverted Weyl denominator and extract
// the constant z-term. Exact mode, eps = 0 only.
QExpansion constant_term_character(const RootSystem& rs, int p,
                                   const IntVec& mu_coords,
                                   const Rational& order);

// z = 1 specialization of the full character of the lattice extension:
// sum over alpha in Q with lambda_hat + alpha dominant of
// dim V(lambda_hat+alpha) * alternating Weyl sum of pure q-powers.
QExpansion full_character_specialized(const RootSystem& rs, int p,
                                      const WeightDecomposition& lam_rep,
                                      const Rational& order);

// Fock character: single q-power over eta^n, with the regularization
// prefactor e^{2 pi (eps, lam - (sqrt(p)-1/sqrt(p)) rho)} folded into the
// coefficient. lam has coordinates in the lambda_j basis; irrational
// weights downgrade the exponent to exp_offset (numeric mode).
CharacterRecord typical_character(const RootSystem& rs, int p,
                                  const CVec& lam, const CVec* eps,
                                  const Rational& order);

bool weyl_invariance_check(const RootSystem& rs, int p, const IntVec& mu,
                           const WeylElement& w, const Rational& order);

}  // namespace wtheta
