#pragma once

#include "wtheta/rational.hpp"

#include <map>

namespace wtheta {

enum class CoefMode { Exact, Numeric };

// Formal q-series with exact rational exponents, truncated at `cap`
// (terms with exponent > cap are dropped). An overall eta(tau)^eta_power
// stays symbolic; exp_offset is an extra real exponent shift applied at
// evaluation time (used for irrational weights, where exactness is lost).
class QExpansion {
 public:
  QExpansion(CoefMode mode, Rational cap) : mode_(mode), cap_(std::move(cap)) {}

  CoefMode mode() const { return mode_; }
  const Rational& cap() const { return cap_; }
  int eta_power = 0;
  double exp_offset = 0.0;

  void add_exact(const Rational& exponent, const Rational& c);
  void add_numeric(const Rational& exponent, const Complex& c);

  Rational coeff_exact(const Rational& exponent) const;
  Complex coeff(const Rational& exponent) const;  // works in both modes

  const std::map<Rational, Rational>& exact_terms() const { return exact_; }
  const std::map<Rational, Complex>& numeric_terms() const { return numeric_; }
  std::size_t num_terms() const;
  bool empty() const { return num_terms() == 0; }
  Rational min_exponent() const;  // 0 for the empty series

  void set_cap(const Rational& cap);  // truncates stored terms

 private:
  CoefMode mode_;
  Rational cap_;
  std::map<Rational, Rational> exact_;
  std::map<Rational, Complex> numeric_;
};

QExpansion qx_add(const QExpansion& f, const QExpansion& g);
QExpansion qx_mul(const QExpansion& f, const QExpansion& g);
QExpansion qx_scale(const Rational& c, const QExpansion& f);
QExpansion qx_scale(const Complex& c, const QExpansion& f);
// multiply by q^d
QExpansion qx_shift(const QExpansion& f, const Rational& d);
// multiplicative inverse; requires a nonzero leading term
QExpansion qx_inverse(const QExpansion& f);
QExpansion qx_to_numeric(const QExpansion& f);
// exact-mode equality of all stored terms up to min(cap_f, cap_g)
bool qx_equal(const QExpansion& f, const QExpansion& g);

// eta(tau) = q^{1/24} prod_{k>=1} (1 - q^k), exact coefficients.
QExpansion eta_expansion(const Rational& cap);
// numeric eta(tau) via the convergent product
Complex eta_value(Complex tau);

// Sum the series at tau (Im tau > 0), including eta^eta_power and
// exp_offset; the error bound covers the dropped tail past cap.
// Throws NumericError("TailBoundTooLarge") if the bound exceeds tol.
NumericResult qx_eval(const QExpansion& f, Complex tau,
                      double tol = 1e300);

}  // namespace wtheta
