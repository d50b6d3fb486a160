#include "wtheta/chars.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace wtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RatVec rat_mat_vec(const RatMat& M, const RatVec& v) {
  const int n = static_cast<int>(M.rows());
  RatVec out(n);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < static_cast<int>(M.cols()); ++j) s += M(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

RatVec int_mat_vec(const IntMat& M, const RatVec& v) {
  const int n = static_cast<int>(M.rows());
  RatVec out(n);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < static_cast<int>(M.cols()); ++j)
      s += Rational(M(i, j)) * v[j];
    out[i] = s;
  }
  return out;
}

bool rat_is_int(const Rational& r) { return denominator(r) == 1; }

IntVec to_int_vec(const RatVec& v) {
  IntVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!rat_is_int(v[i]))
      throw NumericError("expected an integral vector");
    out[i] = static_cast<int>(numerator(v[i]).convert_to<long>());
  }
  return out;
}

template <typename F>
void for_box_lohi(const std::vector<int>& lo, const std::vector<int>& hi,
                  F&& f) {
  const int n = static_cast<int>(lo.size());
  std::vector<int> idx(lo);
  while (true) {
    f(idx);
    int d = 0;
    while (d < n) {
      if (++idx[d] <= hi[d]) break;
      idx[d] = lo[d];
      ++d;
    }
    if (d == n) break;
  }
}

double lambda_min_cartan(const RootSystem& rs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rs.cartan.cast<double>());
  return es.eigenvalues().minCoeff();
}

}  // namespace

RatVec WeightDecomposition::lambda_hat_alpha(const RootSystem& rs) const {
  return rat_mat_vec(rs.cartan_inv, rat_vec(lambda_hat));
}

RatVec WeightDecomposition::lambda_bar_scaled_alpha(const RootSystem& rs) const {
  RatVec oneminus(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) oneminus[i] = Rational(1 - s[i], p);
  return rat_mat_vec(rs.cartan_inv, oneminus);
}

RatVec WeightDecomposition::minus_sqrtp_lambda_bar_alpha(const RootSystem& rs) const {
  RatVec sm(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) sm[i] = Rational(s[i] - 1);
  return rat_mat_vec(rs.cartan_inv, sm);
}

RatVec WeightDecomposition::gamma_plus_hat_alpha(const RootSystem& rs) const {
  RatVec g = lambda_hat_alpha(rs);
  for (Eigen::Index i = 0; i < gamma.size(); ++i) g[i] += Rational(gamma[i]);
  return g;
}

std::vector<IntVec> coset_representatives(const RootSystem& rs) {
  const int n = rs.rank;
  auto unit = [n](int i) {
    IntVec e = IntVec::Zero(n);
    e[i] = 1;
    return e;
  };
  std::vector<IntVec> reps;
  reps.push_back(IntVec::Zero(n));
  switch (rs.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) reps.push_back(unit(i));
      break;
    case Family::D:
      reps.push_back(unit(0));
      reps.push_back(unit(n - 2));
      reps.push_back(unit(n - 1));
      break;
    case Family::E:
      if (n == 6) {
        reps.push_back(unit(0));
        reps.push_back(unit(5));
      } else if (n == 7) {
        reps.push_back(unit(6));
      }
      break;
  }
  return reps;
}

WeightDecomposition decompose_weight(const RootSystem& rs, int p,
                                     const IntVec& mu_coords) {
  if (p < 2) throw PreconditionError("p must be >= 2");
  if (mu_coords.size() != rs.rank) throw PreconditionError("dimension mismatch");
  const int n = rs.rank;
  WeightDecomposition d;
  d.p = p;
  d.mu_coords = mu_coords;
  d.s = IntVec(n);
  IntVec t(n);
  for (int i = 0; i < n; ++i) {
    int r = ((mu_coords[i] % p) + p) % p;
    d.s[i] = (r == 0) ? 1 : 1 + p - r;
    t[i] = (mu_coords[i] - (1 - d.s[i])) / p;
  }
  for (const auto& c : coset_representatives(rs)) {
    RatVec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = Rational(t[i] - c[i]);
    RatVec g = rat_mat_vec(rs.cartan_inv, diff);
    bool integral = true;
    for (int i = 0; i < n; ++i)
      if (!rat_is_int(g[i])) { integral = false; break; }
    if (integral) {
      d.lambda_hat = c;
      d.gamma = to_int_vec(g);
      return d;
    }
  }
  throw NumericError("coset transversal failed to cover the weight");
}

IntVec reassemble_weight(const RootSystem& rs, const WeightDecomposition& d) {
  const int n = rs.rank;
  IntVec m(n);
  IntVec Xg = rs.cartan * d.gamma;
  for (int i = 0; i < n; ++i)
    m[i] = (1 - d.s[i]) + d.p * (d.lambda_hat[i] + Xg[i]);
  return m;
}

IntVec shifted_weyl_action_mu(const RootSystem& rs, int p,
                              const IntVec& mu_coords, const WeylElement& w) {
  const int n = rs.rank;
  WeightDecomposition d = decompose_weight(rs, p, mu_coords);
  // mu - lambda_bar lies in sqrt(p) P; the z-coefficient of the character
  // is a Weyl-orbit weight multiplicity there, so the action is centered
  // at lambda_bar (coordinates 1 - s_j).
  RatVec me(n);
  for (int i = 0; i < n; ++i) me[i] = Rational(mu_coords[i] - (1 - d.s[i]));
  RatVec a = rat_mat_vec(rs.cartan_inv, me);
  RatVec wa = int_mat_vec(w.matrix, a);
  RatVec back = int_mat_vec(rs.cartan, wa);
  for (int i = 0; i < n; ++i) back[i] += 1 - d.s[i];
  return to_int_vec(back);
}

CharacterRecord atypical_character(const RootSystem& rs, int p,
                                   const IntVec& mu_coords, const CVec* eps,
                                   const Rational& order) {
  const int n = rs.rank;
  WeightDecomposition dec = decompose_weight(rs, p, mu_coords);
  std::vector<WeylElement> W = weyl_group(rs);
  KostantTable table(rs);

  RatVec half(n), rho = rs.rho_alpha;
  for (int i = 0; i < n; ++i) half[i] = Rational(1, 2);
  RatVec base = dec.gamma_plus_hat_alpha(rs);
  for (int i = 0; i < n; ++i) base[i] += rho[i] - half[i];
  RatVec inner(n);  // lambda_bar/sqrt(p) - rho/p, acted on by w
  {
    RatVec lb = dec.lambda_bar_scaled_alpha(rs);
    for (int i = 0; i < n; ++i) inner[i] = lb[i] - rho[i] / p;
  }

  CharacterRecord rec;
  rec.typical = false;
  rec.dec = dec;
  if (eps) rec.eps = *eps;
  QExpansion series(eps ? CoefMode::Numeric : CoefMode::Exact, order);
  series.eta_power = -n;

  double lmin = lambda_min_cartan(rs);
  double r_bound = std::sqrt(2.0 * std::max(to_double(order), 0.0) / (p * lmin)) + 1.0;

  for (const auto& w : W) {
    RatVec v = base + int_mat_vec(w.matrix, inner);
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      double vi = to_double(v[i]);
      lo[i] = std::max(0, static_cast<int>(std::floor(-vi - r_bound - 1.0)));
      hi[i] = static_cast<int>(std::ceil(-vi + r_bound + 1.0));
      if (hi[i] < lo[i]) hi[i] = lo[i];
    }
    IntVec beta(n);
    RatVec kv(n);
    for_box_lohi(lo, hi, [&](const std::vector<int>& idx) {
      for (int i = 0; i < n; ++i) beta[i] = idx[i];
      for (int i = 0; i < n; ++i) kv[i] = v[i] + Rational(2 * idx[i] + 1, 2);
      Rational expo = Rational(p) * rs.form(kv, kv) / 2;
      if (expo > order) return;
      Int kval = table(beta);
      if (kval == 0) return;
      Rational coeff = Rational(kval) * w.sign;
      if (!eps) {
        series.add_exact(expo, coeff);
      } else {
        // e^{2 pi (k + v + e/2, eps)} with the plain dot
        Complex pe = 0.0;
        for (int i = 0; i < n; ++i)
          pe += (to_double(kv[i]) + 0.5) * (*eps)[i];
        series.add_numeric(expo, to_double(coeff) * std::exp(kTwoPi * pe));
      }
    });
  }
  rec.series = series;
  return rec;
}

QExpansion constant_term_character(const RootSystem& rs, int p,
                                   const IntVec& mu_coords,
                                   const Rational& order) {
  const int n = rs.rank;
  WeightDecomposition dec = decompose_weight(rs, p, mu_coords);
  std::vector<WeylElement> W = weyl_group(rs);
  KostantTable table(rs);

  RatVec rho = rs.rho_alpha;
  RatVec lhat = dec.lambda_hat_alpha(rs);
  RatVec ghl = dec.gamma_plus_hat_alpha(rs);
  // t_tilde = sum_j (1 - s_j) omega_j - rho
  RatVec oneminus(n);
  for (int i = 0; i < n; ++i) oneminus[i] = Rational(1 - dec.s[i]);
  RatVec ttilde = rat_mat_vec(rs.cartan_inv, oneminus);
  for (int i = 0; i < n; ++i) ttilde[i] -= rho[i];

  Rational tt = rs.form(ttilde, ttilde);
  double tnorm = std::sqrt(std::max(to_double(tt), 0.0));
  double lmin = lambda_min_cartan(rs);
  double m_bound =
      (std::sqrt(2.0 * std::max(to_double(order), 0.0)) + tnorm / std::sqrt(double(p))) /
      std::sqrt(double(p));
  double r_bound = m_bound / std::sqrt(lmin) + 1.0;

  QExpansion series(CoefMode::Exact, order);
  series.eta_power = -n;

  RatVec center = rho + lhat;  // m = alpha + center
  std::vector<int> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    double ci = to_double(center[i]);
    lo[i] = static_cast<int>(std::floor(-ci - r_bound));
    hi[i] = static_cast<int>(std::ceil(-ci + r_bound));
  }
  RatVec m(n);
  for_box_lohi(lo, hi, [&](const std::vector<int>& idx) {
    for (int i = 0; i < n; ++i) m[i] = center[i] + idx[i];
    Rational expo =
        (Rational(p) * rs.form(m, m) + 2 * rs.form(m, ttilde) + tt / p) / 2;
    if (expo > order) return;
    for (const auto& w : W) {
      RatVec wm = int_mat_vec(w.matrix, m);
      RatVec karg(n);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        karg[i] = wm[i] - rho[i] - ghl[i];
        if (!rat_is_int(karg[i]) || karg[i] < 0) { ok = false; break; }
      }
      if (!ok) continue;
      Int kval = table(to_int_vec(karg));
      if (kval == 0) continue;
      series.add_exact(expo, Rational(kval) * w.sign);
    }
  });
  return series;
}

QExpansion full_character_specialized(const RootSystem& rs, int p,
                                      const WeightDecomposition& lam_rep,
                                      const Rational& order) {
  const int n = rs.rank;
  std::vector<WeylElement> W = weyl_group(rs);
  RatVec rho = rs.rho_alpha;
  RatVec lhat = lam_rep.lambda_hat_alpha(rs);
  RatVec oneminus(n);
  for (int i = 0; i < n; ++i) oneminus[i] = Rational(1 - lam_rep.s[i]);
  RatVec ttilde = rat_mat_vec(rs.cartan_inv, oneminus);
  for (int i = 0; i < n; ++i) ttilde[i] -= rho[i];
  Rational tt = rs.form(ttilde, ttilde);

  double tnorm = std::sqrt(std::max(to_double(tt), 0.0));
  double lmin = lambda_min_cartan(rs);
  double m_bound =
      (std::sqrt(2.0 * std::max(to_double(order), 0.0)) + tnorm / std::sqrt(double(p))) /
      std::sqrt(double(p));
  double r_bound = m_bound / std::sqrt(lmin) + 1.0;

  QExpansion series(CoefMode::Exact, order);
  series.eta_power = -n;

  RatVec center = rho + lhat;
  std::vector<int> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    double ci = to_double(center[i]);
    lo[i] = static_cast<int>(std::floor(-ci - r_bound));
    hi[i] = static_cast<int>(std::ceil(-ci + r_bound));
  }
  RatVec m(n), hw(n);
  for_box_lohi(lo, hi, [&](const std::vector<int>& idx) {
    // highest weight lambda_hat + alpha must be dominant
    for (int i = 0; i < n; ++i) {
      hw[i] = lhat[i] + idx[i];
      m[i] = center[i] + idx[i];
    }
    RatVec omega = int_mat_vec(rs.cartan, hw);
    for (int i = 0; i < n; ++i)
      if (omega[i] < 0) return;
    Rational quad = (Rational(p) * rs.form(m, m) + tt / p) / 2;
    Rational dim = weyl_dimension(rs, hw);
    for (const auto& w : W) {
      RatVec wm = int_mat_vec(w.matrix, m);
      Rational expo = quad + rs.form(wm, ttilde);
      if (expo > order) continue;
      series.add_exact(expo, dim * w.sign);
    }
  });
  return series;
}

CharacterRecord typical_character(const RootSystem& rs, int p, const CVec& lam,
                                  const CVec* eps, const Rational& order) {
  const int n = rs.rank;
  if (lam.size() != n) throw PreconditionError("dimension mismatch");
  // shifted weight in the lambda_j basis: m - (p-1) e
  bool integral = true;
  for (int i = 0; i < n; ++i)
    if (lam[i].imag() != 0.0 || lam[i].real() != std::floor(lam[i].real()))
      integral = false;

  CharacterRecord rec;
  rec.typical = true;
  rec.lam = lam;
  if (eps) rec.eps = *eps;

  if (integral && !eps) {
    RatVec shifted(n);
    for (int i = 0; i < n; ++i)
      shifted[i] = Rational(static_cast<long>(std::llround(lam[i].real())) -
                            (p - 1));
    RatVec a = rat_mat_vec(rs.cartan_inv, shifted);
    Rational expo = rdot(shifted, a) / (2 * p);
    QExpansion series(CoefMode::Exact, std::max(order, expo));
    series.eta_power = -n;
    series.add_exact(expo, Rational(1));
    rec.series = series;
    return rec;
  }

  CVec shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = lam[i] - double(p - 1);
  Eigen::MatrixXd Xinv = rs.cartan.cast<double>().inverse();
  CVec a = Xinv.cast<Complex>() * shifted;
  Complex delta = cdot(shifted, a) / (2.0 * p);
  if (std::abs(delta.imag()) > 1e-12)
    throw PreconditionError("typical weight gives a non-real exponent");
  Complex coeff(1.0, 0.0);
  if (eps) {
    // (eps, (lam - a0 rho)/sqrt(p)) with alpha-coordinates a / p... the
    // scaled alpha-coordinates of (lam - a0 rho)/sqrt(p) are X^{-1}(m-(p-1)e)/p
    Complex pe = 0.0;
    for (int i = 0; i < n; ++i) pe += (*eps)[i] * (a[i] / double(p));
    coeff = std::exp(kTwoPi * pe);
  }
  QExpansion series(CoefMode::Numeric, order);
  series.eta_power = -n;
  series.exp_offset = delta.real();
  series.add_numeric(Rational(0), coeff);
  rec.series = series;
  return rec;
}

bool weyl_invariance_check(const RootSystem& rs, int p, const IntVec& mu,
                           const WeylElement& w, const Rational& order) {
  IntVec mw = shifted_weyl_action_mu(rs, p, mu, w);
  CharacterRecord a = atypical_character(rs, p, mu, nullptr, order);
  CharacterRecord b = atypical_character(rs, p, mw, nullptr, order);
  return qx_equal(a.series, b.series);
}

}  // namespace wtheta
