#include "wtheta/qdim.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace wtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

// Value held as mantissa * exp(logscale); keeps t -> 0 character sums in
// double range (individual terms overflow long before the ratio does).
struct LogSum {
  Complex mantissa{0.0, 0.0};
  double logscale = 0.0;
};

Complex log_ratio(const LogSum& a, const LogSum& b) {
  return a.mantissa / b.mantissa * std::exp(a.logscale - b.logscale);
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

// Direct atypical character value at tau = i t (without the eta power,
// which cancels in every ratio taken here).
LogSum atypical_char_value(const RootSystem& rs, int p,
                           const WeightDecomposition& dec, const CVec& eps,
                           double t) {
  const int n = rs.rank;
  std::vector<WeylElement> W = weyl_group(rs);
  KostantTable table(rs);
  Eigen::VectorXd x = eps.real(), y = eps.imag();
  Eigen::MatrixXd X = rs.cartan.cast<double>();
  Eigen::MatrixXd Xinv = X.inverse();
  double lmin =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(X).eigenvalues().minCoeff();
  double width = std::sqrt(45.0 / (kPi * t * p * lmin)) + 2.0;
  Eigen::VectorXd opt = Xinv * x / (t * p);  // continuous maximizer of k + v

  RatVec rho = rs.rho_alpha;
  RatVec base = dec.gamma_plus_hat_alpha(rs);
  for (int i = 0; i < n; ++i) base[i] += rho[i] - Rational(1, 2);
  RatVec inner = dec.lambda_bar_scaled_alpha(rs);
  for (int i = 0; i < n; ++i) inner[i] -= rho[i] / p;

  struct Term {
    double logmag;
    double phase;
    double coeff;
  };
  std::vector<Term> terms;
  for (const auto& w : W) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      Rational s = base[i];
      for (int j = 0; j < n; ++j) s += Rational(w.matrix(i, j)) * inner[j];
      v[i] = to_double(s);
    }
    std::vector<int> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      double c = opt[i] - v[i];
      lo[i] = std::max(0, static_cast<int>(std::floor(c - width)));
      hi[i] = static_cast<int>(std::ceil(std::max(c, 0.0) + width));
    }
    IntVec beta(n);
    Eigen::VectorXd kv(n);
    for_box_lohi(lo, hi, [&](const std::vector<int>& idx) {
      for (int i = 0; i < n; ++i) beta[i] = idx[i];
      Int kval = table(beta);
      if (kval == 0) return;
      for (int i = 0; i < n; ++i) kv[i] = v[i] + idx[i] + 0.5;
      double E = 0.5 * p * kv.dot(X * kv);
      Eigen::VectorXd shifted = kv.array() + 0.5;
      terms.push_back({-kTwoPi * t * E + kTwoPi * shifted.dot(x),
                       kTwoPi * shifted.dot(y),
                       w.sign * kval.convert_to<double>()});
    });
  }
  double lmax = -1e300;
  for (const auto& tm : terms) lmax = std::max(lmax, tm.logmag);
  LogSum out;
  out.logscale = lmax;
  for (const auto& tm : terms)
    out.mantissa += tm.coeff * std::exp(Complex(tm.logmag - lmax, tm.phase));
  return out;
}

LogSum typical_char_value(const RootSystem& rs, int p, const CVec& lam,
                          const CVec& eps, double t) {
  const int n = rs.rank;
  Eigen::MatrixXd Xinv = rs.cartan.cast<double>().inverse();
  CVec shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = lam[i] - double(p - 1);
  CVec a = Xinv.cast<Complex>() * shifted;  // p * scaled alpha-coordinates
  Complex delta = cdot(shifted, a) / (2.0 * p);
  Complex pe = 0.0;
  for (int i = 0; i < n; ++i) pe += eps[i] * a[i] / double(p);
  Complex expo = kTwoPi * pe - kTwoPi * t * delta;
  LogSum out;
  out.logscale = expo.real();
  out.mantissa = std::exp(Complex(0.0, expo.imag()));
  return out;
}

std::vector<double> default_t_sequence(QdimRegion region) {
  int count = (region == QdimRegion::Pos) ? 4 : 7;
  std::vector<double> t;
  for (int j = 0; j < count; ++j) t.push_back(0.2 * std::pow(0.5, j));
  return t;
}

}  // namespace

QdimRequest QdimRequest::atypical(const IntVec& mu, const CVec& eps) {
  QdimRequest r;
  r.typical = false;
  r.mu_coords = mu;
  r.eps = eps;
  bool pos = true;
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    if (eps[i].real() < 0.0) pos = false;
  r.region = pos ? QdimRegion::Pos : QdimRegion::Neg;
  r.t_sequence = default_t_sequence(r.region);
  return r;
}

QdimRequest QdimRequest::typical_req(const CVec& lam, const CVec& eps) {
  QdimRequest r;
  r.typical = true;
  r.lam = lam;
  r.eps = eps;
  bool pos = true;
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    if (eps[i].real() < 0.0) pos = false;
  r.region = pos ? QdimRegion::Pos : QdimRegion::Neg;
  r.t_sequence = default_t_sequence(r.region);
  return r;
}

QdimNumericResult qdim_numeric(const RootSystem& rs, int p,
                               const QdimRequest& req) {
  if (req.eps.size() != rs.rank) throw PreconditionError("dimension mismatch");
  std::vector<double> ts =
      req.t_sequence.empty() ? default_t_sequence(req.region) : req.t_sequence;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (!(ts[i] > ts[i + 1] && ts[i + 1] > 0.0))
      throw PreconditionError("t_sequence must decrease toward 0");

  WeightDecomposition vac = decompose_weight(rs, p, IntVec::Zero(rs.rank));
  WeightDecomposition num_dec;
  if (!req.typical) num_dec = decompose_weight(rs, p, req.mu_coords);

  QdimNumericResult out;
  for (double t : ts) {
    LogSum den = atypical_char_value(rs, p, vac, req.eps, t);
    LogSum num = req.typical
                     ? typical_char_value(rs, p, req.lam, req.eps, t)
                     : atypical_char_value(rs, p, num_dec, req.eps, t);
    out.ratios.push_back(log_ratio(num, den));
  }
  for (std::size_t i = 0; i + 1 < out.ratios.size(); ++i)
    out.differences.push_back(std::abs(out.ratios[i + 1] - out.ratios[i]));

  std::vector<Complex> v = out.ratios;
  for (int pass = 1; pass <= 2 && v.size() > 1; ++pass) {
    double f = std::pow(2.0, pass);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      v[i] = (f * v[i + 1] - v[i]) / (f - 1.0);
    v.pop_back();
  }
  Complex val = v.back();
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
    throw NumericError("NoConvergence");
  if (v.size() >= 2 &&
      std::abs(v[v.size() - 1] - v[v.size() - 2]) > 0.2 * (1.0 + std::abs(val)))
    throw NumericError("NoConvergence");
  out.value = val;
  return out;
}

Complex qdim_atypical_closed(const RootSystem& rs, int p, const IntVec& mu,
                             const CVec& eps) {
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    if (!(eps[i].real() < 0.0))
      throw PreconditionError("qdim_atypical_closed needs Re(eps) < 0");
  WeightDecomposition dec = decompose_weight(rs, p, mu);
  RatVec ghl = dec.gamma_plus_hat_alpha(rs);
  Complex pe = 0.0;
  for (int i = 0; i < rs.rank; ++i) pe += to_double(ghl[i]) * eps[i];
  CVec x(rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    x[i] = Complex(0.0, 1.0) * eps[i] / double(p);
  std::vector<WeylElement> W = weyl_group(rs);
  Complex chi = weyl_character(rs, W, dec.minus_sqrtp_lambda_bar_alpha(rs), x);
  return std::exp(kTwoPi * pe) * chi;
}

Complex qdim_typical_closed(const RootSystem& rs, int p, const CVec& lam,
                            const CVec& eps) {
  const int n = rs.rank;
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    if (!(eps[i].real() < 0.0))
      throw PreconditionError("qdim_typical_closed needs Re(eps) < 0");
  Eigen::MatrixXd Xinv = rs.cartan.cast<double>().inverse();
  CVec shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = lam[i] - double(p - 1);
  CVec a = Xinv.cast<Complex>() * shifted;
  Complex pe = 0.0, esum = 0.0;
  for (int i = 0; i < n; ++i) {
    pe += eps[i] * a[i] / double(p);
    esum += eps[i];
  }
  Complex prod(1.0, 0.0);
  for (const auto& al : rs.positive_roots) {
    Complex ae = 0.0;
    for (int i = 0; i < n; ++i) ae += static_cast<double>(al[i]) * eps[i];
    Complex denom = std::sinh(kPi * ae / double(p));
    if (std::abs(denom) < 1e-14) throw NumericError("SineSingularity");
    prod *= std::sinh(kPi * ae) / denom;
  }
  return std::exp(kTwoPi * pe - kPi * esum) * prod;
}

Rational qdim_atypical_eps0(const RootSystem& rs, int p, const IntVec& mu) {
  WeightDecomposition dec = decompose_weight(rs, p, mu);
  return weyl_dimension(rs, dec.minus_sqrtp_lambda_bar_alpha(rs));
}

TypicalEps0 qdim_typical_eps0(const RootSystem& rs, int p) {
  TypicalEps0 out;
  out.limit_value = std::pow(double(p), rs.num_positive_roots());
  out.inverted_value = std::pow(double(p), -rs.num_positive_roots());
  return out;
}

QdimPosResult qdim_positive_region(const RootSystem& rs, int p,
                                   const IntVec& mu, const CVec& eps) {
  RegEps re = RegEps::make(eps, rs);
  QdimPosResult out;
  out.region = region_analysis(rs, p, re);
  out.conditions_met = out.region.conditions_met;
  if (!out.conditions_met) return out;
  WeightDecomposition dec = decompose_weight(rs, p, mu);
  RatVec ghl = dec.gamma_plus_hat_alpha(rs);
  double pk = 0.0;
  for (int i = 0; i < rs.rank; ++i)
    pk += to_double(ghl[i]) * out.region.k_star[i];
  CVec x(rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    x[i] = Complex(static_cast<double>(out.region.k_star[i]) / p, 0.0);
  std::vector<WeylElement> W = weyl_group(rs);
  Complex chi = weyl_character(rs, W, dec.minus_sqrtp_lambda_bar_alpha(rs), x);
  out.value = std::exp(Complex(0.0, -kTwoPi * pk)) * chi;
  return out;
}

Complex s_kernel_typical(const RootSystem& rs, int p, const CVec& lam,
                         const CVec& mu_var, const CVec& eps) {
  const int n = rs.rank;
  if (lam.size() != n || mu_var.size() != n || eps.size() != n)
    throw PreconditionError("dimension mismatch");
  Eigen::MatrixXd Ainv = (p * rs.cartan).cast<double>().inverse();
  CVec Am = Ainv.cast<Complex>() * mu_var;
  CVec Ad = Ainv.cast<Complex>() * (lam - mu_var).eval();
  Complex e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < n; ++i) {
    e1 += eps[i] * Ad[i];
    e2 += lam[i] * Am[i];
  }
  return std::exp(kTwoPi * e1 - Complex(0.0, kTwoPi) * e2);
}

}  // namespace wtheta
