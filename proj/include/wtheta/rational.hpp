#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace wtheta {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

// Exact vectors/matrices carry rational entries in the simple-root (alpha)
// basis; sqrt(p) never appears as a number, it is absorbed into pairing
// matrices (A = p X) and rational coordinate shifts.
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::VectorXi;
using IntMat = Eigen::MatrixXi;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline RatVec rat_vec(const IntVec& v) {
  RatVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

inline Eigen::VectorXd to_dvec(const RatVec& v) {
  Eigen::VectorXd r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

inline CVec to_cvec(const RatVec& v) {
  CVec r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = Complex(to_double(v[i]), 0.0);
  return r;
}

// Plain C-bilinear form (x, y) = sum_i x_i y_i (no conjugation).
inline Complex cdot(const CVec& x, const CVec& y) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Rational rdot(const RatVec& x, const RatVec& y) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Rational in "num/den" form, used by the JSON surfaces.
inline std::string rat_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& s);

// "a", "a+bi", "a-bi", "bi" with decimal a, b.
Complex parse_complex(const std::string& s);

struct NumericResult {
  Complex value{0.0, 0.0};
  double error_bound{0.0};
};

// Error taxonomy shared across modules.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wtheta
