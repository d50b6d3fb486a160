#include "wtheta/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace wtheta {

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::exception&) {
    throw PreconditionError("bad rational: " + s);
  }
}

Complex parse_complex(const std::string& s) {
  if (s.empty()) throw PreconditionError("empty complex literal");
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto read_num = [](const std::string& str, std::size_t& pos) {
    std::size_t start = pos;
    if (pos < str.size() && (str[pos] == '+' || str[pos] == '-')) ++pos;
    bool digits = false;
    while (pos < str.size() &&
           (std::isdigit(static_cast<unsigned char>(str[pos])) ||
            str[pos] == '.')) {
      digits = true;
      ++pos;
    }
    if (pos < str.size() && (str[pos] == 'e' || str[pos] == 'E')) {
      std::size_t epos = pos + 1;
      if (epos < str.size() && (str[epos] == '+' || str[epos] == '-')) ++epos;
      if (epos < str.size() && std::isdigit(static_cast<unsigned char>(str[epos]))) {
        pos = epos;
        while (pos < str.size() && std::isdigit(static_cast<unsigned char>(str[pos])))
          ++pos;
      }
    }
    if (!digits) return std::pair<double, bool>{
        (start < str.size() && str[start] == '-') ? -1.0 : 1.0, false};
    return std::pair<double, bool>{std::stod(str.substr(start, pos - start)),
                                   true};
  };
  double re = 0.0, im = 0.0;
  std::size_t pos = 0;
  auto [v1, d1] = read_num(t, pos);
  if (pos < t.size() && t[pos] == 'i') {
    im = v1;
    ++pos;
  } else {
    if (!d1) throw PreconditionError("bad complex literal: " + s);
    re = v1;
    if (pos < t.size()) {
      auto [v2, d2] = read_num(t, pos);
      (void)d2;
      if (pos >= t.size() || t[pos] != 'i')
        throw PreconditionError("bad complex literal: " + s);
      im = v2;
      ++pos;
    }
  }
  if (pos != t.size()) throw PreconditionError("bad complex literal: " + s);
  return Complex(re, im);
}

void QExpansion::add_exact(const Rational& exponent, const Rational& c) {
  if (mode_ != CoefMode::Exact)
    throw PreconditionError("add_exact on a numeric series");
  if (c == 0 || exponent > cap_) return;
  Rational& slot = exact_[exponent];
  slot += c;
  if (slot == 0) exact_.erase(exponent);
}

void QExpansion::add_numeric(const Rational& exponent, const Complex& c) {
  if (mode_ != CoefMode::Numeric)
    throw PreconditionError("add_numeric on an exact series");
  if (exponent > cap_) return;
  Complex& slot = numeric_[exponent];
  slot += c;
  if (slot == Complex(0.0, 0.0)) numeric_.erase(exponent);
}

Rational QExpansion::coeff_exact(const Rational& exponent) const {
  if (mode_ != CoefMode::Exact)
    throw PreconditionError("coeff_exact on a numeric series");
  auto it = exact_.find(exponent);
  return it == exact_.end() ? Rational(0) : it->second;
}

Complex QExpansion::coeff(const Rational& exponent) const {
  if (mode_ == CoefMode::Exact)
    return Complex(to_double(coeff_exact(exponent)), 0.0);
  auto it = numeric_.find(exponent);
  return it == numeric_.end() ? Complex(0.0, 0.0) : it->second;
}

std::size_t QExpansion::num_terms() const {
  return mode_ == CoefMode::Exact ? exact_.size() : numeric_.size();
}

Rational QExpansion::min_exponent() const {
  if (empty()) return Rational(0);
  return mode_ == CoefMode::Exact ? exact_.begin()->first
                                  : numeric_.begin()->first;
}

void QExpansion::set_cap(const Rational& cap) {
  cap_ = cap;
  if (mode_ == CoefMode::Exact)
    exact_.erase(exact_.upper_bound(cap_), exact_.end());
  else
    numeric_.erase(numeric_.upper_bound(cap_), numeric_.end());
}

namespace {

void check_meta(const QExpansion& f, const QExpansion& g) {
  if (f.eta_power != g.eta_power || f.exp_offset != g.exp_offset)
    throw PreconditionError("mismatched eta_power/exp_offset");
}

}  // namespace

QExpansion qx_add(const QExpansion& f, const QExpansion& g) {
  check_meta(f, g);
  CoefMode mode = (f.mode() == CoefMode::Exact && g.mode() == CoefMode::Exact)
                      ? CoefMode::Exact
                      : CoefMode::Numeric;
  QExpansion out(mode, std::min(f.cap(), g.cap()));
  out.eta_power = f.eta_power;
  out.exp_offset = f.exp_offset;
  for (const QExpansion* h : {&f, &g}) {
    if (mode == CoefMode::Exact) {
      for (const auto& [e, c] : h->exact_terms()) out.add_exact(e, c);
    } else if (h->mode() == CoefMode::Exact) {
      for (const auto& [e, c] : h->exact_terms())
        out.add_numeric(e, Complex(to_double(c), 0.0));
    } else {
      for (const auto& [e, c] : h->numeric_terms()) out.add_numeric(e, c);
    }
  }
  return out;
}

QExpansion qx_mul(const QExpansion& f, const QExpansion& g) {
  CoefMode mode = (f.mode() == CoefMode::Exact && g.mode() == CoefMode::Exact)
                      ? CoefMode::Exact
                      : CoefMode::Numeric;
  Rational cap =
      std::min(f.cap() + g.min_exponent(), g.cap() + f.min_exponent());
  QExpansion out(mode, cap);
  out.eta_power = f.eta_power + g.eta_power;
  out.exp_offset = f.exp_offset + g.exp_offset;
  if (mode == CoefMode::Exact) {
    for (const auto& [ef, cf] : f.exact_terms())
      for (const auto& [eg, cg] : g.exact_terms())
        out.add_exact(ef + eg, cf * cg);
  } else {
    auto terms = [](const QExpansion& h) {
      std::vector<std::pair<Rational, Complex>> v;
      if (h.mode() == CoefMode::Exact)
        for (const auto& [e, c] : h.exact_terms())
          v.emplace_back(e, Complex(to_double(c), 0.0));
      else
        for (const auto& [e, c] : h.numeric_terms()) v.emplace_back(e, c);
      return v;
    };
    for (const auto& [ef, cf] : terms(f))
      for (const auto& [eg, cg] : terms(g)) out.add_numeric(ef + eg, cf * cg);
  }
  return out;
}

QExpansion qx_scale(const Rational& c, const QExpansion& f) {
  QExpansion out(f.mode(), f.cap());
  out.eta_power = f.eta_power;
  out.exp_offset = f.exp_offset;
  if (f.mode() == CoefMode::Exact)
    for (const auto& [e, v] : f.exact_terms()) out.add_exact(e, c * v);
  else
    for (const auto& [e, v] : f.numeric_terms())
      out.add_numeric(e, to_double(c) * v);
  return out;
}

QExpansion qx_scale(const Complex& c, const QExpansion& f) {
  QExpansion out(CoefMode::Numeric, f.cap());
  out.eta_power = f.eta_power;
  out.exp_offset = f.exp_offset;
  if (f.mode() == CoefMode::Exact)
    for (const auto& [e, v] : f.exact_terms())
      out.add_numeric(e, c * to_double(v));
  else
    for (const auto& [e, v] : f.numeric_terms()) out.add_numeric(e, c * v);
  return out;
}

QExpansion qx_shift(const QExpansion& f, const Rational& d) {
  QExpansion out(f.mode(), f.cap() + d);
  out.eta_power = f.eta_power;
  out.exp_offset = f.exp_offset;
  if (f.mode() == CoefMode::Exact)
    for (const auto& [e, v] : f.exact_terms()) out.add_exact(e + d, v);
  else
    for (const auto& [e, v] : f.numeric_terms()) out.add_numeric(e + d, v);
  return out;
}

QExpansion qx_inverse(const QExpansion& f) {
  if (f.empty()) throw PreconditionError("inverse of the zero series");
  if (f.mode() != CoefMode::Exact)
    throw PreconditionError("inverse requires an exact series");
  Rational e0 = f.min_exponent();
  Rational c0 = f.coeff_exact(e0);
  // unit part u = f / (c0 q^{e0}) = 1 + g, min exponent of g is delta > 0
  Rational ucap = f.cap() - e0;
  QExpansion g(CoefMode::Exact, ucap);
  for (const auto& [e, c] : f.exact_terms())
    if (e != e0) g.add_exact(e - e0, c / c0);
  QExpansion inv(CoefMode::Exact, ucap);
  inv.add_exact(Rational(0), Rational(1));
  if (!g.empty()) {
    Rational delta = g.min_exponent();
    QExpansion pw(CoefMode::Exact, ucap);
    pw.add_exact(Rational(0), Rational(1));
    Rational reach(0);
    int sign = 1;
    while (true) {
      reach += delta;
      if (reach > ucap) break;
      pw = qx_mul(pw, g);
      pw.set_cap(ucap);
      sign = -sign;
      QExpansion term = qx_scale(Rational(sign), pw);
      term.set_cap(ucap);
      inv = qx_add(inv, term);
    }
  }
  QExpansion out = qx_shift(qx_scale(Rational(1) / c0, inv), -e0);
  out.eta_power = -f.eta_power;
  out.exp_offset = -f.exp_offset;
  return out;
}

QExpansion qx_to_numeric(const QExpansion& f) {
  if (f.mode() == CoefMode::Numeric) return f;
  QExpansion out(CoefMode::Numeric, f.cap());
  out.eta_power = f.eta_power;
  out.exp_offset = f.exp_offset;
  for (const auto& [e, c] : f.exact_terms())
    out.add_numeric(e, Complex(to_double(c), 0.0));
  return out;
}

bool qx_equal(const QExpansion& f, const QExpansion& g) {
  if (f.mode() != CoefMode::Exact || g.mode() != CoefMode::Exact)
    throw PreconditionError("qx_equal requires exact series");
  if (f.eta_power != g.eta_power) return false;
  Rational cap = std::min(f.cap(), g.cap());
  auto it = f.exact_terms().begin(), jt = g.exact_terms().begin();
  const auto fe = f.exact_terms().end(), ge = g.exact_terms().end();
  while (true) {
    while (it != fe && it->first > cap) it = fe;
    while (jt != ge && jt->first > cap) jt = ge;
    if (it == fe && jt == ge) return true;
    if (it == fe || jt == ge) return false;
    if (it->first != jt->first || it->second != jt->second) return false;
    ++it;
    ++jt;
  }
}

QExpansion eta_expansion(const Rational& cap) {
  QExpansion out(CoefMode::Exact, cap);
  Rational shift(1, 24);
  QExpansion prod(CoefMode::Exact, cap);  // work with integer exponents
  prod.add_exact(Rational(0), Rational(1));
  for (Int k = 1; Rational(k) <= cap; ++k) {
    QExpansion factor(CoefMode::Exact, cap);
    factor.add_exact(Rational(0), Rational(1));
    factor.add_exact(Rational(k), Rational(-1));
    prod = qx_mul(prod, factor);
    prod.set_cap(cap);
  }
  for (const auto& [e, c] : prod.exact_terms())
    if (e + shift <= cap) out.add_exact(e + shift, c);
  return out;
}

Complex eta_value(Complex tau) {
  if (tau.imag() <= 0.0) throw PreconditionError("eta needs Im tau > 0");
  Complex q = std::exp(Complex(0.0, 2.0 * M_PI) * tau);
  Complex out = std::exp(Complex(0.0, 2.0 * M_PI) * tau / 24.0);
  Complex qk(1.0, 0.0);
  double aq = std::abs(q);
  double aqk = 1.0;
  for (int k = 1; k < 10000; ++k) {
    qk *= q;
    aqk *= aq;
    out *= (1.0 - qk);
    if (aqk < 1e-18) break;
  }
  return out;
}

NumericResult qx_eval(const QExpansion& f, Complex tau, double tol) {
  if (tau.imag() <= 0.0) throw PreconditionError("qx_eval needs Im tau > 0");
  Complex two_pi_i_tau = Complex(0.0, 2.0 * M_PI) * tau;
  Complex sum(0.0, 0.0);
  double max_tail_coeff = 0.0;
  Rational tail_from = f.cap() - (f.cap() - f.min_exponent()) / 4;
  auto accumulate = [&](const Rational& e, const Complex& c) {
    sum += c * std::exp(two_pi_i_tau * to_double(e));
    if (e >= tail_from) max_tail_coeff = std::max(max_tail_coeff, std::abs(c));
  };
  if (f.mode() == CoefMode::Exact)
    for (const auto& [e, c] : f.exact_terms())
      accumulate(e, Complex(to_double(c), 0.0));
  else
    for (const auto& [e, c] : f.numeric_terms()) accumulate(e, c);
  double aq = std::exp(-2.0 * M_PI * tau.imag());
  double scale = 1.0;
  if (f.eta_power != 0) {
    Complex ev = std::pow(eta_value(tau), f.eta_power);
    sum *= ev;
    scale = std::abs(ev);
  }
  if (f.exp_offset != 0.0) {
    Complex ov = std::exp(two_pi_i_tau * f.exp_offset);
    sum *= ov;
    scale *= std::abs(ov);
  }
  // crude geometric tail bound past the cap
  double tail =
      scale * max_tail_coeff * std::pow(aq, to_double(f.cap())) / (1.0 - aq);
  if (tail > tol)
    throw NumericError("TailBoundTooLarge");
  return {sum, tail};
}

}  // namespace wtheta
