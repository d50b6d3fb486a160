#include "wtheta/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numbers>
#include <set>

namespace wtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

IntMat cartan_A(int n) {
  IntMat X = IntMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    X(i, i) = 2;
    if (i + 1 < n) X(i, i + 1) = X(i + 1, i) = -1;
  }
  return X;
}

IntMat cartan_D(int n) {
  // Bourbaki: chain 1-2-...-(n-2), with both n-1 and n attached to n-2.
  IntMat X = IntMat::Zero(n, n);
  for (int i = 0; i < n; ++i) X(i, i) = 2;
  for (int i = 0; i + 1 < n - 1; ++i) X(i, i + 1) = X(i + 1, i) = -1;
  X(n - 3, n - 1) = X(n - 1, n - 3) = -1;
  return X;
}

IntMat cartan_E(int n) {
  // Bourbaki numbering: node 2 hangs off node 4 of the chain 1-3-4-5-...
  IntMat X = IntMat::Zero(n, n);
  for (int i = 0; i < n; ++i) X(i, i) = 2;
  auto link = [&](int a, int b) { X(a - 1, b - 1) = X(b - 1, a - 1) = -1; };
  link(1, 3);
  link(3, 4);
  link(2, 4);
  for (int k = 4; k < n; ++k) link(k, k + 1);
  return X;
}

std::vector<int> key_of(const IntVec& v) {
  return std::vector<int>(v.data(), v.data() + v.size());
}

}  // namespace

Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "D" || s == "d") return Family::D;
  if (s == "E" || s == "e") return Family::E;
  throw PreconditionError("UnsupportedType: family must be A, D or E");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E: return "E";
  }
  return "?";
}

Rational RootSystem::form(const RatVec& u, const RatVec& v) const {
  RatVec Xv(rank);
  for (int i = 0; i < rank; ++i) {
    Rational s = 0;
    for (int j = 0; j < rank; ++j) s += Rational(cartan(i, j)) * v[j];
    Xv[i] = s;
  }
  return rdot(u, Xv);
}

RootSystem build_root_system(Family family, int rank) {
  IntMat X;
  switch (family) {
    case Family::A:
      if (rank < 1) throw PreconditionError("UnsupportedType: A_n needs n >= 1");
      X = cartan_A(rank);
      break;
    case Family::D:
      if (rank < 4) throw PreconditionError("UnsupportedType: D_n needs n >= 4");
      X = cartan_D(rank);
      break;
    case Family::E:
      if (rank < 6 || rank > 8) throw PreconditionError("UnsupportedType: E_n needs n in {6,7,8}");
      X = cartan_E(rank);
      break;
    default:
      throw PreconditionError("UnsupportedType");
  }

  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  rs.cartan = X;

  // Close {simple roots} under simple reflections, keeping the positive ones.
  std::set<std::vector<int>> seen;
  std::deque<IntVec> queue;
  for (int i = 0; i < rank; ++i) {
    IntVec e = IntVec::Zero(rank);
    e[i] = 1;
    seen.insert(key_of(e));
    queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVec b = queue.front();
    queue.pop_front();
    rs.positive_roots.push_back(b);
    for (int i = 0; i < rank; ++i) {
      // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i, pairing = (X beta)_i.
      int c = 0;
      for (int j = 0; j < rank; ++j) c += X(i, j) * b[j];
      IntVec nb = b;
      nb[i] -= c;
      if ((nb.array() >= 0).all() && seen.insert(key_of(nb)).second) queue.push_back(nb);
    }
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(),
            [](const IntVec& a, const IntVec& b) {
              if (a.sum() != b.sum()) return a.sum() < b.sum();
              return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                                  b.data() + b.size());
            });

  // X^{-1} by exact Gauss-Jordan.
  int n = rank;
  RatMat M(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M(i, j) = Rational(X(i, j));
      M(i, n + j) = (i == j) ? 1 : 0;
    }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) throw NumericError("Cartan matrix singular");
    if (p != c) M.row(p).swap(M.row(c));
    Rational piv = M(c, c);
    for (int j = 0; j < 2 * n; ++j) M(c, j) /= piv;
    for (int r = 0; r < n; ++r) {
      if (r == c || M(r, c) == 0) continue;
      Rational f = M(r, c);
      for (int j = 0; j < 2 * n; ++j) M(r, j) -= f * M(c, j);
    }
  }
  rs.cartan_inv = M.rightCols(n);

  // rho = sum_i omega_i; alpha-coordinates are X^{-1} * (1,...,1).
  rs.fund_weights_alpha = rs.cartan_inv;
  rs.rho_alpha = RatVec(n);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += rs.cartan_inv(i, j);
    rs.rho_alpha[i] = s;
  }
  return rs;
}

std::vector<WeylElement> weyl_group(const RootSystem& rs, std::size_t cap) {
  int n = rs.rank;
  std::vector<IntMat> refl(n);
  for (int i = 0; i < n; ++i) {
    IntMat s = IntMat::Identity(n, n);
    for (int j = 0; j < n; ++j) s(i, j) -= rs.cartan(i, j);
    refl[i] = s;
  }
  auto mat_key = [n](const IntMat& m) {
    return std::vector<int>(m.data(), m.data() + n * n);
  };

  std::vector<WeylElement> out;
  std::set<std::vector<int>> seen;
  std::deque<std::pair<IntMat, int>> queue;
  IntMat id = IntMat::Identity(n, n);
  seen.insert(mat_key(id));
  queue.emplace_back(id, 0);
  while (!queue.empty()) {
    auto [m, len] = queue.front();
    queue.pop_front();
    out.push_back(WeylElement{m, len, (len % 2 == 0) ? 1 : -1});
    if (out.size() > cap) throw NumericError("GroupTooLarge");
    for (int i = 0; i < n; ++i) {
      IntMat nm = refl[i] * m;
      if (seen.insert(mat_key(nm)).second) queue.emplace_back(nm, len + 1);
    }
  }
  return out;
}

Int KostantTable::operator()(const IntVec& beta) const {
  if ((beta.array() < 0).any()) throw PreconditionError("kostant_partition: negative coordinate");
  // Count representations using roots with index >= idx; composite key.
  const auto& roots = rs_.positive_roots;
  std::function<Int(std::size_t, const IntVec&)> rec = [&](std::size_t idx, const IntVec& b) -> Int {
    if ((b.array() == 0).all()) return 1;
    if (idx == roots.size()) return 0;
    std::vector<int> key = {static_cast<int>(idx)};
    key.insert(key.end(), b.data(), b.data() + b.size());
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Int total = 0;
    IntVec r = b;
    while (true) {
      total += rec(idx + 1, r);
      r -= roots[idx];
      if ((r.array() < 0).any()) break;
    }
    std::lock_guard<std::mutex> lk(mu_);
    memo_[key] = total;
    return total;
  };
  return rec(0, beta);
}

Int kostant_partition(const RootSystem& rs, const IntVec& beta) {
  KostantTable tab(rs);
  return tab(beta);
}

namespace {

CVec act(const IntMat& w, const RatVec& v) {
  int n = static_cast<int>(v.size());
  CVec out(n);
  for (int i = 0; i < n; ++i) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += Rational(w(i, j)) * v[j];
    out[i] = to_double(s);
  }
  return out;
}

}  // namespace

Complex weyl_numerator(const RootSystem& rs, const std::vector<WeylElement>& W,
                       const RatVec& lam, const CVec& x) {
  RatVec shifted = lam + rs.rho_alpha;
  Complex sum = 0.0;
  for (const auto& w : W) {
    CVec wv = act(w.matrix, shifted);
    sum += static_cast<double>(w.sign) * std::exp(Complex(0.0, kTwoPi) * cdot(wv, x));
  }
  return sum;
}

Rational weyl_dimension(const RootSystem& rs, const RatVec& lam) {
  Rational result = 1;
  RatVec lr = lam + rs.rho_alpha;
  for (const auto& a : rs.positive_roots) {
    RatVec av = rat_vec(a);
    result *= rs.form(lr, av) / rs.form(rs.rho_alpha, av);
  }
  return result;
}

Complex weyl_character(const RootSystem& rs, const std::vector<WeylElement>& W,
                       const RatVec& lam, const CVec& x) {
  constexpr double kSingularThreshold = 1e-9;
  if (x.norm() == 0.0) return Complex(to_double(weyl_dimension(rs, lam)), 0.0);

  Complex den = weyl_numerator(rs, W, RatVec::Zero(rs.rank), x);
  if (std::abs(den) >= kSingularThreshold) {
    return weyl_numerator(rs, W, lam, x) / den;
  }

  // Limit along a fixed direction: chi(x + t d) for shrinking t, Richardson.
  CVec d(rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    d[i] = Complex(0.318309886 + 0.077 * i, 0.1591549431 - 0.031 * i);
  auto eval = [&](double t) {
    CVec xt = x + t * d;
    Complex dn = weyl_numerator(rs, W, RatVec::Zero(rs.rank), xt);
    return weyl_numerator(rs, W, lam, xt) / dn;
  };
  // Moderate t keeps the alternating sums well above double-precision noise
  // even when the denominator zero has order = #positive roots.
  std::vector<Complex> v;
  for (int j = 0; j < 6; ++j) v.push_back(eval(0.08 * std::pow(0.5, j)));
  for (int pass = 1; pass <= 3; ++pass) {
    double f = std::pow(2.0, pass);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = (f * v[i + 1] - v[i]) / (f - 1.0);
    v.pop_back();
  }
  Complex a = v[v.size() - 2], b = v[v.size() - 1];
  if (std::abs(a - b) > 1e-6 * (1.0 + std::abs(b)))
    throw NumericError("SingularEvaluationFailed");
  return b;
}

}  // namespace wtheta
