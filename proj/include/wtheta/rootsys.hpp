#pragma once

#include "wtheta/rational.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace wtheta {

enum class Family { A, D, E };

Family parse_family(const std::string& s);
std::string family_name(Family f);

// ADE root datum. All lattice/weight vectors are exact rational vectors in
// the simple-root (alpha) basis; the Cartan matrix X doubles as the Gram
// matrix of the root lattice Q, so <u,v> = (u, X v) with the plain dot (.,.).
struct RootSystem {
  Family family;
  int rank;
  IntMat cartan;                       // X, symmetric, 2 on the diagonal
  std::vector<IntVec> positive_roots;  // alpha-coordinates, all >= 0
  RatVec rho_alpha;                    // alpha-coordinates of rho = sum omega_i
  RatMat fund_weights_alpha;           // columns = alpha-coordinates of omega_i
  RatMat cartan_inv;                   // X^{-1}

  // <u,v> = (u, X v), the invariant form on alpha-coordinates.
  Rational form(const RatVec& u, const RatVec& v) const;
  int num_positive_roots() const { return static_cast<int>(positive_roots.size()); }
};

struct WeylElement {
  IntMat matrix;  // action on alpha-coordinates
  int length;
  int sign;  // (-1)^length = det(matrix)
};

RootSystem build_root_system(Family family, int rank);

// Full enumeration by breadth-first closure of simple reflections; lengths
// are BFS depths. Throws NumericError("GroupTooLarge") past the cap.
std::vector<WeylElement> weyl_group(const RootSystem& rs, std::size_t cap = 1000000);

// Kostant partition values K(beta), memoized per table. Thread-safe.
class KostantTable {
 public:
  explicit KostantTable(const RootSystem& rs) : rs_(rs) {}
  Int operator()(const IntVec& beta) const;

 private:
  const RootSystem& rs_;
  mutable std::map<std::vector<int>, Int> memo_;
  mutable std::mutex mu_;
};

Int kostant_partition(const RootSystem& rs, const IntVec& beta);

// num_lambda(x) = sum_w (-1)^{l(w)} e^{2 pi i (w(lambda+rho), x)}; the pairing
// is the plain dot of alpha-coordinates with x.
Complex weyl_numerator(const RootSystem& rs, const std::vector<WeylElement>& W,
                       const RatVec& lam, const CVec& x);

// chi_lambda(x) = num_lambda(x) / num_0(x); near-singular x falls back to a
// limit along a fixed direction via Richardson extrapolation, and x = 0
// exactly returns the Weyl dimension formula value.
Complex weyl_character(const RootSystem& rs, const std::vector<WeylElement>& W,
                       const RatVec& lam, const CVec& x);

// dim V(lambda) = prod_{alpha>0} <lambda+rho, alpha> / <rho, alpha>.
Rational weyl_dimension(const RootSystem& rs, const RatVec& lam);

}  // namespace wtheta
