#ifndef ALCOVE_ROOT_ALCOVE_HPP
#define ALCOVE_ROOT_ALCOVE_HPP

#include <Eigen/Dense>
#include <compare>
#include <vector>

#include "alcove/errors.hpp"

namespace alcove {

/// Default tolerance for deciding whether a root value sits on a wall.
inline constexpr double kClassifyTol = 1e-8;
/// Default tolerance for validating alcove-point invariants.
inline constexpr double kPointTol = 1e-9;

/// Positive root alpha_{ij}(x) = x_i - x_j of su(n), 1-based, i < j <= n.
struct RootIndex {
  int i;
  int j;
  friend auto operator<=>(const RootIndex&, const RootIndex&) = default;
};

/// A point of the closed Weyl alcove of SU(n) in eigenphase coordinates:
/// coordinates sum to zero, are weakly decreasing, and the highest root
/// value x_1 - x_n does not exceed 1.  An alcove point is the canonical
/// label of a conjugacy class; exp maps it to diag(e^{2 pi i x_k}).
class AlcovePoint {
 public:
  /// Validates the three invariants at `tol`; throws Error on violation.
  explicit AlcovePoint(Eigen::VectorXd coords, double tol = kPointTol);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int k) const { return coords_[k]; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double tol() const { return tol_; }

  /// Root value alpha_{ij}(x) = x_i - x_j (1-based indices).
  double root_value(const RootIndex& a) const {
    return coords_[a.i - 1] - coords_[a.j - 1];
  }

 private:
  Eigen::VectorXd coords_;
  double tol_;
};

/// Cell label of the closed alcove: the sets of positive roots whose value
/// is 0 (walls through the origin) or 1 (the affine wall).  Both sets are
/// kept sorted; they determine the stabilizer of exp(x) completely.
struct CellSignature {
  std::vector<RootIndex> zero;  ///< Z0: roots with alpha(x) = 0
  std::vector<RootIndex> one;   ///< Z1: roots with alpha(x) = 1

  bool operator==(const CellSignature&) const = default;
};

/// True when the signature is internally consistent: Z0 and Z1 disjoint and
/// closed under root addition (alpha_ik = alpha_ij + alpha_jk).
bool signature_consistent(const CellSignature& sig, int n);

/// Identifies the cell containing `x`.  Near-wall values are snapped and the
/// resulting equalities are propagated transitively, so the output always
/// satisfies the signature invariants.  Throws InconsistentTolerance when a
/// root value is within `tol` of both 0 and 1.
CellSignature classify(const AlcovePoint& x, double tol = kClassifyTol);

/// Dimension of the centralizer of exp(x) for any x in the cell:
/// rank + 2 * |Z0 u Z1|, with rank = n - 1.
int stabilizer_dim(const CellSignature& sig, int n);

/// Dimension of the conjugacy class of exp(x): (n^2 - 1) - stabilizer_dim.
int orbit_dim(const CellSignature& sig, int n);

/// Canonical projection of a multiset of eigenphases into the closed alcove.
///
/// Phases are reduced to [0,1) by fractional part (with a guard band snapping
/// values just below 1 to 0), their sum must then be an integer m within
/// `tol` (throws NonIntegralSum otherwise); the m largest entries are shifted
/// down by 1 and the result is sorted decreasingly.  exp of the result has
/// exactly the input eigenvalue multiset.
AlcovePoint alcove_project(const Eigen::VectorXd& phases, double tol = kClassifyTol);

}  // namespace alcove

#endif
