#ifndef ALCOVE_SOLVER_HPP
#define ALCOVE_SOLVER_HPP

#include <optional>
#include <vector>

#include "alcove/surface.hpp"

namespace alcove {

/// Options of the feasibility solvers.  Restarts are independent and owned
/// by private RNG streams derived from (seed, restart index).
struct SolveOptions {
  int max_iters = 2000;
  int restarts = 8;
  double step_init = 1.0;
  double grad_tol = 1e-10;
  double residual_tol = 1e-7;
  std::uint64_t seed = 0;
};

enum class SolveStatus { Converged, NonConvergent };

/// Outcome of a fiber search.  NonConvergent is a non-certificate: it
/// signals either infeasibility or an unlucky basin, never a proof.
struct FeasibilityReport {
  SolveStatus status = SolveStatus::NonConvergent;
  std::optional<Configuration> witness;
  double residual = 0.0;       ///< || moment - exp(target) ||_F at the best point
  double beta_residual = 0.0;  ///< max_j || beta_j - c_j ||_F (symmetric solves)
  int iterations = 0;          ///< iterations consumed by the reported restart
  int restarts_used = 0;
};

/// Searches mu^{-1}(exp(target)) by minimizing ||moment(cfg) - exp(target)||_F^2
/// over conjugations of the class representatives (and free handle matrices),
/// with analytic Riemannian gradients on SU(n), Armijo backtracking line
/// search, and multi-restart.  Converged iff the squared residual drops
/// below residual_tol^2.
FeasibilityReport solve_fiber(const SurfaceGroupData& data, const AlcovePoint& target,
                              const SolveOptions& opts = {});

/// Same search with the beta-fixity penalty sum_j ||beta_j - c_j||_F^2 added
/// (weight 1); genus 0 only.  Converged iff both terms are below
/// residual_tol^2; the witness is then beta-fixed within residual_tol.
FeasibilityReport solve_fiber_symmetric(const SurfaceGroupData& data,
                                        const AlcovePoint& target,
                                        const SolveOptions& opts = {});

/// Validates the analytic gradient of the fiber objective at cfg against
/// central finite differences along a fixed set of random skew-Hermitian
/// directions.  Returns the worst |difference| / max(1, |analytic|); expect
/// <= 1e-5 at eps = 1e-6 for well-conditioned points.  With `symmetric` the
/// beta-fixity penalty is included (genus 0 only).
double gradient_check(const SurfaceGroupData& data, const AlcovePoint& target,
                      const Configuration& cfg, double eps, bool symmetric = false);

/// Transfer from symmetric data: given A_1, ..., A_l in SU(n), returns
///   u_j = (A_{j+1}...A_l)^T (A_j^T A_j) ((A_{j+1}...A_l)^T)^{-1},
/// so that u_1...u_l = (A_1...A_l)^T (A_1...A_l) and spectrum(u_j) =
/// spectrum(A_j^T A_j).
std::vector<Matrix> transfer_from_symmetric(const std::vector<Matrix>& a);

/// Transfer onto symmetric data: given a beta-fixed chain w_1, ..., w_l with
/// product 1, produces A_1, ..., A_l with A_1...A_l = 1 and spectrum of
/// A_j^T A_j equal to spectrum of w_j, by the symmetric square-root
/// recursion A_l = sqrt(w_l), A_j = sqrt(((A_{j+1}..A_l)^T)^{-1} w_j
/// (A_{j+1}..A_l)^T), A_1 = (A_2..A_l)^{-1}.  Throws NotInFiber when the
/// product is off 1 and NotBetaFixed when a conjugated link fails symmetry.
std::vector<Matrix> transfer_to_symmetric(const std::vector<Matrix>& w,
                                          double tol = kWitnessTol);

}  // namespace alcove

#endif
