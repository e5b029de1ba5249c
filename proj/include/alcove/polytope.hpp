#ifndef ALCOVE_POLYTOPE_HPP
#define ALCOVE_POLYTOPE_HPP

#include <vector>

#include "alcove/solver.hpp"

namespace alcove {

/// Alcove-projected point cloud of momentum values.
struct AlcoveCloud {
  enum class Kind { Full, Real };

  std::vector<Eigen::VectorXd> points;  ///< alcove coordinates, n entries each
  SurfaceGroupData data;
  std::uint64_t seed = 0;
  int requested = 0;  ///< sample count asked for
  int rejected = 0;   ///< samples dropped (solver misses, eigen failures)
  Kind kind = Kind::Full;
};

/// N independent configurations, sampled with per-index streams of `seed`,
/// mapped through the momentum map and projected to the alcove.  Deterministic
/// per (seed, N) and independent of the worker count.
AlcoveCloud sample_polytope(const SurfaceGroupData& data, int count,
                            std::uint64_t seed, int jobs = 1);

/// Empirical image of the momentum map restricted to the fixed-point set of
/// beta: draws `count` targets from a Full cloud, runs the symmetric solver
/// on each, and records the momentum value of every converged witness.
/// Misses are counted in `rejected`, not errors.  Genus 0 only.
AlcoveCloud sample_real_polytope(const SurfaceGroupData& data, int count,
                                 std::uint64_t seed, const SolveOptions& opts = {},
                                 int jobs = 1);

/// Observed range of the alcove coordinate of c_1 c_2 over N sampled pairs
/// of SU(2) class elements with spectra (s1, -s1), (s2, -s2).  Brute-force
/// oracle: as N grows the range converges to
/// [|s1 - s2|, min(s1 + s2, 1 - s1 - s2)].
struct IntervalResult {
  double lo = 0.0;
  double hi = 0.0;
  long samples = 0;
};
IntervalResult su2_interval(double s1, double s2, long count, std::uint64_t seed);

/// Midpoint feasibility check of a Full cloud: random point pairs are
/// averaged in alcove coordinates and handed to solve_fiber.
struct ConvexityReport {
  int pairs = 0;
  int feasible = 0;
  double fraction = 0.0;
  double residual_tol = 0.0;
};
ConvexityReport verify_convexity(const AlcoveCloud& cloud, int pairs,
                                 const SolveOptions& opts = {}, int jobs = 1);

/// Two-sided comparison of a Real and a Full cloud over the same data:
/// directed Hausdorff distances in alcove coordinates plus a symmetric-solver
/// tally over grid targets placed inside the Full cloud (5% inset).
/// Throws DataMismatch if the clouds' class data differ.
struct RealEqualityReport {
  double hausdorff_real_to_full = 0.0;
  double hausdorff_full_to_real = 0.0;
  int grid_total = 0;
  int grid_converged = 0;
  double residual_tol = 0.0;
};
RealEqualityReport verify_real_equality(const AlcoveCloud& full,
                                        const AlcoveCloud& real_cloud, int grid,
                                        const SolveOptions& opts = {}, int jobs = 1);

/// Inset grid of solver targets inside the cloud (1-D grid over the observed
/// range for SU(2); convex combinations pulled toward the centroid above).
std::vector<AlcovePoint> grid_targets(const AlcoveCloud& cloud, int grid,
                                      double inset = 0.05);

/// The unique cell of maximal orbit dimension met by the cloud, with the
/// fraction of points classified into it.  Throws AmbiguousCell when two
/// distinct signatures attain the maximal orbit dimension, which flags a
/// tolerance problem rather than a geometric one.
struct DominantCellReport {
  CellSignature cell;
  double fraction = 0.0;
  int max_orbit_dim = 0;
};
DominantCellReport dominant_cell(const AlcoveCloud& cloud, double tol = kClassifyTol);

}  // namespace alcove

#endif
