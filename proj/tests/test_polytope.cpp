#include <doctest.h>

#include <limits>

#include "alcove/polytope.hpp"
#include "support.hpp"

using namespace alcove;

namespace {

SurfaceGroupData su2_pair(double s1, double s2) {
  Eigen::VectorXd a(2), b(2);
  a << s1, -s1;
  b << s2, -s2;
  return SurfaceGroupData(2, 0, {{AlcovePoint(a), 2}, {AlcovePoint(b), 2}});
}

SurfaceGroupData identity_classes(int n, int l) {
  std::vector<ConjClassSpec> specs;
  for (int j = 0; j < l; ++j)
    specs.push_back({AlcovePoint(Eigen::VectorXd::Zero(n)), n});
  return SurfaceGroupData(n, 0, std::move(specs));
}

std::pair<double, double> range_of(const AlcoveCloud& cloud) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : cloud.points) {
    lo = std::min(lo, p[0]);
    hi = std::max(hi, p[0]);
  }
  return {lo, hi};
}

}  // namespace

TEST_CASE("the SU(2) product interval oracle") {
  // This sampler is the brute-force oracle used everywhere else; confirm it
  // against the closed-form interval before trusting it.
  const IntervalResult r1 = su2_interval(0.2, 0.15, 1000000, 404);
  CHECK(std::abs(r1.lo - 0.05) < 0.005);
  CHECK(std::abs(r1.hi - 0.35) < 0.005);

  const IntervalResult r2 = su2_interval(0.25, 0.25, 1000000, 405);
  CHECK(r2.lo < 0.005);
  CHECK(r2.hi > 0.495);

  // an identity class pins the product's class
  const IntervalResult r3 = su2_interval(0.0, 0.3, 1000, 406);
  CHECK(std::abs(r3.lo - 0.3) < 1e-9);
  CHECK(std::abs(r3.hi - 0.3) < 1e-9);

  // enlarging the sample only tightens toward the closed form
  const IntervalResult small = su2_interval(0.2, 0.15, 10000, 407);
  const IntervalResult large = su2_interval(0.2, 0.15, 100000, 407);
  CHECK(large.lo <= small.lo + 3.0 / std::sqrt(10000.0));
  CHECK(large.hi >= small.hi - 3.0 / std::sqrt(10000.0));
  CHECK(large.lo >= 0.05 - 1e-9);
  CHECK(large.hi <= 0.35 + 1e-9);
}

TEST_CASE("full polytope sampling") {
  SUBCASE("identity classes collapse to a point") {
    const AlcoveCloud cloud = sample_polytope(identity_classes(3, 2), 50, 1);
    for (const auto& p : cloud.points) CHECK(p.norm() < 1e-12);
  }

  SUBCASE("SU(2) cloud matches the oracle interval") {
    const AlcoveCloud cloud = sample_polytope(su2_pair(0.2, 0.15), 30000, 7);
    const auto [lo, hi] = range_of(cloud);
    CHECK(std::abs(lo - 0.05) < 0.01);
    CHECK(std::abs(hi - 0.35) < 0.01);
  }

  SUBCASE("bit-for-bit determinism, independent of the worker count") {
    const SurfaceGroupData data = su2_pair(0.2, 0.15);
    const AlcoveCloud c1 = sample_polytope(data, 500, 11, 1);
    const AlcoveCloud c2 = sample_polytope(data, 500, 11, 4);
    REQUIRE(c1.points.size() == c2.points.size());
    for (std::size_t k = 0; k < c1.points.size(); ++k)
      CHECK(c1.points[k] == c2.points[k]);
  }

  SUBCASE("genus one with no punctures covers the whole alcove") {
    const SurfaceGroupData data(2, 1, {});
    const AlcoveCloud cloud = sample_polytope(data, 10000, 13);
    const auto [lo, hi] = range_of(cloud);
    CHECK(lo < 0.02);
    CHECK(hi > 0.48);
  }
}

TEST_CASE("real polytope sampling matches the full cloud") {
  SUBCASE("identity classes") {
    const AlcoveCloud cloud = sample_real_polytope(identity_classes(2, 2), 5, 2);
    REQUIRE(!cloud.points.empty());
    for (const auto& p : cloud.points) CHECK(p.norm() < 1e-6);
  }

  SUBCASE("SU(2) real cloud spans the oracle interval") {
    // near the polytope boundary the penalty objective degenerates and the
    // descent crawls; a larger per-target budget restores endpoint coverage
    SolveOptions opts;
    opts.seed = 2;
    opts.max_iters = 6000;
    const AlcoveCloud cloud = sample_real_polytope(su2_pair(0.2, 0.15), 300, 3, opts, 4);
    REQUIRE(cloud.points.size() >= 280);
    const auto [lo, hi] = range_of(cloud);
    CHECK(std::abs(lo - 0.05) < 0.01);
    CHECK(std::abs(hi - 0.35) < 0.01);
    // containment: every real point lies inside the closed-form interval
    for (const auto& p : cloud.points) {
      CHECK(p[0] > 0.05 - 1e-6);
      CHECK(p[0] < 0.35 + 1e-6);
    }
  }
}

TEST_CASE("midpoint convexity verification") {
  SUBCASE("single-point cloud") {
    const AlcoveCloud cloud = sample_polytope(identity_classes(2, 2), 10, 1);
    const ConvexityReport report = verify_convexity(cloud, 5, {});
    CHECK(report.fraction == doctest::Approx(1.0));
  }

  SUBCASE("SU(2) midpoints are feasible") {
    const AlcoveCloud cloud = sample_polytope(su2_pair(0.2, 0.15), 2000, 17);
    const ConvexityReport report = verify_convexity(cloud, 200, {});
    CHECK(report.fraction >= 0.99);
  }

  SUBCASE("SU(3) generic midpoints are feasible") {
    Eigen::VectorXd l1(3), l2(3);
    l1 << 0.31, 0.02, -0.33;
    l2 << 0.22, -0.05, -0.17;
    const SurfaceGroupData data(3, 0, {{AlcovePoint(l1), 3}, {AlcovePoint(l2), 3}});
    const AlcoveCloud cloud = sample_polytope(data, 2000, 19);
    const ConvexityReport report = verify_convexity(cloud, 100, {});
    CHECK(report.fraction >= 0.95);
  }
}

TEST_CASE("real versus full equality report") {
  SUBCASE("identity classes: both clouds are one point") {
    const SurfaceGroupData data = identity_classes(2, 2);
    const AlcoveCloud full = sample_polytope(data, 20, 1);
    const AlcoveCloud real_cloud = sample_real_polytope(data, 5, 2);
    const RealEqualityReport report = verify_real_equality(full, real_cloud, 3, {});
    CHECK(report.hausdorff_real_to_full < 1e-6);
    CHECK(report.hausdorff_full_to_real < 1e-6);
    CHECK(report.grid_converged == report.grid_total);
  }

  SUBCASE("SU(2): equality at the sampled scale") {
    const SurfaceGroupData data = su2_pair(0.2, 0.15);
    const AlcoveCloud full = sample_polytope(data, 20000, 23);
    const AlcoveCloud real_cloud = sample_real_polytope(data, 150, 29);
    const RealEqualityReport report = verify_real_equality(full, real_cloud, 21, {});
    CHECK(report.hausdorff_real_to_full <= 0.02);
    CHECK(report.hausdorff_full_to_real <= 0.02);
    CHECK(report.grid_total == 21);
    CHECK(report.grid_converged == 21);
  }

  SUBCASE("SU(3): equality over a two-dimensional alcove slice") {
    Eigen::VectorXd l1(3), l2(3);
    l1 << 0.31, 0.02, -0.33;
    l2 << 0.22, -0.05, -0.17;
    const SurfaceGroupData data(3, 0, {{AlcovePoint(l1), 3}, {AlcovePoint(l2), 3}});
    const AlcoveCloud full = sample_polytope(data, 10000, 51, 4);
    SolveOptions opts;
    opts.seed = 5;
    const AlcoveCloud real_cloud = sample_real_polytope(data, 800, 52, opts, 4);
    const RealEqualityReport report = verify_real_equality(full, real_cloud, 15, opts, 4);
    CHECK(report.hausdorff_real_to_full <= 0.05);
    CHECK(report.hausdorff_full_to_real <= 0.05);
    CHECK(report.grid_converged == report.grid_total);
  }

  SUBCASE("mismatched class data is rejected") {
    const AlcoveCloud full = sample_polytope(su2_pair(0.2, 0.15), 50, 1);
    const AlcoveCloud other = sample_real_polytope(su2_pair(0.2, 0.1), 5, 2);
    CHECK_THROWS_AS(verify_real_equality(full, other, 3, {}), DataMismatch);
  }
}

TEST_CASE("dominant cell detection") {
  SUBCASE("identity classes sit in the identity cell") {
    const AlcoveCloud cloud = sample_polytope(identity_classes(3, 2), 100, 1);
    const DominantCellReport report = dominant_cell(cloud);
    CHECK(report.cell.zero.size() == 3);  // all positive roots vanish
    CHECK(report.cell.one.empty());
    CHECK(report.fraction == doctest::Approx(1.0));
  }

  SUBCASE("generic SU(2) and SU(3) clouds are regular") {
    const AlcoveCloud c2 = sample_polytope(su2_pair(0.2, 0.15), 5000, 31);
    const DominantCellReport r2 = dominant_cell(c2);
    CHECK(r2.cell.zero.empty());
    CHECK(r2.cell.one.empty());
    CHECK(r2.fraction >= 0.99);

    Eigen::VectorXd l1(3), l2(3);
    l1 << 0.31, 0.02, -0.33;
    l2 << 0.22, -0.05, -0.17;
    const SurfaceGroupData data(3, 0, {{AlcovePoint(l1), 3}, {AlcovePoint(l2), 3}});
    const AlcoveCloud c3 = sample_polytope(data, 5000, 37);
    const DominantCellReport r3 = dominant_cell(c3);
    CHECK(r3.cell.zero.empty());
    CHECK(r3.cell.one.empty());
    CHECK(r3.fraction >= 0.99);
  }
}
