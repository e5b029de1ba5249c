#include "alcove/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

namespace alcove {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (salt + 0x51ULL));
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

double point_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm();
}

double directed_hausdorff(const std::vector<Eigen::VectorXd>& from,
                          const std::vector<Eigen::VectorXd>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, point_distance(p, q));
    worst = std::max(worst, best);
  }
  return from.empty() ? 0.0 : worst;
}

}  // namespace

AlcoveCloud sample_polytope(const SurfaceGroupData& data, int count,
                            std::uint64_t seed, int jobs) {
  if (count < 1) throw Error("sample count must be >= 1");
  AlcoveCloud cloud{{}, data, seed, count, 0, AlcoveCloud::Kind::Full};
  std::vector<std::optional<Eigen::VectorXd>> slots(count);

  parallel_for(count, jobs, [&](int i) {
    RandomStream rng(seed, static_cast<std::uint64_t>(i));
    std::vector<Matrix> handles;
    handles.reserve(2 * data.genus);
    for (int h = 0; h < 2 * data.genus; ++h)
      handles.push_back(haar_special_unitary(data.n, rng));
    std::vector<Matrix> punctures;
    punctures.reserve(data.classes.size());
    for (const auto& spec : data.classes) punctures.push_back(sample_class(spec, rng));
    try {
      slots[i] = spectrum_to_alcove(moment_product(handles, punctures)).coords();
    } catch (const Error&) {
      slots[i] = std::nullopt;
    }
  });

  cloud.points.reserve(count);
  for (auto& s : slots) {
    if (s)
      cloud.points.push_back(std::move(*s));
    else
      ++cloud.rejected;
  }
  return cloud;
}

AlcoveCloud sample_real_polytope(const SurfaceGroupData& data, int count,
                                 std::uint64_t seed, const SolveOptions& opts,
                                 int jobs) {
  if (data.genus != 0)
    throw GenusUnsupported("the real polytope is defined through the genus-0 involution");
  const AlcoveCloud targets = sample_polytope(data, count, derive_seed(seed, 1), jobs);

  AlcoveCloud cloud{{}, data, seed, count, 0, AlcoveCloud::Kind::Real};
  const int total = static_cast<int>(targets.points.size());
  std::vector<std::optional<Eigen::VectorXd>> slots(total);

  parallel_for(total, jobs, [&](int t) {
    try {
      SolveOptions per_target = opts;
      per_target.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(t) + 2);
      const AlcovePoint target(targets.points[t]);
      const FeasibilityReport report = solve_fiber_symmetric(data, target, per_target);
      if (report.status == SolveStatus::Converged)
        slots[t] = spectrum_to_alcove(moment(*report.witness)).coords();
    } catch (const Error&) {
      // counted as a rejection below
    }
  });

  for (auto& s : slots) {
    if (s)
      cloud.points.push_back(std::move(*s));
    else
      ++cloud.rejected;
  }
  cloud.rejected += targets.rejected;
  return cloud;
}

IntervalResult su2_interval(double s1, double s2, long count, std::uint64_t seed) {
  if (!(s1 >= 0.0 && s1 <= 0.5 && s2 >= 0.0 && s2 <= 0.5))
    throw Error("SU(2) class coordinates must lie in [0, 1/2]");
  if (count < 1) throw Error("sample count must be >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::complex<double> e1 = std::polar(1.0, two_pi * s1);
  const std::complex<double> e2 = std::polar(1.0, two_pi * s2);
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1(0, 0) = e1;
  d1(1, 1) = std::conj(e1);
  d2(0, 0) = e2;
  d2(1, 1) = std::conj(e2);

  IntervalResult out;
  out.samples = count;
  out.lo = std::numeric_limits<double>::infinity();
  out.hi = -std::numeric_limits<double>::infinity();
  RandomStream rng(seed);
  for (long i = 0; i < count; ++i) {
    const Matrix k = haar_special_unitary(2, rng);
    const Matrix prod = d1 * k * d2 * k.adjoint();
    const double cosv = std::clamp(0.5 * prod.trace().real(), -1.0, 1.0);
    const double x = std::acos(cosv) / two_pi;
    out.lo = std::min(out.lo, x);
    out.hi = std::max(out.hi, x);
  }
  return out;
}

ConvexityReport verify_convexity(const AlcoveCloud& cloud, int pairs,
                                 const SolveOptions& opts, int jobs) {
  if (cloud.kind != AlcoveCloud::Kind::Full)
    throw Error("convexity check expects a Full cloud");
  if (cloud.points.empty()) throw Error("cannot verify an empty cloud");
  ConvexityReport report;
  report.pairs = pairs;
  report.residual_tol = opts.residual_tol;

  RandomStream pick(derive_seed(cloud.seed, 3));
  const int size = static_cast<int>(cloud.points.size());
  std::vector<Eigen::VectorXd> midpoints(pairs);
  for (int p = 0; p < pairs; ++p) {
    const int i = static_cast<int>(pick.next_u64() % size);
    const int j = static_cast<int>(pick.next_u64() % size);
    midpoints[p] = 0.5 * (cloud.points[i] + cloud.points[j]);
  }

  std::atomic<int> feasible{0};
  parallel_for(pairs, jobs, [&](int p) {
    try {
      SolveOptions per_target = opts;
      per_target.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(p) + 7);
      const FeasibilityReport r =
          solve_fiber(cloud.data, AlcovePoint(midpoints[p]), per_target);
      if (r.status == SolveStatus::Converged) feasible.fetch_add(1);
    } catch (const Error&) {
      // not counted as feasible
    }
  });
  report.feasible = feasible.load();
  report.fraction = pairs > 0 ? static_cast<double>(report.feasible) / pairs : 1.0;
  return report;
}

std::vector<AlcovePoint> grid_targets(const AlcoveCloud& cloud, int grid, double inset) {
  if (cloud.points.empty()) throw Error("cannot build targets from an empty cloud");
  const int n = cloud.data.n;
  std::vector<AlcovePoint> targets;
  targets.reserve(grid);

  if (n == 2) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : cloud.points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    const double width = hi - lo;
    const double start = lo + inset * width;
    const double stop = hi - inset * width;
    for (int k = 0; k < grid; ++k) {
      const double x =
          grid == 1 ? 0.5 * (start + stop)
                    : start + (stop - start) * static_cast<double>(k) / (grid - 1);
      Eigen::VectorXd coords(2);
      coords << x, -x;
      targets.emplace_back(coords);
    }
    return targets;
  }

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
  for (const auto& p : cloud.points) centroid += p;
  centroid /= static_cast<double>(cloud.points.size());
  RandomStream pick(derive_seed(cloud.seed, 5));
  const int size = static_cast<int>(cloud.points.size());
  for (int k = 0; k < grid; ++k) {
    const int i = static_cast<int>(pick.next_u64() % size);
    const int j = static_cast<int>(pick.next_u64() % size);
    const Eigen::VectorXd combo = 0.5 * (cloud.points[i] + cloud.points[j]);
    targets.emplace_back(centroid + (1.0 - inset) * (combo - centroid));
  }
  return targets;
}

RealEqualityReport verify_real_equality(const AlcoveCloud& full,
                                        const AlcoveCloud& real_cloud, int grid,
                                        const SolveOptions& opts, int jobs) {
  if (!(full.data == real_cloud.data))
    throw DataMismatch("clouds were generated from different class data");
  if (full.data.genus != 0)
    throw GenusUnsupported("real equality is defined through the genus-0 involution");
  if (full.kind != AlcoveCloud::Kind::Full || real_cloud.kind != AlcoveCloud::Kind::Real)
    throw Error("expected one Full and one Real cloud");

  RealEqualityReport report;
  report.residual_tol = opts.residual_tol;
  report.hausdorff_real_to_full = directed_hausdorff(real_cloud.points, full.points);
  report.hausdorff_full_to_real = directed_hausdorff(full.points, real_cloud.points);

  const std::vector<AlcovePoint> targets = grid_targets(full, grid);
  report.grid_total = static_cast<int>(targets.size());
  std::atomic<int> converged{0};
  parallel_for(report.grid_total, jobs, [&](int t) {
    try {
      SolveOptions per_target = opts;
      per_target.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(t) + 11);
      const FeasibilityReport r = solve_fiber_symmetric(full.data, targets[t], per_target);
      if (r.status == SolveStatus::Converged) converged.fetch_add(1);
    } catch (const Error&) {
      // not counted as converged
    }
  });
  report.grid_converged = converged.load();
  return report;
}

DominantCellReport dominant_cell(const AlcoveCloud& cloud, double tol) {
  if (cloud.points.empty()) throw Error("cannot classify an empty cloud");
  const int n = cloud.data.n;

  std::vector<CellSignature> seen;
  std::vector<long> counts;
  for (const auto& p : cloud.points) {
    const CellSignature sig = classify(AlcovePoint(p), tol);
    auto it = std::find(seen.begin(), seen.end(), sig);
    if (it == seen.end()) {
      seen.push_back(sig);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - seen.begin())];
    }
  }

  int max_orbit = -1;
  for (const auto& sig : seen) max_orbit = std::max(max_orbit, orbit_dim(sig, n));
  std::vector<std::size_t> at_max;
  for (std::size_t s = 0; s < seen.size(); ++s)
    if (orbit_dim(seen[s], n) == max_orbit) at_max.push_back(s);
  if (at_max.size() != 1)
    throw AmbiguousCell("multiple cells attain the maximal orbit dimension at this tolerance");

  DominantCellReport report;
  report.cell = seen[at_max.front()];
  report.max_orbit_dim = max_orbit;
  report.fraction =
      static_cast<double>(counts[at_max.front()]) / static_cast<double>(cloud.points.size());
  return report;
}

}  // namespace alcove
