#include <doctest.h>

#include "alcove/root_alcove.hpp"
#include "alcove/unitary.hpp"
#include "support.hpp"

using namespace alcove;
using alcove::testing::numeric_centralizer_dim;

namespace {

AlcovePoint point(std::initializer_list<double> coords, double tol = kPointTol) {
  Eigen::VectorXd v(static_cast<int>(coords.size()));
  int k = 0;
  for (double c : coords) v[k++] = c;
  return AlcovePoint(v, tol);
}

Eigen::VectorXd vec(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<int>(coords.size()));
  int k = 0;
  for (double c : coords) v[k++] = c;
  return v;
}

}  // namespace

TEST_CASE("alcove point invariants are enforced") {
  CHECK_NOTHROW(point({0.4, 0.2, -0.6}));
  CHECK_THROWS_AS(point({0.4, 0.2, -0.5}), Error);   // nonzero sum
  CHECK_THROWS_AS(point({0.2, 0.4, -0.6}), Error);   // not decreasing
  CHECK_THROWS_AS(point({0.4, 0.4, -0.8}), Error);   // highest root 1.2 > 1
}

TEST_CASE("classify identifies interior points, walls, and the identity") {
  const CellSignature interior = classify(point({1.0 / 3, 0.0, -1.0 / 3}), 1e-9);
  CHECK(interior.zero.empty());
  CHECK(interior.one.empty());

  const CellSignature identity = classify(point({0.0, 0.0, 0.0}));
  CHECK(identity.zero == std::vector<RootIndex>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(identity.one.empty());

  const CellSignature affine = classify(point({0.5, 0.0, -0.5}));
  CHECK(affine.zero.empty());
  CHECK(affine.one == std::vector<RootIndex>{{1, 3}});
}

TEST_CASE("classify snaps near-degenerate values transitively") {
  // adjacent gaps below tolerance, total gap above it: the closure must
  // still merge all three coordinates
  const double eps = 0.7e-8;
  const CellSignature sig = classify(point({eps, 0.0, -eps}), 1e-8);
  CHECK(sig.zero.size() == 3);
  CHECK(signature_consistent(sig, 3));

  // against the affine wall: alpha_12 ~ 0 and alpha_13 ~ 1 force alpha_23 = 1
  // even though its raw value 1 - 1.8e-8 is outside the tolerance window
  const double d = 0.9e-8;
  const CellSignature wall =
      classify(point({1.0 / 3, 1.0 / 3 - d, 1.0 / 3 - 1.0 + d}), 1e-8);
  CHECK(wall.zero == std::vector<RootIndex>{{1, 2}});
  CHECK(wall.one == std::vector<RootIndex>{{1, 3}, {2, 3}});
}

TEST_CASE("classify rejects tolerances that merge both walls") {
  CHECK_THROWS_AS(classify(point({0.5, 0.0, -0.5}), 0.5), InconsistentTolerance);
}

TEST_CASE("stabilizer dimensions match the block counting") {
  CHECK(stabilizer_dim({{ {1, 2} }, {}}, 2) == 3);   // identity point of SU(2)
  CHECK(stabilizer_dim({{}, { {1, 3} }}, 3) == 4);   // affine wall of SU(3)
  CHECK(stabilizer_dim({{}, {}}, 3) == 2);           // regular point, torus rank
  CHECK_THROWS_AS(stabilizer_dim({{ {1, 2} }, { {1, 2} }}, 2), Error);
}

TEST_CASE("stabilizer dimension agrees with the numeric centralizer kernel") {
  // affine-wall example: X = (1/2, 0, -1/2), exp(X) = diag(-1, 1, -1)
  const AlcovePoint x = point({0.5, 0.0, -0.5});
  const Matrix u = class_representative({x, 3});
  CHECK(numeric_centralizer_dim(u) == 4);
  CHECK(stabilizer_dim(classify(x), 3) == 4);

  RandomStream rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    AlcovePoint p = testing::random_alcove_point(n, rng);
    if (trial % 2 == 0) {
      // force an exact degeneracy by averaging two adjacent coordinates
      Eigen::VectorXd coords = p.coords();
      const int k = static_cast<int>(rng.next_u64() % (n - 1));
      const double avg = 0.5 * (coords[k] + coords[k + 1]);
      coords[k] = coords[k + 1] = avg;
      p = AlcovePoint(coords);
    }
    const Matrix rep = class_representative({p, n});
    CHECK(stabilizer_dim(classify(p), n) == numeric_centralizer_dim(rep));
  }
}

TEST_CASE("alcove projection handles determinant windings") {
  const AlcovePoint minus_i = alcove_project(vec({0.5, 0.5}));
  CHECK(minus_i[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(minus_i[1] == doctest::Approx(-0.5).epsilon(1e-12));

  const AlcovePoint id = alcove_project(vec({0.0, 0.0, 0.0}));
  CHECK(id.coords().norm() == doctest::Approx(0.0).epsilon(1e-15));

  const AlcovePoint shifted = alcove_project(vec({0.4, 0.4, 0.2}));
  CHECK(shifted[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(shifted[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(shifted[2] == doctest::Approx(-0.6).epsilon(1e-12));

  // oracle: exp of the projection has exactly the input eigenvalue multiset
  std::vector<std::complex<double>> in, out;
  for (double ph : {0.4, 0.4, 0.2}) in.push_back(std::polar(1.0, 2 * M_PI * ph));
  for (int k = 0; k < 3; ++k) out.push_back(std::polar(1.0, 2 * M_PI * shifted[k]));
  auto angle_less = [](std::complex<double> a, std::complex<double> b) {
    return std::arg(a) < std::arg(b);
  };
  std::sort(in.begin(), in.end(), angle_less);
  std::sort(out.begin(), out.end(), angle_less);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(in[k] - out[k]) < 1e-12);
}

TEST_CASE("alcove projection rejects non-integral phase sums") {
  CHECK_THROWS_AS(alcove_project(vec({0.3, 0.3})), NonIntegralSum);
}

TEST_CASE("projection is a class invariant and idempotent") {
  RandomStream rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
    const Matrix u = haar_special_unitary(n, rng);
    const Matrix k = haar_special_unitary(n, rng);
    const AlcovePoint pu = spectrum_to_alcove(u);
    const AlcovePoint pk = spectrum_to_alcove(k * u * k.adjoint());
    CHECK((pu.coords() - pk.coords()).lpNorm<Eigen::Infinity>() < 1e-9);

    const AlcovePoint again = alcove_project(pu.coords());
    CHECK((again.coords() - pu.coords()).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("points sharing a signature share their stabilizer structure") {
  RandomStream rng(512);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3;
    Eigen::VectorXd a = testing::random_alcove_point(n, rng).coords();
    Eigen::VectorXd b = testing::random_alcove_point(n, rng).coords();
    // impose the same degeneracy pattern on both
    a[0] = a[1] = 0.5 * (a[0] + a[1]);
    b[0] = b[1] = 0.5 * (b[0] + b[1]);
    const CellSignature sa = classify(AlcovePoint(a));
    const CellSignature sb = classify(AlcovePoint(b));
    if (sa == sb) {
      CHECK(stabilizer_dim(sa, n) == stabilizer_dim(sb, n));
      CHECK(numeric_centralizer_dim(class_representative({AlcovePoint(a), n})) ==
            numeric_centralizer_dim(class_representative({AlcovePoint(b), n})));
    }
  }
}
