#include "alcove/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace alcove {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Chordal tolerance for grouping eigenvalues of a unitary into eigenspaces.
// True multiples agree to machine precision; gaps above this are resolved
// per eigenvector, keeping the reconstruction within its contract.
constexpr double kClusterTol = 1e-10;

// arg() lands in [-pi, pi]; fold -pi (reachable through signed zeros) to +pi.
double principal_phase(const std::complex<double>& z) {
  const double phase = std::arg(z);
  return phase <= -std::numbers::pi ? phase + kTwoPi : phase;
}

}  // namespace

bool is_special_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const int n = static_cast<int>(u.rows());
  const Matrix gram = u.adjoint() * u - Matrix::Identity(n, n);
  if (gram.norm() > tol * n) return false;
  return std::abs(u.determinant() - std::complex<double>(1.0, 0.0)) <= tol;
}

bool is_symmetric(const Matrix& u, double tol) {
  return (u - u.transpose()).norm() <= tol * u.rows();
}

Matrix class_representative(const ConjClassSpec& spec) {
  Matrix rep = Matrix::Zero(spec.n, spec.n);
  for (int k = 0; k < spec.n; ++k)
    rep(k, k) = std::polar(1.0, kTwoPi * spec.lambda[k]);
  return rep;
}

Matrix haar_unitary(int n, RandomStream& rng) {
  Matrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& qrm = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    const std::complex<double> d = qrm(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0) ? (d / a) : std::complex<double>(1.0, 0.0);
  }
  return q;
}

Matrix haar_special_unitary(int n, RandomStream& rng) {
  Matrix q = haar_unitary(n, rng);
  const double theta = std::arg(q.determinant());
  return q * std::polar(1.0, -theta / n);
}

Matrix sample_class(const ConjClassSpec& spec, RandomStream& rng) {
  const Matrix k = haar_special_unitary(spec.n, rng);
  return k * class_representative(spec) * k.adjoint();
}

Matrix sample_class(const ConjClassSpec& spec, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_class(spec, rng);
}

AlcovePoint spectrum_to_alcove(const Matrix& u, double tol) {
  const int n = static_cast<int>(u.rows());
  Eigen::ComplexEigenSolver<Matrix> es(u, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw EigenFailure("eigensolver did not converge on a unitary matrix");
  Eigen::VectorXd phases(n);
  for (int k = 0; k < n; ++k) phases[k] = std::arg(es.eigenvalues()[k]) / kTwoPi;
  return alcove_project(phases, tol);
}

TakagiFactorization takagi(const Matrix& w, double tol) {
  const int n = static_cast<int>(w.rows());
  if ((w - w.transpose()).norm() > tol * n)
    throw NotSymmetric("matrix is not symmetric within tolerance");

  TakagiFactorization out;
  out.rotation = Eigen::MatrixXd::Identity(n, n);
  out.phases = Eigen::VectorXd::Zero(n);

  // Diagonal matrices are already factored; keep O = I exactly.
  double offdiag = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c) offdiag += std::norm(w(r, c));
  if (std::sqrt(offdiag) <= 1e-14 * n) {
    for (int k = 0; k < n; ++k) out.phases[k] = principal_phase(w(k, k));
    return out;
  }

  Eigen::ComplexEigenSolver<Matrix> es(w, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw EigenFailure("eigensolver did not converge on a symmetric unitary");

  // Group eigenvalues on the circle; each group's eigenspace is stable under
  // complex conjugation, so the real and imaginary parts of its eigenvectors
  // span a real form, orthonormalized by an SVD.
  std::vector<int> group(n, -1);
  int groups = 0;
  for (int k = 0; k < n; ++k) {
    if (group[k] >= 0) continue;
    group[k] = groups;
    for (int m = k + 1; m < n; ++m)
      if (group[m] < 0 &&
          std::abs(es.eigenvalues()[m] - es.eigenvalues()[k]) <= kClusterTol)
        group[m] = groups;
    ++groups;
  }

  int col = 0;
  for (int gidx = 0; gidx < groups; ++gidx) {
    std::vector<int> members;
    for (int k = 0; k < n; ++k)
      if (group[k] == gidx) members.push_back(k);
    const int m = static_cast<int>(members.size());
    Eigen::MatrixXd basis(n, 2 * m);
    for (int c = 0; c < m; ++c) {
      basis.col(2 * c) = es.eigenvectors().col(members[c]).real();
      basis.col(2 * c + 1) = es.eigenvectors().col(members[c]).imag();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU);
    if (svd.singularValues()[m - 1] <= 1e-10 * svd.singularValues()[0])
      throw EigenFailure("eigenspace realification lost rank");
    out.rotation.block(0, col, n, m) = svd.matrixU().leftCols(m);
    col += m;
  }

  // Columns from distinct eigenspaces are orthogonal; a final QR polish
  // removes the residual drift before reading off the phases.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(out.rotation);
  Eigen::MatrixXd q = qr.householderQ();
  for (int c = 0; c < n; ++c)
    if (qr.matrixQR()(c, c) < 0) q.col(c) *= -1.0;
  out.rotation = q;

  const Matrix diag = out.rotation.transpose() * w * out.rotation;
  for (int k = 0; k < n; ++k) out.phases[k] = principal_phase(diag(k, k));

  Matrix rebuilt = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    rebuilt += std::polar(1.0, out.phases[k]) *
               (out.rotation.col(k) * out.rotation.col(k).transpose());
  if ((rebuilt - w).norm() > std::max(tol, kReconstructTol) * n)
    throw EigenFailure("Takagi reconstruction residual too large");
  return out;
}

Matrix sqrt_symmetric(const Matrix& w, double tol) {
  const int n = static_cast<int>(w.rows());
  if (std::abs(w.determinant() - std::complex<double>(1.0, 0.0)) >
      10 * std::max(tol, kUnitaryTol))
    throw Error("symmetric square root requires determinant 1");
  TakagiFactorization tf = takagi(w, tol);

  // det A = exp(i sum(phi)/2) = +-1; when -1, shift one phase by -2 pi
  // before halving.  The largest phase is corrected (last index on ties).
  const double total = tf.phases.sum();
  const long winding = std::lround(total / kTwoPi);
  if (((winding % 2) + 2) % 2 == 1) {
    int pick = 0;
    for (int k = 1; k < n; ++k)
      if (tf.phases[k] >= tf.phases[pick]) pick = k;
    tf.phases[pick] -= kTwoPi;
  }

  Matrix root = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    root += std::polar(1.0, 0.5 * tf.phases[k]) *
            (tf.rotation.col(k) * tf.rotation.col(k).transpose());
  return root;
}

}  // namespace alcove
