#ifndef ALCOVE_TESTS_SUPPORT_HPP
#define ALCOVE_TESTS_SUPPORT_HPP

#include <vector>

#include "alcove/surface.hpp"

namespace alcove::testing {

/// Independent oracle for stabilizer dimensions: the kernel dimension of
/// Y -> Y - u Y u^dagger on the traceless anti-Hermitian matrices, computed
/// as the rank deficiency of its real matrix over a basis of su(n).
inline int numeric_centralizer_dim(const Matrix& u, double threshold = 1e-8) {
  const int n = static_cast<int>(u.rows());
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix sym = Matrix::Zero(n, n), asym = Matrix::Zero(n, n);
      asym(i, j) = 1.0;
      asym(j, i) = -1.0;
      sym(i, j) = std::complex<double>(0, 1);
      sym(j, i) = std::complex<double>(0, 1);
      basis.push_back(asym);
      basis.push_back(sym);
    }
  for (int d = 0; d + 1 < n; ++d) {
    Matrix diag = Matrix::Zero(n, n);
    diag(d, d) = std::complex<double>(0, 1);
    diag(d + 1, d + 1) = std::complex<double>(0, -1);
    basis.push_back(diag);
  }
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd op(2 * n * n, dim);
  for (int k = 0; k < dim; ++k) {
    const Matrix image = basis[k] - u * basis[k] * u.adjoint();
    int row = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        op(row++, k) = image(r, c).real();
        op(row++, k) = image(r, c).imag();
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op);
  const auto& sigma = svd.singularValues();
  const double cutoff = threshold * std::max(1.0, sigma[0]);
  int kernel = 0;
  for (int k = 0; k < dim; ++k)
    if (sigma[k] <= cutoff) ++kernel;
  return kernel;
}

inline Eigen::MatrixXd random_real_orthogonal(int n, RandomStream& rng) {
  Eigen::MatrixXd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  for (int c = 0; c < n; ++c)
    if (qr.matrixQR()(c, c) < 0) q.col(c) *= -1.0;
  return q;
}

inline Matrix random_symmetric_su(int n, RandomStream& rng) {
  const Matrix k = haar_special_unitary(n, rng);
  return k.transpose() * k;
}

inline AlcovePoint random_alcove_point(int n, RandomStream& rng) {
  Eigen::VectorXd phases(n);
  for (int k = 0; k < n; ++k) phases[k] = rng.uniform();
  // eigenphases of a determinant-1 matrix sum to an integer
  const double excess = phases.sum() - std::floor(phases.sum());
  phases[n - 1] -= excess;
  if (phases[n - 1] < 0.0) phases[n - 1] += 1.0;
  return alcove_project(phases);
}

inline SurfaceGroupData random_surface_data(int n, int genus, int classes,
                                            RandomStream& rng) {
  std::vector<ConjClassSpec> specs;
  for (int j = 0; j < classes; ++j) specs.push_back({random_alcove_point(n, rng), n});
  return SurfaceGroupData(n, genus, std::move(specs));
}

/// Chain of beta-fixed punctures with product exactly 1: every right partial
/// product c_j ... c_l equals a prescribed symmetric special unitary.
inline std::vector<Matrix> random_beta_fixed_chain(int n, int l, RandomStream& rng) {
  std::vector<Matrix> partials(l + 1);
  partials[0] = Matrix::Identity(n, n);
  partials[l] = Matrix::Identity(n, n);
  for (int j = 1; j < l; ++j) partials[j] = random_symmetric_su(n, rng);
  std::vector<Matrix> chain(l);
  for (int j = 0; j < l; ++j) chain[j] = partials[j] * partials[j + 1].adjoint();
  return chain;
}

/// Cyclic decomposable punctures c_j = w_j w_{j+1}^{-1} (w_{l+1} = w_1) from
/// random symmetric chain elements; the product is 1 but the tuple is
/// generally not beta-fixed.
inline std::vector<Matrix> random_decomposable_punctures(int n, int l,
                                                         RandomStream& rng) {
  std::vector<Matrix> w(l);
  for (int j = 0; j < l; ++j) w[j] = random_symmetric_su(n, rng);
  std::vector<Matrix> c(l);
  for (int j = 0; j < l; ++j) c[j] = w[j] * w[(j + 1) % l].adjoint();
  return c;
}

inline SurfaceGroupData data_for_punctures(const std::vector<Matrix>& punctures,
                                           int genus = 0) {
  const int n = static_cast<int>(punctures.front().rows());
  std::vector<ConjClassSpec> specs;
  for (const auto& c : punctures) specs.push_back({spectrum_to_alcove(c), n});
  return SurfaceGroupData(n, genus, std::move(specs));
}

inline Matrix diagonal_su(const std::vector<double>& phases) {
  const int n = static_cast<int>(phases.size());
  Matrix d = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) d(k, k) = std::polar(1.0, phases[k]);
  return d;
}

}  // namespace alcove::testing

#endif
