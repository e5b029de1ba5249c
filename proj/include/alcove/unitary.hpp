#ifndef ALCOVE_UNITARY_HPP
#define ALCOVE_UNITARY_HPP

#include <Eigen/Dense>
#include <complex>

#include "alcove/rng.hpp"
#include "alcove/root_alcove.hpp"

namespace alcove {

using Matrix = Eigen::MatrixXcd;

/// Default tolerance for reconstruction residuals (Takagi, square roots).
inline constexpr double kReconstructTol = 1e-9;
/// Unitarity / determinant slack per matrix dimension.
inline constexpr double kUnitaryTol = 1e-10;

bool is_special_unitary(const Matrix& u, double tol = kUnitaryTol);
bool is_symmetric(const Matrix& u, double tol = kUnitaryTol);

/// The involutive automorphism tau: entrywise complex conjugation.
inline Matrix tau(const Matrix& u) { return u.conjugate(); }

/// The anti-automorphism tau^-(u) = tau(u^{-1}); equals the transpose.
/// Its fixed-point set is the symmetric special unitaries.
inline Matrix tau_minus(const Matrix& u) { return u.transpose(); }

/// Group commutator a b a^{-1} b^{-1}.
inline Matrix commutator(const Matrix& a, const Matrix& b) {
  return a * b * a.adjoint() * b.adjoint();
}

/// A conjugacy class of SU(n), labeled by its alcove spectrum.
struct ConjClassSpec {
  AlcovePoint lambda;
  int n;
};

/// Diagonal representative exp(lambda) = diag(e^{2 pi i x_k}).
Matrix class_representative(const ConjClassSpec& spec);

/// Haar-distributed element of U(n) (Ginibre + QR with phase correction).
Matrix haar_unitary(int n, RandomStream& rng);

/// Haar-distributed element of SU(n) (determinant normalization of the above).
Matrix haar_special_unitary(int n, RandomStream& rng);

/// Uniform sample of the class: k exp(lambda) k^dagger with k Haar on SU(n).
Matrix sample_class(const ConjClassSpec& spec, RandomStream& rng);
Matrix sample_class(const ConjClassSpec& spec, std::uint64_t seed);

/// Eigenphases of a special unitary, projected to the closed Weyl alcove.
/// Conjugation-invariant; throws EigenFailure if the eigensolver fails.
AlcovePoint spectrum_to_alcove(const Matrix& u, double tol = kClassifyTol);

/// Takagi factorization w = O diag(e^{i phi}) O^T of a symmetric unitary,
/// with O real orthogonal and phases in (-pi, pi].
struct TakagiFactorization {
  Eigen::MatrixXd rotation;  ///< O, real orthogonal
  Eigen::VectorXd phases;    ///< phi, entries in (-pi, pi]
};

/// Computes the factorization by eigendecomposition: eigenspaces of a
/// symmetric unitary are stable under complex conjugation, so each admits a
/// real orthonormal basis, recovered from the real and imaginary parts of
/// the eigenvectors.  Diagonal inputs return O = I exactly.
/// Throws NotSymmetric if the symmetry invariant fails beyond `tol`.
TakagiFactorization takagi(const Matrix& w, double tol = kReconstructTol);

/// Symmetric square root A of a symmetric special unitary: A^T A = A^2 = w,
/// A symmetric with det A = 1.  Phases are halved after shifting the largest
/// phase by -2 pi when needed to keep the determinant at 1.
Matrix sqrt_symmetric(const Matrix& w, double tol = kReconstructTol);

}  // namespace alcove

#endif
