#ifndef ALCOVE_SURFACE_HPP
#define ALCOVE_SURFACE_HPP

#include <optional>
#include <vector>

#include "alcove/unitary.hpp"

namespace alcove {

/// Default tolerance for class-membership checks on configurations.
inline constexpr double kClassMemberTol = 1e-8;
/// Default tolerance for witness searches (intertwiners, chains).
inline constexpr double kWitnessTol = 1e-8;

/// Combinatorial data of the space (SU(n) x SU(n))^g x C_1 x ... x C_l:
/// a genus and a list of prescribed conjugacy classes.
struct SurfaceGroupData {
  int n = 2;
  int genus = 0;
  std::vector<ConjClassSpec> classes;

  SurfaceGroupData(int n_, int genus_, std::vector<ConjClassSpec> classes_);
  int puncture_count() const { return static_cast<int>(classes.size()); }

  bool operator==(const SurfaceGroupData& other) const;
};

/// A point of the space: handle matrices (a_1, b_1, ..., a_g, b_g) plus one
/// matrix per puncture, each lying in its prescribed class.  Membership is
/// checked through the spectrum, so externally supplied matrices are
/// accepted.  Immutable after construction.
class Configuration {
 public:
  Configuration(SurfaceGroupData data, std::vector<Matrix> handles,
                std::vector<Matrix> punctures, double tol = kClassMemberTol);

  const SurfaceGroupData& data() const { return data_; }
  const std::vector<Matrix>& handles() const { return handles_; }
  const std::vector<Matrix>& punctures() const { return punctures_; }

 private:
  SurfaceGroupData data_;
  std::vector<Matrix> handles_;
  std::vector<Matrix> punctures_;
};

/// Draws a configuration with Haar handles and uniform class samples.
Configuration sample_configuration(const SurfaceGroupData& data, RandomStream& rng);

/// Momentum map value [a_1,b_1]...[a_g,b_g] c_1 ... c_l.  Equivariant under
/// simultaneous conjugation.
Matrix moment(const Configuration& cfg);

/// Momentum product on raw matrix tuples (no validation).
Matrix moment_product(const std::vector<Matrix>& handles,
                      const std::vector<Matrix>& punctures);

/// The form-reversing involution on genus-0 configurations, component j:
///   c_j  |->  P_j^T c_j^T (P_j^T)^{-1},   P_j = c_{j+1} ... c_l.
/// Each component stays in its class; beta is an involution satisfying
/// moment(beta(cfg)) = tau_minus(moment(cfg)) and the twisted equivariance
/// beta(u.cfg) = tau(u).beta(cfg).  Raw-tuple version below.
Configuration beta(const Configuration& cfg);
std::vector<Matrix> beta_components(const std::vector<Matrix>& punctures);

/// max_j || beta(cfg)_j - c_j ||_F, the distance to the fixed-point set.
double beta_residual(const std::vector<Matrix>& punctures);

/// Searches for phi in Fix(tau^-) intertwining cfg and beta(cfg):
/// beta(cfg)_j phi = phi c_j for all j.  The intertwiner equations stack
/// into one homogeneous linear system; kernel vectors (singular-value
/// threshold 1e-8 relative) are symmetrized, polar-projected onto SU(n) and
/// re-verified.  Returns the first verified element, or nullopt: the
/// configuration is then not decomposable at this tolerance.
std::optional<Matrix> twist_witness(const Configuration& cfg, double tol = kWitnessTol);

/// Decomposition chain w_1, ..., w_l of symmetric special unitaries with
/// c_j = w_j w_{j+1}^{-1} (cyclically, w_{l+1} = w_1).  Requires the
/// momentum value to be 1 within `tol` (throws NotInFiber otherwise).
/// Fixed points of beta are decomposed constructively through the symmetric
/// square-root recursion; other configurations go through twist_witness
/// first and are conjugated onto the fixed-point set.  Returns nullopt when
/// no witness is found.
std::optional<std::vector<Matrix>> decompose_witness(const Configuration& cfg,
                                                     double tol = kWitnessTol);

}  // namespace alcove

#endif
