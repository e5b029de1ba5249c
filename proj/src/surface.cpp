#include "alcove/surface.hpp"

#include <algorithm>
#include <cmath>

#include "alcove/solver.hpp"

namespace alcove {

SurfaceGroupData::SurfaceGroupData(int n_, int genus_, std::vector<ConjClassSpec> classes_)
    : n(n_), genus(genus_), classes(std::move(classes_)) {
  if (n < 2) throw Error("surface data needs n >= 2");
  if (genus < 0) throw Error("surface data needs genus >= 0");
  if (genus == 0 && classes.empty())
    throw Error("genus 0 requires at least one conjugacy class");
  for (const auto& spec : classes) {
    if (spec.n != n) throw Error("all class specs must share n");
    if (spec.lambda.dim() != n) throw Error("class spectrum dimension mismatch");
  }
}

bool SurfaceGroupData::operator==(const SurfaceGroupData& other) const {
  if (n != other.n || genus != other.genus || classes.size() != other.classes.size())
    return false;
  for (std::size_t j = 0; j < classes.size(); ++j)
    if ((classes[j].lambda.coords() - other.classes[j].lambda.coords()).norm() > 1e-12)
      return false;
  return true;
}

Configuration::Configuration(SurfaceGroupData data, std::vector<Matrix> handles,
                             std::vector<Matrix> punctures, double tol)
    : data_(std::move(data)), handles_(std::move(handles)), punctures_(std::move(punctures)) {
  if (static_cast<int>(handles_.size()) != 2 * data_.genus)
    throw Error("configuration needs 2*genus handle matrices");
  if (punctures_.size() != data_.classes.size())
    throw Error("configuration needs one matrix per class");
  const double mat_tol = std::max(tol, kUnitaryTol * 10);
  for (const auto& h : handles_)
    if (!is_special_unitary(h, mat_tol)) throw Error("handle matrix is not special unitary");
  for (std::size_t j = 0; j < punctures_.size(); ++j) {
    if (!is_special_unitary(punctures_[j], mat_tol))
      throw Error("puncture matrix is not special unitary");
    const AlcovePoint spectrum = spectrum_to_alcove(punctures_[j]);
    const double dev =
        (spectrum.coords() - data_.classes[j].lambda.coords()).lpNorm<Eigen::Infinity>();
    if (dev > tol)
      throw Error("puncture matrix lies outside its prescribed class (deviation " +
                  std::to_string(dev) + ")");
  }
}

Configuration sample_configuration(const SurfaceGroupData& data, RandomStream& rng) {
  std::vector<Matrix> handles;
  handles.reserve(2 * data.genus);
  for (int i = 0; i < 2 * data.genus; ++i)
    handles.push_back(haar_special_unitary(data.n, rng));
  std::vector<Matrix> punctures;
  punctures.reserve(data.classes.size());
  for (const auto& spec : data.classes) punctures.push_back(sample_class(spec, rng));
  return Configuration(data, std::move(handles), std::move(punctures));
}

Matrix moment_product(const std::vector<Matrix>& handles,
                      const std::vector<Matrix>& punctures) {
  const int n = static_cast<int>(
      handles.empty() ? punctures.front().rows() : handles.front().rows());
  Matrix m = Matrix::Identity(n, n);
  for (std::size_t i = 0; i + 1 < handles.size(); i += 2)
    m *= commutator(handles[i], handles[i + 1]);
  for (const auto& c : punctures) m *= c;
  return m;
}

Matrix moment(const Configuration& cfg) {
  return moment_product(cfg.handles(), cfg.punctures());
}

std::vector<Matrix> beta_components(const std::vector<Matrix>& punctures) {
  const int l = static_cast<int>(punctures.size());
  const int n = static_cast<int>(punctures.front().rows());
  std::vector<Matrix> out(l);
  Matrix suffix = Matrix::Identity(n, n);  // P_j = c_{j+1} ... c_l
  for (int j = l - 1; j >= 0; --j) {
    out[j] = suffix.transpose() * punctures[j].transpose() * suffix.conjugate();
    suffix = punctures[j] * suffix;
  }
  return out;
}

Configuration beta(const Configuration& cfg) {
  if (cfg.data().genus != 0)
    throw GenusUnsupported("the involution is only defined here for genus 0");
  return Configuration(cfg.data(), {}, beta_components(cfg.punctures()));
}

double beta_residual(const std::vector<Matrix>& punctures) {
  const std::vector<Matrix> image = beta_components(punctures);
  double worst = 0.0;
  for (std::size_t j = 0; j < punctures.size(); ++j)
    worst = std::max(worst, (image[j] - punctures[j]).norm());
  return worst;
}

namespace {

// Nearest-unitary projection (polar factor); symmetric inputs stay symmetric.
Matrix polar_unitary(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Scales into SU(n); scalar factors commute with the intertwiner equations.
Matrix normalize_det(const Matrix& u) {
  const int n = static_cast<int>(u.rows());
  return u * std::polar(1.0, -std::arg(u.determinant()) / n);
}

double intertwiner_residual(const std::vector<Matrix>& image,
                            const std::vector<Matrix>& punctures, const Matrix& phi) {
  double worst = 0.0;
  for (std::size_t j = 0; j < punctures.size(); ++j)
    worst = std::max(worst, (image[j] * phi - phi * punctures[j]).norm());
  return worst;
}

}  // namespace

std::optional<Matrix> twist_witness(const Configuration& cfg, double tol) {
  if (cfg.data().genus != 0)
    throw GenusUnsupported("the involution is only defined here for genus 0");
  const int n = cfg.data().n;
  const int l = cfg.data().puncture_count();
  const std::vector<Matrix>& c = cfg.punctures();
  const std::vector<Matrix> image = beta_components(c);

  // Stack the equations beta_j phi - phi c_j = 0 as one (l n^2) x n^2 system
  // acting on vec(phi), column-major.
  Matrix stacked = Matrix::Zero(l * n * n, n * n);
  for (int j = 0; j < l; ++j) {
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) {
        const int vec_idx = col * n + row;
        for (int r = 0; r < n; ++r)
          stacked(j * n * n + col * n + r, vec_idx) += image[j](r, row);
        for (int cc = 0; cc < n; ++cc)
          stacked(j * n * n + cc * n + row, vec_idx) -= c[j](col, cc);
      }
  }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double threshold = 1e-8 * sigma[0];

  for (int k = n * n - 1; k >= 0; --k) {
    if (sigma[k] > threshold) break;
    Matrix candidate(n, n);
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row)
        candidate(row, col) = svd.matrixV()(col * n + row, k);
    for (const Matrix& seed :
         {candidate, Matrix(0.5 * (candidate + candidate.transpose()))}) {
      if (seed.norm() < 1e-12) continue;
      const Matrix phi = normalize_det(polar_unitary(seed));
      if (!is_symmetric(phi, tol)) continue;
      if (!is_special_unitary(phi, std::max(tol, kUnitaryTol * 10))) continue;
      if (intertwiner_residual(image, c, phi) <= tol) return phi;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Matrix>> decompose_witness(const Configuration& cfg, double tol) {
  if (cfg.data().genus != 0)
    throw GenusUnsupported("the involution is only defined here for genus 0");
  const int n = cfg.data().n;
  const int l = cfg.data().puncture_count();
  const Matrix mu = moment(cfg);
  if ((mu - Matrix::Identity(n, n)).norm() > tol)
    throw NotInFiber("momentum value is not the identity within tolerance");

  std::vector<Matrix> punctures = cfg.punctures();
  Matrix back = Matrix::Identity(n, n);  // undoes the conjugation onto Fix(beta)

  if (beta_residual(punctures) > tol) {
    const std::optional<Matrix> phi = twist_witness(cfg, tol);
    if (!phi) return std::nullopt;
    // With sigma^2 = phi symmetric, sigma.cfg is beta-fixed; decompose there
    // and pull the chain back by w_j -> sigma^{-1} w_j sigma^{-1}.
    const Matrix sigma = sqrt_symmetric(*phi);
    back = sigma.adjoint();
    for (auto& p : punctures) p = sigma * p * sigma.adjoint();
  }

  std::vector<Matrix> roots;
  try {
    roots = transfer_to_symmetric(punctures, 10 * tol);
  } catch (const NotBetaFixed&) {
    return std::nullopt;
  }
  // chain links w_j = (A_j ... A_l)^T (A_j ... A_l)
  std::vector<Matrix> chain(l);
  Matrix partial = Matrix::Identity(n, n);
  for (int j = l - 1; j >= 0; --j) {
    partial = roots[j] * partial;
    chain[j] = back * partial.transpose() * partial * back.transpose();
  }
  for (int j = 0; j < l; ++j) {
    const Matrix& next = chain[(j + 1) % l];
    if ((cfg.punctures()[j] - chain[j] * next.adjoint()).norm() > tol)
      return std::nullopt;
  }
  return chain;
}

}  // namespace alcove
