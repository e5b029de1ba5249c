#include "alcove/root_alcove.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace alcove {

namespace {

// Guard band under which a fractional phase just below 1 is folded to 0.
constexpr double kWrapGuard = 1e-12;

std::string format_point(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (int k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x[k];
  os << ")";
  return os.str();
}

}  // namespace

AlcovePoint::AlcovePoint(Eigen::VectorXd coords, double tol)
    : coords_(std::move(coords)), tol_(tol) {
  if (coords_.size() < 2) throw Error("alcove point needs dimension >= 2");
  if (tol_ < 0) throw Error("alcove point tolerance must be nonnegative");
  const int n = static_cast<int>(coords_.size());
  if (std::abs(coords_.sum()) > tol_ * n)
    throw Error("alcove point coordinates must sum to zero: " + format_point(coords_));
  for (int k = 0; k + 1 < n; ++k)
    if (coords_[k] < coords_[k + 1] - tol_)
      throw Error("alcove point coordinates must be decreasing: " + format_point(coords_));
  if (coords_[0] - coords_[n - 1] > 1.0 + tol_)
    throw Error("highest root value exceeds 1: " + format_point(coords_));
}

bool signature_consistent(const CellSignature& sig, int n) {
  auto in = [](const std::vector<RootIndex>& v, RootIndex a) {
    return std::find(v.begin(), v.end(), a) != v.end();
  };
  for (const auto& a : sig.zero) {
    if (!(1 <= a.i && a.i < a.j && a.j <= n)) return false;
    if (in(sig.one, a)) return false;
  }
  for (const auto& a : sig.one)
    if (!(1 <= a.i && a.i < a.j && a.j <= n)) return false;
  // additive closure over alpha_ik = alpha_ij + alpha_jk
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        const RootIndex ij{i, j}, jk{j, k}, ik{i, k};
        if (in(sig.zero, ij) && in(sig.zero, jk) && !in(sig.zero, ik)) return false;
        if (in(sig.zero, ij) && in(sig.one, ik) && !in(sig.one, jk)) return false;
        if (in(sig.one, ik) && in(sig.zero, jk) && !in(sig.one, ij)) return false;
      }
  return true;
}

CellSignature classify(const AlcovePoint& x, double tol) {
  const int n = x.dim();
  // flag matrices over all ordered pairs i < j
  std::vector<std::vector<bool>> zero(n + 1, std::vector<bool>(n + 1, false));
  std::vector<std::vector<bool>> one(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double v = x.root_value({i, j});
      if (std::abs(v) <= tol) zero[i][j] = true;
      if (std::abs(v - 1.0) <= tol) one[i][j] = true;
    }
  // snap-to-cell: propagate equalities until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          if (zero[i][j] && zero[j][k] && !zero[i][k]) zero[i][k] = changed = true;
          if (zero[i][j] && one[i][k] && !one[j][k]) one[j][k] = changed = true;
          if (one[i][k] && zero[j][k] && !one[i][j]) one[i][j] = changed = true;
        }
  }
  CellSignature sig;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (zero[i][j] && one[i][j])
        throw InconsistentTolerance("root value within tolerance of both 0 and 1");
      if (zero[i][j]) sig.zero.push_back({i, j});
      if (one[i][j]) sig.one.push_back({i, j});
    }
  return sig;
}

int stabilizer_dim(const CellSignature& sig, int n) {
  if (!signature_consistent(sig, n)) throw Error("inconsistent cell signature");
  return (n - 1) + 2 * static_cast<int>(sig.zero.size() + sig.one.size());
}

int orbit_dim(const CellSignature& sig, int n) {
  return (n * n - 1) - stabilizer_dim(sig, n);
}

AlcovePoint alcove_project(const Eigen::VectorXd& phases, double tol) {
  const int n = static_cast<int>(phases.size());
  Eigen::VectorXd y(n);
  for (int k = 0; k < n; ++k) {
    double f = phases[k] - std::floor(phases[k]);
    if (f >= 1.0 - kWrapGuard) f = 0.0;
    y[k] = f;
  }
  const double sum = y.sum();
  const long m = std::lround(sum);
  if (std::abs(sum - static_cast<double>(m)) > tol * std::max(1, n))
    throw NonIntegralSum("phase sum deviates from an integer: " + std::to_string(sum));
  std::sort(y.data(), y.data() + n, std::greater<double>());
  for (long k = 0; k < m; ++k) y[k] -= 1.0;
  std::sort(y.data(), y.data() + n, std::greater<double>());
  // re-center by a uniform shift, which keeps the ordering exact
  y.array() -= y.sum() / n;
  return AlcovePoint(y, std::max(tol, kPointTol));
}

}  // namespace alcove
