#include "alcove/io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace alcove {

json to_json(const AlcovePoint& x) {
  json arr = json::array();
  for (int k = 0; k < x.dim(); ++k) arr.push_back(x[k]);
  return arr;
}

AlcovePoint alcove_point_from_json(const json& j, double tol) {
  if (!j.is_array() || j.size() < 2) throw Error("alcove point must be an array of reals");
  Eigen::VectorXd coords(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) coords[static_cast<int>(k)] = j[k].get<double>();
  return AlcovePoint(coords, tol);
}

json to_json(const CellSignature& sig) {
  json z0 = json::array(), z1 = json::array();
  for (const auto& a : sig.zero) z0.push_back({a.i, a.j});
  for (const auto& a : sig.one) z1.push_back({a.i, a.j});
  return json{{"Z0", z0}, {"Z1", z1}};
}

CellSignature signature_from_json(const json& j) {
  CellSignature sig;
  for (const auto& p : j.at("Z0")) sig.zero.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  for (const auto& p : j.at("Z1")) sig.one.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return sig;
}

json to_json(const Matrix& m) {
  json arr = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      arr.push_back({m(r, c).real(), m(r, c).imag()});
  return arr;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error("matrix must be an array of [re, im] pairs");
  const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (n * n != static_cast<int>(j.size()))
    throw Error("matrix entry count is not a perfect square");
  Matrix m(n, n);
  int idx = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c, ++idx)
      m(r, c) = std::complex<double>(j[idx].at(0).get<double>(), j[idx].at(1).get<double>());
  return m;
}

json to_json(const SurfaceGroupData& data) {
  json classes = json::array();
  for (const auto& spec : data.classes) classes.push_back(to_json(spec.lambda));
  return json{{"n", data.n}, {"genus", data.genus}, {"classes", classes}};
}

SurfaceGroupData surface_data_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int genus = j.value("genus", 0);
  std::vector<ConjClassSpec> classes;
  for (const auto& c : j.at("classes"))
    classes.push_back({alcove_point_from_json(c, kClassifyTol), n});
  return SurfaceGroupData(n, genus, std::move(classes));
}

json to_json(const Configuration& cfg) {
  json handles = json::array(), punctures = json::array();
  for (const auto& h : cfg.handles()) handles.push_back(to_json(h));
  for (const auto& p : cfg.punctures()) punctures.push_back(to_json(p));
  json out = to_json(cfg.data());
  out["handles"] = handles;
  out["punctures"] = punctures;
  return out;
}

Configuration configuration_from_json(const json& j, double tol) {
  SurfaceGroupData data = surface_data_from_json(j);
  std::vector<Matrix> handles, punctures;
  if (j.contains("handles"))
    for (const auto& h : j.at("handles")) handles.push_back(matrix_from_json(h));
  for (const auto& p : j.at("punctures")) punctures.push_back(matrix_from_json(p));
  return Configuration(std::move(data), std::move(handles), std::move(punctures), tol);
}

json to_json(const FeasibilityReport& report, const SolveOptions& opts,
             bool include_witness) {
  json out{{"status", report.status == SolveStatus::Converged ? "Converged" : "NonConvergent"},
           {"residual", report.residual},
           {"beta_residual", report.beta_residual},
           {"iterations", report.iterations},
           {"restarts_used", report.restarts_used},
           {"residual_tol", opts.residual_tol},
           {"grad_tol", opts.grad_tol},
           {"max_iters", opts.max_iters},
           {"restarts", opts.restarts},
           {"seed", opts.seed}};
  if (include_witness && report.witness) out["witness"] = to_json(*report.witness);
  return out;
}

json to_json(const IntervalResult& r) {
  return json{{"lo", r.lo}, {"hi", r.hi}, {"samples", r.samples}};
}

json to_json(const ConvexityReport& r) {
  return json{{"pairs", r.pairs},
              {"feasible", r.feasible},
              {"fraction", r.fraction},
              {"residual_tol", r.residual_tol}};
}

json to_json(const RealEqualityReport& r) {
  return json{{"hausdorff_real_to_full", r.hausdorff_real_to_full},
              {"hausdorff_full_to_real", r.hausdorff_full_to_real},
              {"grid_total", r.grid_total},
              {"grid_converged", r.grid_converged},
              {"residual_tol", r.residual_tol}};
}

json to_json(const DominantCellReport& r, int n, double tol) {
  json out = to_json(r.cell);
  out["fraction"] = r.fraction;
  out["orbit_dim"] = r.max_orbit_dim;
  out["stabilizer_dim"] = stabilizer_dim(r.cell, n);
  out["tol"] = tol;
  return out;
}

std::string root_set_to_string(const std::vector<RootIndex>& roots) {
  std::string out;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(roots[k].i) + "-" + std::to_string(roots[k].j);
  }
  return out;
}

void write_cloud_csv(std::ostream& os, const AlcoveCloud& cloud, double classify_tol) {
  const int n = cloud.data.n;
  for (int k = 1; k <= n; ++k) os << "x" << k << ",";
  os << "cell_Z0,cell_Z1\n";
  os << std::setprecision(17);
  for (const auto& p : cloud.points) {
    const CellSignature sig = classify(AlcovePoint(p), classify_tol);
    for (int k = 0; k < n; ++k) os << p[k] << ",";
    os << root_set_to_string(sig.zero) << "," << root_set_to_string(sig.one) << "\n";
  }
}

}  // namespace alcove
