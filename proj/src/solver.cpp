#include "alcove/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace alcove {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kStepFloor = 1e-12;

/// Solver state: free handle matrices plus one point per conjugacy orbit.
/// Class membership is preserved because punctures only ever move by
/// conjugation, c_j -> E c_j E^dagger.
struct State {
  std::vector<Matrix> a, b, c;
};

Matrix project_su(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Matrix skew = 0.5 * (x - x.adjoint());
  const std::complex<double> shift = skew.trace() / static_cast<double>(n);
  for (int k = 0; k < n; ++k) skew(k, k) -= shift;
  return skew;
}

/// Unitary exp(scale * s) of a skew-Hermitian direction, with the spectral
/// data cached so line-search trials at different scales are cheap.
class ExpDirection {
 public:
  explicit ExpDirection(const Matrix& s)
      : es_(Matrix(std::complex<double>(0, -1) * s)) {}

  Matrix at(double scale) const {
    const auto& w = es_.eigenvalues();
    const int n = static_cast<int>(w.size());
    Matrix d = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) d(k, k) = std::polar(1.0, scale * w[k]);
    return es_.eigenvectors() * d * es_.eigenvectors().adjoint();
  }

 private:
  Eigen::SelfAdjointEigenSolver<Matrix> es_;
};

Matrix exp_skew(const Matrix& s, double scale) { return ExpDirection(s).at(scale); }

struct Objective {
  const SurfaceGroupData* data = nullptr;
  Matrix target;
  bool with_penalty = false;

  int genus() const { return data->genus; }
  int punctures() const { return data->puncture_count(); }

  double moment_term(const State& s) const {
    return (moment_product_state(s) - target).squaredNorm();
  }

  Matrix moment_product_state(const State& s) const {
    const int n = data->n;
    Matrix m = Matrix::Identity(n, n);
    for (int i = 0; i < genus(); ++i) m *= commutator(s.a[i], s.b[i]);
    for (const auto& cj : s.c) m *= cj;
    return m;
  }

  double penalty_term(const State& s) const {
    if (!with_penalty) return 0.0;
    const std::vector<Matrix> image = beta_components(s.c);
    double sum = 0.0;
    for (std::size_t j = 0; j < s.c.size(); ++j)
      sum += (image[j] - s.c[j]).squaredNorm();
    return sum;
  }

  double value(const State& s) const { return moment_term(s) + penalty_term(s); }

  /// Analytic gradient with respect to skew-Hermitian perturbations:
  /// a_i <- exp(eps H) a_i, b_i likewise, c_j <- exp(eps H) c_j exp(-eps H).
  /// Returns the objective value; gradients are traceless skew-Hermitian.
  double gradient(const State& s, std::vector<Matrix>* grad_a,
                  std::vector<Matrix>* grad_b, std::vector<Matrix>* grad_c) const {
    const int n = data->n;
    const int g = genus();
    const int l = punctures();
    const Matrix zero = Matrix::Zero(n, n);
    std::vector<Matrix> acc_a(g, zero), acc_b(g, zero), acc_c(l, zero);

    // ---- moment term: factors a_i, b_i, a_i^dag, b_i^dag, then c_1..c_l.
    const int factors = 4 * g + l;
    std::vector<const Matrix*> fac(factors);
    std::vector<Matrix> inv_store(2 * g);
    for (int i = 0; i < g; ++i) {
      inv_store[2 * i] = s.a[i].adjoint();
      inv_store[2 * i + 1] = s.b[i].adjoint();
      fac[4 * i] = &s.a[i];
      fac[4 * i + 1] = &s.b[i];
      fac[4 * i + 2] = &inv_store[2 * i];
      fac[4 * i + 3] = &inv_store[2 * i + 1];
    }
    for (int j = 0; j < l; ++j) fac[4 * g + j] = &s.c[j];

    std::vector<Matrix> prefix(factors + 1), suffix(factors + 1);
    prefix[0] = Matrix::Identity(n, n);
    for (int p = 0; p < factors; ++p) prefix[p + 1] = prefix[p] * (*fac[p]);
    suffix[factors] = Matrix::Identity(n, n);
    for (int p = factors - 1; p >= 0; --p) suffix[p] = (*fac[p]) * suffix[p + 1];

    const Matrix t_adj = target.adjoint();
    // adjoint of factor p: d tr(t^dag mu) = sum_p tr(N_p dF_p)
    auto adjoint_of = [&](int p) -> Matrix {
      return suffix[p + 1] * t_adj * prefix[p];
    };
    for (int i = 0; i < g; ++i) {
      acc_a[i] += s.a[i] * adjoint_of(4 * i);
      acc_b[i] += s.b[i] * adjoint_of(4 * i + 1);
      acc_a[i] -= adjoint_of(4 * i + 2) * inv_store[2 * i];
      acc_b[i] -= adjoint_of(4 * i + 3) * inv_store[2 * i + 1];
    }
    for (int j = 0; j < l; ++j) {
      const Matrix np = adjoint_of(4 * g + j);
      acc_c[j] += s.c[j] * np - np * s.c[j];
    }

    // ---- beta penalty: for each j the trace of
    //   c_l^T ... c_{j+1}^T conj(c_j) conj(c_{j+1}) ... conj(c_l) c_j
    if (with_penalty) {
      enum class Tf { Id, Trans, Conj };
      for (int j = 0; j < l; ++j) {
        std::vector<std::pair<int, Tf>> list;
        for (int mm = l - 1; mm > j; --mm) list.emplace_back(mm, Tf::Trans);
        list.emplace_back(j, Tf::Conj);
        for (int mm = j + 1; mm < l; ++mm) list.emplace_back(mm, Tf::Conj);
        list.emplace_back(j, Tf::Id);

        const int fl = static_cast<int>(list.size());
        std::vector<Matrix> fmat(fl);
        for (int p = 0; p < fl; ++p) {
          const Matrix& cm = s.c[list[p].first];
          switch (list[p].second) {
            case Tf::Id: fmat[p] = cm; break;
            case Tf::Trans: fmat[p] = cm.transpose(); break;
            case Tf::Conj: fmat[p] = cm.conjugate(); break;
          }
        }
        std::vector<Matrix> pre(fl + 1), suf(fl + 1);
        pre[0] = Matrix::Identity(n, n);
        for (int p = 0; p < fl; ++p) pre[p + 1] = pre[p] * fmat[p];
        suf[fl] = Matrix::Identity(n, n);
        for (int p = fl - 1; p >= 0; --p) suf[p] = fmat[p] * suf[p + 1];

        for (int p = 0; p < fl; ++p) {
          const Matrix np = suf[p + 1] * pre[p];
          const Matrix& cm = s.c[list[p].first];
          Matrix contrib;
          switch (list[p].second) {
            case Tf::Id:
              contrib = cm * np - np * cm;
              break;
            case Tf::Trans:
              contrib = cm * np.transpose() - np.transpose() * cm;
              break;
            case Tf::Conj:
              contrib = cm * np.conjugate() - np.conjugate() * cm;
              break;
          }
          acc_c[list[p].first] += contrib;
        }
      }
    }

    for (int i = 0; i < g; ++i) {
      (*grad_a)[i] = project_su(-2.0 * acc_a[i].adjoint());
      (*grad_b)[i] = project_su(-2.0 * acc_b[i].adjoint());
    }
    for (int j = 0; j < l; ++j) (*grad_c)[j] = project_su(-2.0 * acc_c[j].adjoint());
    return value(s);
  }
};

State initial_state(const SurfaceGroupData& data, int restart, std::uint64_t seed) {
  State s;
  const int g = data.genus;
  s.a.resize(g);
  s.b.resize(g);
  s.c.reserve(data.classes.size());
  RandomStream rng(seed, static_cast<std::uint64_t>(restart));
  // Identity handles sit at a saddle of the commutator factors, so the
  // handles are always randomized; restart 0 starts the punctures at the
  // diagonal representatives (an exactly beta-fixed point).
  for (int i = 0; i < g; ++i) {
    s.a[i] = haar_special_unitary(data.n, rng);
    s.b[i] = haar_special_unitary(data.n, rng);
  }
  if (restart == 0) {
    for (const auto& spec : data.classes) s.c.push_back(class_representative(spec));
  } else {
    for (const auto& spec : data.classes) s.c.push_back(sample_class(spec, rng));
  }
  return s;
}

void apply_step(const State& from, State* to, const std::vector<Matrix>& dir_a,
                const std::vector<Matrix>& dir_b, const std::vector<Matrix>& dir_c,
                double step) {
  for (std::size_t i = 0; i < from.a.size(); ++i) {
    to->a[i] = exp_skew(dir_a[i], step) * from.a[i];
    to->b[i] = exp_skew(dir_b[i], step) * from.b[i];
  }
  for (std::size_t j = 0; j < from.c.size(); ++j) {
    const Matrix e = exp_skew(dir_c[j], step);
    to->c[j] = e * from.c[j] * e.adjoint();
  }
}

struct DescentResult {
  State state;
  double f1 = 0.0;
  double f2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

DescentResult descend(const Objective& obj, State state, const SolveOptions& opts) {
  const int g = obj.genus();
  const int l = obj.punctures();
  std::vector<Matrix> ga(g), gb(g), gc(l);
  State trial = state;
  double step = opts.step_init;
  const double tol_sq = opts.residual_tol * opts.residual_tol;

  DescentResult out;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    const double f = obj.gradient(state, &ga, &gb, &gc);
    const double f1 = obj.moment_term(state);
    const double f2 = f - f1;
    if (f1 < tol_sq && (!obj.with_penalty || f2 < tol_sq)) {
      out.converged = true;
      break;
    }
    double gnorm_sq = 0.0;
    for (const auto& m : ga) gnorm_sq += m.squaredNorm();
    for (const auto& m : gb) gnorm_sq += m.squaredNorm();
    for (const auto& m : gc) gnorm_sq += m.squaredNorm();
    if (std::sqrt(gnorm_sq) < opts.grad_tol) break;

    std::vector<ExpDirection> ea, eb, ec;
    ea.reserve(g);
    eb.reserve(g);
    ec.reserve(l);
    for (int i = 0; i < g; ++i) {
      ea.emplace_back(Matrix(-ga[i]));
      eb.emplace_back(Matrix(-gb[i]));
    }
    for (int j = 0; j < l; ++j) ec.emplace_back(Matrix(-gc[j]));

    double eta = std::min(2.0 * step, 1e3 * opts.step_init);
    bool accepted = false;
    while (eta >= kStepFloor) {
      for (int i = 0; i < g; ++i) {
        trial.a[i] = ea[i].at(eta) * state.a[i];
        trial.b[i] = eb[i].at(eta) * state.b[i];
      }
      for (int j = 0; j < l; ++j) {
        const Matrix e = ec[j].at(eta);
        trial.c[j] = e * state.c[j] * e.adjoint();
      }
      if (obj.value(trial) <= f - kArmijo * eta * gnorm_sq) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    std::swap(state, trial);
    step = eta;
  }
  out.state = std::move(state);
  out.f1 = obj.moment_term(out.state);
  out.f2 = obj.penalty_term(out.state);
  out.iterations = iter;
  if (!out.converged)
    out.converged = out.f1 < tol_sq && (!obj.with_penalty || out.f2 < tol_sq);
  return out;
}

FeasibilityReport run_solver(const SurfaceGroupData& data, const AlcovePoint& target,
                             const SolveOptions& opts, bool with_penalty) {
  if (target.dim() != data.n) throw Error("target dimension does not match n");
  if (with_penalty && data.genus != 0)
    throw GenusUnsupported("symmetric fiber search requires genus 0");
  if (opts.max_iters <= 0 || opts.restarts <= 0 || opts.step_init <= 0 ||
      opts.grad_tol <= 0 || opts.residual_tol <= 0 || opts.residual_tol >= 1)
    throw Error("solver options must be positive with residual_tol < 1");

  Objective obj;
  obj.data = &data;
  obj.target = class_representative({target, data.n});
  obj.with_penalty = with_penalty;

  FeasibilityReport report;
  bool have_best = false;
  double best_value = 0.0;
  DescentResult best;

  int restarts_used = 0;
  for (int r = 0; r < opts.restarts; ++r) {
    ++restarts_used;
    DescentResult res = descend(obj, initial_state(data, r, opts.seed), opts);
    const double value = res.f1 + res.f2;
    if (!have_best || value < best_value) {
      have_best = true;
      best_value = value;
      best = std::move(res);
    }
    if (best.converged) break;
  }

  report.restarts_used = restarts_used;
  report.iterations = best.iterations;
  report.residual = std::sqrt(best.f1);
  report.beta_residual = with_penalty ? beta_residual(best.state.c) : 0.0;
  if (best.converged) {
    report.status = SolveStatus::Converged;
    std::vector<Matrix> handles;
    handles.reserve(2 * data.genus);
    for (int i = 0; i < data.genus; ++i) {
      handles.push_back(best.state.a[i]);
      handles.push_back(best.state.b[i]);
    }
    report.witness.emplace(data, std::move(handles), std::move(best.state.c),
                           std::max(1e-6, kClassMemberTol));
  } else {
    report.status = SolveStatus::NonConvergent;
  }
  return report;
}

}  // namespace

FeasibilityReport solve_fiber(const SurfaceGroupData& data, const AlcovePoint& target,
                              const SolveOptions& opts) {
  return run_solver(data, target, opts, /*with_penalty=*/false);
}

FeasibilityReport solve_fiber_symmetric(const SurfaceGroupData& data,
                                        const AlcovePoint& target,
                                        const SolveOptions& opts) {
  return run_solver(data, target, opts, /*with_penalty=*/true);
}

double gradient_check(const SurfaceGroupData& data, const AlcovePoint& target,
                      const Configuration& cfg, double eps, bool symmetric) {
  if (!(eps > 1e-8 && eps < 1e-3)) throw Error("gradient_check needs eps in (1e-8, 1e-3)");
  if (symmetric && data.genus != 0)
    throw GenusUnsupported("symmetric objective requires genus 0");
  const int g = data.genus;
  const int l = data.puncture_count();

  Objective obj;
  obj.data = &data;
  obj.target = class_representative({target, data.n});
  obj.with_penalty = symmetric;

  State s;
  for (int i = 0; i < g; ++i) {
    s.a.push_back(cfg.handles()[2 * i]);
    s.b.push_back(cfg.handles()[2 * i + 1]);
  }
  s.c = cfg.punctures();

  std::vector<Matrix> ga(g), gb(g), gc(l);
  obj.gradient(s, &ga, &gb, &gc);

  RandomStream rng(0xA1C0u);
  auto random_su_direction = [&](int n) {
    Matrix h(n, n);
    for (int r = 0; r < n; ++r) {
      h(r, r) = std::complex<double>(0.0, rng.normal());
      for (int c = r + 1; c < n; ++c) {
        const std::complex<double> z = rng.complex_normal();
        h(r, c) = z;
        h(c, r) = -std::conj(z);
      }
    }
    Matrix d = project_su(h);
    return Matrix(d / d.norm());
  };

  double worst = 0.0;
  State plus = s, minus = s;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Matrix> ha(g), hb(g), hc(l);
    double analytic = 0.0;
    for (int i = 0; i < g; ++i) {
      ha[i] = random_su_direction(data.n);
      hb[i] = random_su_direction(data.n);
      analytic += (ga[i].adjoint() * ha[i]).trace().real();
      analytic += (gb[i].adjoint() * hb[i]).trace().real();
    }
    for (int j = 0; j < l; ++j) {
      hc[j] = random_su_direction(data.n);
      analytic += (gc[j].adjoint() * hc[j]).trace().real();
    }
    apply_step(s, &plus, ha, hb, hc, eps);
    apply_step(s, &minus, ha, hb, hc, -eps);
    const double numeric = (obj.value(plus) - obj.value(minus)) / (2.0 * eps);
    const double err = std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic));
    worst = std::max(worst, err);
  }
  return worst;
}

std::vector<Matrix> transfer_from_symmetric(const std::vector<Matrix>& a) {
  if (a.empty()) return {};
  const int n = static_cast<int>(a.front().rows());
  const int l = static_cast<int>(a.size());
  std::vector<Matrix> u(l);
  Matrix suffix = Matrix::Identity(n, n);  // A_{j+1} ... A_l
  for (int j = l - 1; j >= 0; --j) {
    u[j] = suffix.transpose() * (a[j].transpose() * a[j]) * suffix.conjugate();
    suffix = a[j] * suffix;
  }
  return u;
}

std::vector<Matrix> transfer_to_symmetric(const std::vector<Matrix>& w, double tol) {
  if (w.empty()) return {};
  const int n = static_cast<int>(w.front().rows());
  const int l = static_cast<int>(w.size());

  Matrix product = Matrix::Identity(n, n);
  for (const auto& wj : w) product *= wj;
  if ((product - Matrix::Identity(n, n)).norm() > tol)
    throw NotInFiber("chain product deviates from the identity");

  std::vector<Matrix> a(l);
  if (l == 1) {
    a[0] = Matrix::Identity(n, n);
    return a;
  }
  if ((w[l - 1] - w[l - 1].transpose()).norm() > tol)
    throw NotBetaFixed("last chain entry is not symmetric");
  a[l - 1] = sqrt_symmetric(0.5 * (w[l - 1] + w[l - 1].transpose()));

  Matrix partial = a[l - 1];  // A_{j+1} ... A_l
  for (int j = l - 2; j >= 1; --j) {
    const Matrix conjugated = partial.conjugate() * w[j] * partial.transpose();
    if ((conjugated - conjugated.transpose()).norm() > tol)
      throw NotBetaFixed("conjugated chain entry is not symmetric; the input is "
                         "not a fixed point of the involution");
    a[j] = sqrt_symmetric(0.5 * (conjugated + conjugated.transpose()));
    partial = a[j] * partial;
  }
  a[0] = partial.adjoint();
  return a;
}

}  // namespace alcove
