#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <Eigen/Cholesky>

#include "hkq/errors.hpp"
#include "hkq/levelset.hpp"
#include "hkq/rng.hpp"

namespace hkq {

namespace {

struct SolveResult {
  Eigen::VectorXd z;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Minimum-norm Levenberg-Marquardt: dz = -J^T (J J^T + mu I)^{-1} r. The
// systems here are underdetermined (13-16 equations, up to 32 unknowns).
SolveResult damped_gauss_newton(Eigen::VectorXd z,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& jac,
                                double tol, int max_iter) {
  SolveResult out;
  Eigen::VectorXd r = f(z);
  double rn = r.norm();
  out.history.push_back(rn);
  double damping = 1e-6;
  int it = 0;
  while (rn > tol && it < max_iter) {
    ++it;
    const Eigen::MatrixXd j = jac(z);
    Eigen::MatrixXd a = j * j.transpose();
    const double scale = std::max(a.trace() / static_cast<double>(a.rows()), 1e-300);
    a.diagonal().array() += damping * scale;
    const Eigen::VectorXd y = a.ldlt().solve(r);
    const Eigen::VectorXd trial = z - j.transpose() * y;
    const Eigen::VectorXd r_trial = f(trial);
    const double rn_trial = r_trial.norm();
    if (std::isfinite(rn_trial) && rn_trial < rn) {
      z = trial;
      r = r_trial;
      rn = rn_trial;
      damping = std::max(damping * 0.1, 1e-14);
    } else {
      damping *= 10.0;
      if (damping > 1e12) {
        out.history.push_back(rn);
        break;
      }
    }
    out.history.push_back(rn);
  }
  out.z = std::move(z);
  out.residual = rn;
  out.iterations = it;
  out.converged = rn <= tol;
  return out;
}

}  // namespace

void annotate(SamplePoint& pt, const LevelSetSpec& spec) {
  const double rel = spec.tolerances().rank_relative;
  const RankInfo j = numerical_rank(constraint_jacobian(pt.u, spec), rel);
  const RankInfo k = numerical_rank(killing_fields(pt.u, spec), rel);
  pt.jacobian_rank = j.rank;
  pt.killing_rank = k.rank;
  pt.min_sv_constraints = j.singular_values.size() ? j.singular_values.minCoeff() : 0.0;
  pt.min_sv_killing = k.singular_values.size() ? k.singular_values.minCoeff() : 0.0;
}

SamplePoint project_to_level_set(const QuaternionVector& u0, const LevelSetSpec& spec, double tol,
                                 int max_iter) {
  if (u0.size() != spec.ambient_quaternionic_dim())
    throw Error(ErrorKind::DimensionMismatch, "start point does not match the level-set spec");
  if (u0.norm() <= 1e-8) throw Error(ErrorKind::DegenerateStart, "start point norm <= 1e-8");
  auto f = [&spec](const Eigen::VectorXd& x) {
    return constraint_residual(QuaternionVector::from_real(x), spec);
  };
  auto jac = [&spec](const Eigen::VectorXd& x) {
    return constraint_jacobian(QuaternionVector::from_real(x), spec);
  };
  SolveResult res = damped_gauss_newton(u0.to_real(), f, jac, tol, max_iter);
  if (!res.converged) {
    std::ostringstream os;
    os << "residual " << res.residual << " after " << res.iterations << " iterations";
    throw DivergedError(os.str(), std::move(res.history));
  }
  SamplePoint pt;
  pt.u = res.iterations == 0 ? u0 : QuaternionVector::from_real(res.z);
  pt.residual = res.residual;
  pt.iterations = res.iterations;
  annotate(pt, spec);
  return pt;
}

SamplePoint project_to_level_set(const QuaternionVector& u0, const LevelSetSpec& spec) {
  return project_to_level_set(u0, spec, spec.tolerances().convergence,
                              spec.tolerances().max_iterations);
}

SamplePoint project_on_subspace(const Eigen::VectorXd& z0, const Eigen::MatrixXd& embed,
                                const LevelSetSpec& spec, double tol, int max_iter) {
  if (embed.rows() != spec.ambient_real_dim() || embed.cols() != z0.size())
    throw Error(ErrorKind::DimensionMismatch, "embedding does not match the level-set spec");
  auto f = [&](const Eigen::VectorXd& z) {
    return constraint_residual(QuaternionVector::from_real(embed * z), spec);
  };
  auto jac = [&](const Eigen::VectorXd& z) {
    return Eigen::MatrixXd(constraint_jacobian(QuaternionVector::from_real(embed * z), spec) * embed);
  };
  const SolveResult res = damped_gauss_newton(z0, f, jac, tol, max_iter);
  SamplePoint pt;
  pt.u = QuaternionVector::from_real(embed * res.z);
  pt.residual = res.residual;
  pt.iterations = res.iterations;
  return pt;
}

QuaternionVector random_start(const LevelSetSpec& spec, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(stream_seed(seed, index));
  Eigen::VectorXd x(spec.ambient_real_dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  x /= x.norm();
  return QuaternionVector::from_real(x);
}

SampleSet sample_level_set(const LevelSetSpec& spec, int count, std::uint64_t seed, int threads) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be >= 1");
  if (threads <= 0) threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);

  std::vector<std::optional<SamplePoint>> slots(count);
  auto work = [&](int first) {
    for (int i = first; i < count; i += threads) {
      const auto idx = static_cast<std::uint64_t>(i);
      try {
        SamplePoint pt = project_to_level_set(random_start(spec, seed, idx), spec);
        pt.seed = stream_seed(seed, idx);
        slots[i] = std::move(pt);
      } catch (const Error&) {
        // diverged starts are dropped; the convergence fraction reports them
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  SampleSet set;
  set.attempted = count;
  for (auto& s : slots)
    if (s) set.points.push_back(std::move(*s));
  if (set.points.empty())
    throw Error(ErrorKind::AllDiverged, "no start converged for " + to_string(spec.family()) +
                                            " weights " + spec.weights_string());
  return set;
}

}  // namespace hkq
