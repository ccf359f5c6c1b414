#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/LU>

#include "hkq/errors.hpp"
#include "hkq/levelset.hpp"
#include "hkq/rng.hpp"

namespace hkq {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CertificateReport rank_certificate(const std::string& name, const std::vector<SamplePoint>& samples,
                                   const LevelSetSpec& spec, int expected, bool killing) {
  CertificateReport rep;
  rep.name = name;
  rep.samples = samples.size();
  rep.expected = expected;
  std::vector<double> margins;
  std::set<int> observed;
  const double rel = spec.tolerances().rank_relative;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& u = samples[i].u;
    const RankInfo info = numerical_rank(killing ? killing_fields(u, spec)
                                                 : constraint_jacobian(u, spec),
                                         rel);
    observed.insert(info.rank);
    margins.push_back(info.sigma_max > 0 ? info.sigma_min_retained / info.sigma_max : 0.0);
    bool ok = info.rank == expected;
    if (!killing) ok = ok && (u.real_dim() - info.rank) == spec.level_set_dim();
    if (!ok) {
      std::ostringstream os;
      os << "rank " << info.rank << " (expected " << expected << "), first dropped sv "
         << info.sigma_first_dropped;
      rep.offenders.push_back({i, u, os.str()});
    }
  }
  rep.observed.assign(observed.begin(), observed.end());
  rep.min_margin = margins.empty() ? 0.0 : *std::min_element(margins.begin(), margins.end());
  rep.median_margin = median(margins);
  rep.passed = !samples.empty() && rep.offenders.empty();
  return rep;
}

}  // namespace

CertificateReport smoothness_certificate(const std::vector<SamplePoint>& samples,
                                         const LevelSetSpec& spec) {
  auto rep = rank_certificate("smoothness", samples, spec, spec.constraint_count(), false);
  rep.notes.push_back("nullity expected " + std::to_string(spec.level_set_dim()));
  return rep;
}

CertificateReport freeness_certificate(const std::vector<SamplePoint>& samples,
                                       const LevelSetSpec& spec, std::optional<int> expected_rank) {
  return rank_certificate("freeness", samples, spec, expected_rank.value_or(spec.group_dim()), true);
}

// ---------------------------------------------------------------------------

StrataClass classify_strata(const QuaternionVector& u, double threshold) {
  StrataClass c;
  c.u1_vanishes = u[0].norm() < threshold;
  for (int a = 1; a + 1 < 7 && a + 1 < u.size(); a += 2)
    if (std::sqrt(u[a].norm2() + u[a + 1].norm2()) < threshold) c.pair_vanishes = true;
  return c;
}

StrataCounts count_strata(const std::vector<SamplePoint>& samples, double threshold) {
  StrataCounts n;
  for (const auto& s : samples) {
    const StrataClass c = classify_strata(s.u, threshold);
    (c.u1_vanishes ? n.s0 : n.s1)++;
    (c.pair_vanishes ? n.s2 : n.s3)++;
    if (c.u1_vanishes && c.pair_vanishes) ++n.s0_and_s2;
  }
  return n;
}

// ---------------------------------------------------------------------------

std::vector<SupportPattern> all_support_patterns() {
  std::vector<SupportPattern> out;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c)
        for (int d = c + 1; d < 7; ++d) out.push_back({a, b, c, d});
  return out;
}

bool is_predicted_vertex(const SupportPattern& s) {
  // {u1} plus exactly one member of each pair (u2,u3), (u4,u5), (u6,u7)
  return s[0] == 0 && (s[1] == 1 || s[1] == 2) && (s[2] == 3 || s[2] == 4) &&
         (s[3] == 5 || s[3] == 6);
}

std::string to_string(const SupportPattern& s) {
  std::ostringstream os;
  os << '{' << s[0] + 1 << ',' << s[1] + 1 << ',' << s[2] + 1 << ',' << s[3] + 1 << '}';
  return os.str();
}

std::string to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible: return "feasible";
    case Feasibility::Infeasible: return "infeasible";
    case Feasibility::Inconclusive: return "inconclusive";
  }
  return "?";
}

QuaternionVector explicit_vertex_witness(const SupportPattern& s) {
  QuaternionVector u(7);
  for (int r = 0; r < 4; ++r) u[s[r]] = 0.5 * Quaternion::unit(r);
  return u;
}

VertexScanReport vertex_support_scan(const LevelSetSpec& spec, double tol, int starts,
                                     std::uint64_t seed) {
  const auto* p = std::get_if<WeightTriple>(&spec.weights());
  if (spec.family() != Family::Triple || !p || !(0 < (*p)[0] && (*p)[0] < (*p)[1] && (*p)[1] < (*p)[2]))
    throw Error(ErrorKind::InvalidArgument, "vertex scan needs a triple spec with 0 < p1 < p2 < p3");

  VertexScanReport rep;
  const auto patterns = all_support_patterns();
  for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
    const SupportPattern& s = patterns[pi];
    Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(28, 16);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) embed(4 * s[r] + c, 4 * r + c) = 1.0;

    PatternResult res;
    res.pattern = s;
    res.predicted = is_predicted_vertex(s);
    res.best_residual = std::numeric_limits<double>::infinity();
    std::set<int> det_signs;
    for (int k = 0; k < starts; ++k) {
      CounterRng rng(stream_seed(seed, 1000 * pi + static_cast<std::uint64_t>(k)));
      Eigen::VectorXd z(16);
      for (int i = 0; i < 16; ++i) z[i] = rng.normal();
      z /= z.norm();
      const SamplePoint pt = project_on_subspace(z, embed, spec, tol, spec.tolerances().max_iterations);
      if (pt.residual <= tol) {
        Eigen::Matrix4d b;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) b(r, c) = pt.u[s[r]][c];
        det_signs.insert(b.determinant() > 0 ? 1 : -1);
      }
      if (pt.residual < res.best_residual) {
        res.best_residual = pt.residual;
        res.witness = pt.u;
      }
    }
    if (res.best_residual <= tol)
      res.feasibility = Feasibility::Feasible;
    else if (res.best_residual > spec.tolerances().infeasible)
      res.feasibility = Feasibility::Infeasible;
    else
      res.feasibility = Feasibility::Inconclusive;
    if (res.feasibility != Feasibility::Feasible) res.witness.reset();
    res.frame_determinant_signs.assign(det_signs.begin(), det_signs.end());
    if (res.predicted)
      res.explicit_witness_residual = constraint_residual(explicit_vertex_witness(s), spec).norm();

    switch (res.feasibility) {
      case Feasibility::Feasible: ++rep.feasible; break;
      case Feasibility::Infeasible: ++rep.infeasible; break;
      case Feasibility::Inconclusive: ++rep.inconclusive; break;
    }
    if (res.feasibility == Feasibility::Feasible && !res.predicted)
      rep.unexpected_feasible.push_back(to_string(s));
    if (res.predicted && res.feasibility != Feasibility::Feasible)
      rep.missing_vertices.push_back(to_string(s));
    rep.patterns.push_back(std::move(res));
  }
  rep.matches_prediction = rep.unexpected_feasible.empty() && rep.missing_vertices.empty() &&
                           rep.feasible == 8 && rep.infeasible == 27;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Real 4x4 matrix of left multiplication by q.
Eigen::Matrix4d left_mult_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    const Quaternion col = q * Quaternion::unit(c);
    for (int r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

}  // namespace

QuaternionVector singular_stratum_point(std::uint64_t seed, const ImaginaryQuaternion& rho) {
  if (std::abs(rho.norm() - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "rho must be a unit imaginary quaternion");
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  // z = (x1, x2, x3); u_{2i} = x_i, u_{2i+1} = -rho x_i, u1 = 0
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(28, 12);
  const Eigen::Matrix4d minus_rho = left_mult_matrix(-1.0 * rho.as_quaternion());
  for (int i = 0; i < 3; ++i) {
    const int even = 1 + 2 * i, odd = 2 + 2 * i;
    embed.block<4, 4>(4 * even, 4 * i) = Eigen::Matrix4d::Identity();
    embed.block<4, 4>(4 * odd, 4 * i) = minus_rho;
  }
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CounterRng rng(stream_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::VectorXd z(12);
    for (int i = 0; i < 12; ++i) z[i] = rng.normal();
    z /= (embed * z).norm();
    const SamplePoint pt = project_on_subspace(z, embed, spec, 1e-13, 400);
    if (pt.residual <= 1e-12) return pt.u;
  }
  throw Error(ErrorKind::ConstructionFailed,
              "no singular-stratum point after " + std::to_string(kAttempts) + " attempts");
}

GroupElement singular_isotropy_element(double t, const ImaginaryQuaternion& rho) {
  return {std::cos(t) * Quaternion::one() + std::sin(t) * rho.as_quaternion(), {t}};
}

// ---------------------------------------------------------------------------

DimensionTable dimension_report(const LevelSetSpec& spec, const std::vector<SamplePoint>* samples) {
  DimensionTable d;
  d.ambient_sphere_dim = spec.ambient_sphere_dim();
  d.constraint_count = spec.constraint_count();
  d.level_set_dim = spec.level_set_dim();
  d.group_dim = spec.group_dim();
  d.quotient_dim = spec.quotient_dim();

  bool ok = d.level_set_dim == d.ambient_sphere_dim - (d.constraint_count - 1) &&
            d.quotient_dim == d.level_set_dim - d.group_dim;
  switch (spec.family()) {
    case Family::Triple:
      ok = ok && d.ambient_sphere_dim == 27 && d.level_set_dim == 15 && d.quotient_dim == 11;
      break;
    case Family::Quad:
      ok = ok && d.ambient_sphere_dim == 31 && d.level_set_dim == 19 && d.quotient_dim == 15;
      break;
    case Family::Theta:
      ok = ok && d.ambient_sphere_dim == 27 && d.level_set_dim == 12 && d.quotient_dim == 7;
      break;
    case Family::Stiefel:
      ok = ok && d.level_set_dim == 18;
      break;
  }
  if (samples && !samples->empty()) {
    std::set<int> nullities;
    for (const auto& s : *samples) nullities.insert(s.u.real_dim() - s.jacobian_rank);
    d.observed_nullity = *nullities.begin();
    ok = ok && nullities.size() == 1 && *d.observed_nullity == d.level_set_dim;
  }
  d.chain_holds = ok;
  return d;
}

}  // namespace hkq
