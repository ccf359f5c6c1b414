#include "hkq/verify.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hkq/convention_io.hpp"
#include "hkq/errors.hpp"
#include "hkq/rng.hpp"

#ifndef HKQ_VERSION
#define HKQ_VERSION "0.0.0"
#endif

namespace hkq {

std::string_view library_version() { return HKQ_VERSION; }

bool VerificationReport::passed() const {
  for (const auto& c : certificates)
    if (!c.passed) return false;
  for (const auto& w : witnesses)
    if (!w.verified) return false;
  if (vertices && !vertices->matches_prediction) return false;
  if (singular_stratum && !singular_stratum->verified) return false;
  if (coassociativity && !coassociativity->level_set.pointwise_passed) return false;
  return dimensions.chain_holds;
}

namespace {

constexpr double kFixTolerance = 1e-10;

Eigen::Matrix4d left_mult_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) {
    const Quaternion col = q * Quaternion::unit(c);
    for (int r = 0; r < 4; ++r) m(r, c) = col[r];
  }
  return m;
}

double displacement(const QuaternionVector& u, const GroupElement& g, const LevelSetSpec& spec) {
  return (action_apply(u, g, spec) - u).norm();
}

// Projects seeded starts on the subspace u = embed z until one converges.
std::optional<SamplePoint> solve_on_subspace(const Eigen::MatrixXd& embed, const LevelSetSpec& spec,
                                             std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    CounterRng rng(stream_seed(seed, attempt));
    Eigen::VectorXd z(embed.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    z /= (embed * z).norm();
    SamplePoint pt = project_on_subspace(z, embed, spec, 1e-13, 400);
    if (pt.residual <= 1e-12) return pt;
  }
  return std::nullopt;
}

IsotropyWitness make_witness(std::string condition, std::string construction, GroupElement g,
                             const Eigen::MatrixXd& embed, const LevelSetSpec& spec,
                             std::uint64_t seed) {
  IsotropyWitness w;
  w.condition = std::move(condition);
  w.construction = std::move(construction);
  w.element = std::move(g);
  if (auto pt = solve_on_subspace(embed, spec, seed)) {
    w.point = pt->u;
    w.residual = pt->residual;
    w.displacement = displacement(pt->u, w.element, spec);
    w.verified = w.displacement < kFixTolerance;
  } else {
    w.point = QuaternionVector(7);
    w.construction += " (no point of the level set found)";
  }
  return w;
}

void run_sampling(VerificationReport& rep, const LevelSetSpec& spec, const SamplingOptions& opts,
                  std::vector<SamplePoint>& points) {
  try {
    SampleSet set = sample_level_set(spec, opts.count, opts.seed, opts.threads);
    rep.converged_fraction = set.converged_fraction();
    points = std::move(set.points);
  } catch (const Error& e) {
    rep.converged_fraction = 0.0;
    rep.notes.push_back(std::string("sampling failed: ") + e.what());
    CertificateReport failed;
    failed.name = "sampling";
    failed.notes.push_back(e.what());
    rep.certificates.push_back(failed);
    return;
  }
  rep.certificates.push_back(smoothness_certificate(points, spec));
  rep.certificates.push_back(freeness_certificate(points, spec));
  rep.dimensions = dimension_report(spec, &points);
}

VerificationReport base_report(const LevelSetSpec& spec, const SamplingOptions& opts) {
  VerificationReport rep;
  rep.family = spec.family();
  rep.datum = spec.weights_string();
  rep.seed = opts.seed;
  rep.tolerances = opts.tolerances;
  rep.dimensions = dimension_report(spec);
  return rep;
}

}  // namespace

std::vector<IsotropyWitness> isotropy_witnesses(const WeightTriple& p, std::uint64_t seed) {
  std::vector<IsotropyWitness> out;
  const auto spec = LevelSetSpec::triple(p);
  const double two_pi = 2.0 * std::numbers::pi;

  // a vanishing pair leaves the other two blocks; a common divisor of their
  // weights is a rotation angle acting trivially on them
  static constexpr int pair_of[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int k = 0; k < 3; ++k) {
    const int i = pair_of[k][0], j = pair_of[k][1];
    const Int g = gcd(p[i], p[j]);
    if (g == 1) continue;
    const int zero_pair = 3 - i - j;
    const double t = g == 0 ? 1.0 : two_pi / static_cast<double>(g);
    Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(28, 20);
    int col = 0;
    for (int a = 0; a < 7; ++a) {
      if (a == 1 + 2 * zero_pair || a == 2 + 2 * zero_pair) continue;
      for (int c = 0; c < 4; ++c) embed(4 * a + c, col++) = 1.0;
    }
    const std::string cond = "gcd(p" + std::to_string(i + 1) + ",p" + std::to_string(j + 1) +
                             ") = " + std::to_string(g);
    const std::string how = "pair (u" + std::to_string(2 * zero_pair + 2) + ",u" +
                            std::to_string(2 * zero_pair + 3) + ") = 0, element (1, t = 2pi/" +
                            std::to_string(g) + ")";
    out.push_back(make_witness(cond, how, GroupElement{Quaternion::one(), {t}}, embed, spec,
                               stream_seed(seed, 10 + static_cast<std::uint64_t>(k))));
  }

  // u1 = 0 with every pair aligned: u_{2i+1} = -s_i rho u_{2i}, on which A(p_i t)
  // acts as left multiplication by exp(-s_i p_i t rho)
  const ImaginaryQuaternion rho{1.0, 0.0, 0.0};
  int variant = 0;
  for (int s2 : {1, -1}) {
    for (int s3 : {1, -1}) {
      ++variant;
      const Int a = checked_sub(p[0], checked_mul(s2, p[1]));
      const Int b = checked_sub(p[0], checked_mul(s3, p[2]));
      const Int g = gcd(a, b);
      if (g == 1) continue;
      const double t = g == 0 ? 1.0 : two_pi / static_cast<double>(g);
      const double angle = static_cast<double>(p[0]) * t;
      const GroupElement elem{std::cos(angle) * Quaternion::one() + std::sin(angle) * rho.as_quaternion(),
                              {t}};
      const int signs[3] = {1, s2, s3};
      Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(28, 12);
      for (int i = 0; i < 3; ++i) {
        embed.block<4, 4>(4 * (1 + 2 * i), 4 * i) = Eigen::Matrix4d::Identity();
        embed.block<4, 4>(4 * (2 + 2 * i), 4 * i) =
            left_mult_matrix(static_cast<double>(-signs[i]) * rho.as_quaternion());
      }
      const std::string cond = std::string("gcd(p1") + (s2 > 0 ? "-" : "+") + "p2, p1" +
                               (s3 > 0 ? "-" : "+") + "p3) = " + std::to_string(g);
      const std::string how =
          "u1 = 0, u_{2i+1} = -s_i i u_{2i} with s = (1," + std::to_string(s2) + "," +
          std::to_string(s3) + "), element (exp(p1 t i), t = " +
          (g == 0 ? std::string("1 (continuous)") : "2pi/" + std::to_string(g)) + ")";
      out.push_back(make_witness(cond, how, elem, embed, spec,
                                 stream_seed(seed, 20 + static_cast<std::uint64_t>(variant))));
    }
  }
  return out;
}

VerificationReport verify_triple(const WeightTriple& p, const SamplingOptions& opts) {
  const auto spec = LevelSetSpec::triple(p, opts.tolerances);
  VerificationReport rep = base_report(spec, opts);
  const Verdict adm = admissibility(p);
  rep.verdicts.emplace_back("admissible", adm);
  const bool singular_case = p == WeightTriple{{1, 1, 1}};

  std::vector<SamplePoint> points;
  if (adm || singular_case || opts.force_sampling) {
    run_sampling(rep, spec, opts, points);
    rep.strata = count_strata(points);
  }
  if (adm) {
    rep.labels.push_back("free");
    if (opts.vertex_scan)
      rep.vertices = vertex_support_scan(spec, spec.tolerances().convergence, opts.vertex_starts,
                                         opts.seed);
  }
  if (!adm && p[0] > 0 && p[1] > 0 && p[2] > 0) rep.witnesses = isotropy_witnesses(p, opts.seed);

  if (singular_case) {
    rep.labels.push_back("quasi-free / orbifold");
    SingularStratumSection sec;
    try {
      sec.point = singular_stratum_point(opts.seed);
      sec.residual = constraint_residual(sec.point, spec).norm();
      sec.test_angles = {0.3, 1.0, 2.5};
      bool fixed = true;
      for (double t : sec.test_angles) {
        const double d = displacement(sec.point, singular_isotropy_element(t), spec);
        sec.displacements.push_back(d);
        fixed = fixed && d < kFixTolerance;
      }
      sec.killing_rank = numerical_rank(killing_fields(sec.point, spec),
                                        spec.tolerances().rank_relative).rank;
      sec.verified = sec.residual < 1e-10 && fixed && sec.killing_rank == 3;
    } catch (const Error& e) {
      rep.notes.push_back(std::string("singular stratum: ") + e.what());
    }
    rep.singular_stratum = sec;

    if (!points.empty()) {
      const MultiplicationConvention conv = load_convention();
      CoassociativitySection co;
      co.level_set = coassociativity_check(points, conv);
      const auto contrast_spec = LevelSetSpec::stiefel(opts.tolerances);
      const SampleSet contrast = sample_level_set(contrast_spec, opts.count,
                                                  stream_seed(opts.seed, 7), opts.threads);
      co.contrast = coassociativity_check(contrast.points, conv);
      for (std::size_t i = 0; i < co.contrast.values.size(); ++i) {
        if (std::abs(co.contrast.values[i] - 1.0) > 1e-3) ++co.contrast_departures;
        if (std::abs(co.contrast.orbit_values[i] - 1.0) > 1e-3) ++co.contrast_orbit_departures;
      }
      rep.coassociativity = co;
    }
  }
  return rep;
}

VerificationReport verify_quad(const WeightQuad& p, const SamplingOptions& opts) {
  const auto spec = LevelSetSpec::quad(p, opts.tolerances);
  VerificationReport rep = base_report(spec, opts);
  const Verdict free = quad_freeness(p);
  rep.verdicts.emplace_back("free", free);
  if (p[0] == 0)
    rep.notes.push_back(
        "p1 = 0: the quotient contains two copies of M(p2,p3,p4) meeting in a 7-manifold "
        "(informational)");
  if (p == WeightQuad{{1, 1, 1, 1}})
    rep.notes.push_back(
        "M(1,1,1,1) is identified with Z2\\Spin(7)/Spin(4) (informational, not computed)");
  std::vector<SamplePoint> points;
  if (free || opts.force_sampling) {
    run_sampling(rep, spec, opts, points);
    if (free) rep.labels.push_back("free");
  }
  return rep;
}

VerificationReport verify_theta(const WeightMatrix& theta, const SamplingOptions& opts) {
  const auto spec = LevelSetSpec::theta(theta, opts.tolerances);
  VerificationReport rep = base_report(spec, opts);
  const MinorTriple m = minor_determinants(theta);
  rep.minors = m;
  rep.boxes = box_determinants(theta);
  rep.box_identity = verify_box_identity(theta);
  rep.obstruction = theta_smoothness_obstruction();

  const bool minors_nonzero = m.d12 != 0 && m.d13 != 0 && m.d23 != 0;
  const bool minors_unit = std::abs(m.d12) == 1 && std::abs(m.d13) == 1 && std::abs(m.d23) == 1;
  rep.verdicts.emplace_back("locally_free_on_u1_nonzero",
                            Verdict{minors_nonzero, minors_nonzero ? "" : "a minor vanishes"});
  rep.verdicts.emplace_back("free_on_u1_nonzero",
                            Verdict{minors_unit, minors_unit ? "" : "some |minor| != 1"});
  const Verdict lf = theta_locally_free(theta);
  rep.verdicts.emplace_back("locally_free", lf);

  if (lf) {
    rep.singular_orders = singular_group_orders(theta);
    std::array<IsotropyOrder, 4> cross{};
    const auto systems = singular_fixed_point_systems(theta);
    for (int k = 0; k < 4; ++k) cross[k] = torus_isotropy_order(systems[k]);
    rep.singular_orders_cross_check = cross;
    bool all_one = minors_unit;
    for (auto o : *rep.singular_orders) all_one = all_one && o == 1;
    rep.verdicts.emplace_back("free", Verdict{all_one, all_one ? "" : "some singular order > 1"});
    rep.labels.push_back(all_one ? "free" : "orbifold");
    if (minors_unit)
      rep.notes.push_back("all |minor| = 1, yet a box of modulus 3 remains: Z3 orbifold points, no "
                          "smooth quotient");
  } else {
    rep.verdicts.emplace_back("free", Verdict{false, "not locally free"});
  }

  std::vector<SamplePoint> points;
  if (lf || opts.force_sampling) run_sampling(rep, spec, opts, points);
  return rep;
}

}  // namespace hkq
