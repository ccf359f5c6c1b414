#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hkq/algebra.hpp"
#include "hkq/levelset_spec.hpp"
#include "hkq/momentmaps.hpp"

namespace hkq {

// ---------------------------------------------------------------------------
// Rank diagnostics
// ---------------------------------------------------------------------------

struct RankInfo {
  int rank = 0;
  double sigma_max = 0.0;
  double sigma_min_retained = 0.0;  // smallest singular value counted in the rank
  double sigma_first_dropped = 0.0;  // largest singular value below the threshold (0 if none)
  Eigen::VectorXd singular_values;
};

/// Singular values below rel_threshold * sigma_max count as zero.
RankInfo numerical_rank(const Eigen::MatrixXd& m, double rel_threshold);

// ---------------------------------------------------------------------------
// Projection and sampling
// ---------------------------------------------------------------------------

struct SamplePoint {
  QuaternionVector u;
  double residual = 0.0;
  int jacobian_rank = 0;
  int killing_rank = 0;
  double min_sv_constraints = 0.0;  // smallest singular value of the constraint Jacobian
  double min_sv_killing = 0.0;      // smallest singular value of the Killing matrix
  std::uint64_t seed = 0;
  int iterations = 0;
};

/// Fills the rank fields of `pt` from its point and the LevelSetSpec.
void annotate(SamplePoint& pt, const LevelSetSpec& spec);

/// Damped Gauss-Newton (minimum-norm Levenberg-Marquardt steps) on
/// constraint_residual. Throws DegenerateStart when |u0| <= 1e-8 and Diverged
/// when max_iter is exhausted.
SamplePoint project_to_level_set(const QuaternionVector& u0, const LevelSetSpec& spec, double tol,
                                 int max_iter);
SamplePoint project_to_level_set(const QuaternionVector& u0, const LevelSetSpec& spec);

/// Same solver restricted to the affine-free subspace u = embed * z.
/// Returns the final point even when it did not converge (check `residual`).
SamplePoint project_on_subspace(const Eigen::VectorXd& z0, const Eigen::MatrixXd& embed,
                                const LevelSetSpec& spec, double tol, int max_iter);

/// Seeded standard-normal start for stream `index` of `seed`, normalized.
QuaternionVector random_start(const LevelSetSpec& spec, std::uint64_t seed, std::uint64_t index);

struct SampleSet {
  std::vector<SamplePoint> points;  // converged only, in start order
  int attempted = 0;
  double converged_fraction() const {
    return attempted == 0 ? 0.0 : static_cast<double>(points.size()) / attempted;
  }
};

/// `threads` <= 0 means hardware concurrency. Output does not depend on it.
/// Throws AllDiverged when nothing converges.
SampleSet sample_level_set(const LevelSetSpec& spec, int count, std::uint64_t seed, int threads = 0);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

struct Offender {
  std::size_t index = 0;
  QuaternionVector u;
  std::string detail;
};

struct CertificateReport {
  std::string name;
  bool passed = false;
  std::size_t samples = 0;
  int expected = 0;  // expected rank (or count) being certified
  double min_margin = 0.0;
  double median_margin = 0.0;
  std::vector<int> observed;  // distinct observed ranks/counts, sorted
  std::vector<Offender> offenders;
  std::vector<std::string> notes;
};

/// Constraint-Jacobian rank must equal constraint_count and nullity the
/// level-set dimension; margin = min retained singular value / sigma_max.
CertificateReport smoothness_certificate(const std::vector<SamplePoint>& samples,
                                         const LevelSetSpec& spec);

/// Killing-field rank must equal `expected_rank` (default: the group dimension).
CertificateReport freeness_certificate(const std::vector<SamplePoint>& samples,
                                       const LevelSetSpec& spec,
                                       std::optional<int> expected_rank = std::nullopt);

// ---------------------------------------------------------------------------
// Strata
// ---------------------------------------------------------------------------

struct StrataClass {
  bool u1_vanishes = false;    // S0 (else S1)
  bool pair_vanishes = false;  // S2 (else S3)
};

StrataClass classify_strata(const QuaternionVector& u, double threshold = 1e-8);

struct StrataCounts {
  int s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  int s0_and_s2 = 0;  // zero iff S0 and S2 are disjoint, S2 in S1, S0 in S3
};

StrataCounts count_strata(const std::vector<SamplePoint>& samples, double threshold = 1e-8);

// ---------------------------------------------------------------------------
// Vertices
// ---------------------------------------------------------------------------

/// Four 0-based quaternionic coordinate indices, ascending.
using SupportPattern = std::array<int, 4>;

std::vector<SupportPattern> all_support_patterns();  // the 35 patterns, lexicographic
bool is_predicted_vertex(const SupportPattern& s);    // {1} + one of each pair
std::string to_string(const SupportPattern& s);        // 1-based, "{1,2,4,6}"

enum class Feasibility { Feasible, Infeasible, Inconclusive };
std::string to_string(Feasibility f);

struct PatternResult {
  SupportPattern pattern{};
  Feasibility feasibility = Feasibility::Inconclusive;
  bool predicted = false;
  double best_residual = 0.0;
  std::optional<QuaternionVector> witness;   // best solver output when feasible
  double explicit_witness_residual = -1.0;   // explicit vertex point, predicted patterns only
  std::vector<int> frame_determinant_signs;  // distinct signs of det(B) over converged starts
};

struct VertexScanReport {
  std::vector<PatternResult> patterns;
  int feasible = 0;
  int infeasible = 0;
  int inconclusive = 0;
  bool matches_prediction = false;
  std::vector<std::string> unexpected_feasible;
  std::vector<std::string> missing_vertices;
};

/// The 1/2 (1, i, j, k) witness placed on a predicted pattern.
QuaternionVector explicit_vertex_witness(const SupportPattern& s);

/// Multi-start projection restricted to each support. Requires a triple spec
/// with 0 < p1 < p2 < p3 (InvalidArgument otherwise).
VertexScanReport vertex_support_scan(const LevelSetSpec& spec, double tol, int starts = 20,
                                     std::uint64_t seed = 42);

// ---------------------------------------------------------------------------
// Singular stratum of p = (1,1,1)
// ---------------------------------------------------------------------------

/// Point with u1 = 0 and u_{2i+1} = -rho u_{2i} on N_nu(1,1,1); fixed by
/// (cos t + rho sin t, A(t)). Throws ConstructionFailed.
QuaternionVector singular_stratum_point(std::uint64_t seed,
                                        const ImaginaryQuaternion& rho = {1.0, 0.0, 0.0});

/// The isotropy element (cos t + rho sin t, t).
GroupElement singular_isotropy_element(double t, const ImaginaryQuaternion& rho = {1.0, 0.0, 0.0});

// ---------------------------------------------------------------------------
// Co-associativity
// ---------------------------------------------------------------------------

/// Orthonormal basis (rows) of the complement of the frame's row space in R^7.
Eigen::Matrix<double, 3, 7> frame_complement(const QuaternionVector& u);

/// |phi| on the complement of the frame at u.
double complement_calibration(const QuaternionVector& u, const MultiplicationConvention& conv);

/// max over t of |phi| on the complement of f(-t) u, where f is the central
/// U(1) of the (1,1,1) action.
double orbit_max_calibration(const QuaternionVector& u, const MultiplicationConvention& conv);

struct CoassociativityReport {
  std::size_t samples = 0;
  std::vector<double> values;        // pointwise |phi|
  std::vector<double> orbit_values;  // max over the U(1) orbit
  double max_pointwise_deficit = 0.0;
  double max_orbit_deficit = 0.0;
  std::size_t worst_index = 0;
  bool pointwise_passed = false;  // every |phi| within tol of 1
  bool orbit_passed = false;      // every orbit maximum within tol of 1
};

CoassociativityReport coassociativity_check(const std::vector<SamplePoint>& samples,
                                            const MultiplicationConvention& conv,
                                            double tol = 1e-6);

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

struct DimensionTable {
  int ambient_sphere_dim = 0;
  int constraint_count = 0;
  int level_set_dim = 0;
  int group_dim = 0;
  int quotient_dim = 0;
  std::optional<int> observed_nullity;
  bool chain_holds = false;  // arithmetic and, if present, observed nullity
};

DimensionTable dimension_report(const LevelSetSpec& spec,
                                const std::vector<SamplePoint>* samples = nullptr);

}  // namespace hkq
