#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkq/levelset.hpp"
#include "hkq/weightarith.hpp"

namespace hkq {

std::string_view library_version();

struct SamplingOptions {
  int count = 100;
  std::uint64_t seed = 42;
  int threads = 0;
  Tolerances tolerances;
  bool force_sampling = false;  // sample even when the exact verdict is negative
  bool vertex_scan = true;
  int vertex_starts = 20;
};

/// Numerical confirmation that a failed gcd condition produces a nontrivial
/// stabilizer: a point of the level set and a group element fixing it.
struct IsotropyWitness {
  std::string condition;  // e.g. "gcd(p1,p2) = 3"
  std::string construction;
  GroupElement element;
  QuaternionVector point;
  double residual = 0.0;
  double displacement = 0.0;  // |g.u - u|
  bool verified = false;
};

struct SingularStratumSection {
  QuaternionVector point;
  double residual = 0.0;
  std::vector<double> test_angles;
  std::vector<double> displacements;
  int killing_rank = 0;
  bool verified = false;
};

struct CoassociativitySection {
  CoassociativityReport level_set;  // samples of N_nu(1,1,1)
  CoassociativityReport contrast;   // samples of N (nu unconstrained)
  std::size_t contrast_departures = 0;  // contrast points with | |phi| - 1 | > 1e-3
  std::size_t contrast_orbit_departures = 0;
};

struct VerificationReport {
  Family family = Family::Triple;
  std::string datum;
  std::vector<std::pair<std::string, Verdict>> verdicts;
  std::optional<MinorTriple> minors;
  std::optional<BoxQuad> boxes;
  std::optional<bool> box_identity;
  std::optional<std::array<std::uint64_t, 4>> singular_orders;
  std::optional<std::array<IsotropyOrder, 4>> singular_orders_cross_check;
  std::optional<ObstructionReport> obstruction;
  DimensionTable dimensions;
  std::optional<double> converged_fraction;
  std::vector<CertificateReport> certificates;
  std::optional<StrataCounts> strata;
  std::optional<VertexScanReport> vertices;
  std::optional<SingularStratumSection> singular_stratum;
  std::optional<CoassociativitySection> coassociativity;
  std::vector<IsotropyWitness> witnesses;
  std::vector<std::string> labels;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  Tolerances tolerances;

  /// All numerical certificates and witness checks passed.
  bool passed() const;
};

VerificationReport verify_triple(const WeightTriple& p, const SamplingOptions& opts = {});
VerificationReport verify_quad(const WeightQuad& p, const SamplingOptions& opts = {});
VerificationReport verify_theta(const WeightMatrix& theta, const SamplingOptions& opts = {});

/// Stabilizer witnesses for every failing gcd condition of a triple with
/// distinct positive entries.
std::vector<IsotropyWitness> isotropy_witnesses(const WeightTriple& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Consolidated suite
// ---------------------------------------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 42;
  Int bound = 30;
  int count = 100;
  int threads = 0;
  double rank_relative = 1e-6;
  bool enumeration_only = false;  // criteria 1-5 only
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  nlohmann::json detail;
};

/// Criterion `id` in 1..11. Throws InvalidArgument otherwise.
CriterionResult run_criterion(int id, const SuiteOptions& opts);

struct SuiteReport {
  SuiteOptions options;
  std::vector<CriterionResult> criteria;
  bool passed() const;
};

SuiteReport run_acceptance_suite(const SuiteOptions& opts = {});

}  // namespace hkq
