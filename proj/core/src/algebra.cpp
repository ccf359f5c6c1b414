#include "hkq/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hkq/errors.hpp"
#include "hkq/momentmaps.hpp"
#include "hkq/rng.hpp"
#include "internal.hpp"

namespace hkq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonUnitLambda: return "NonUnitLambda";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NoConventionFound: return "NoConventionFound";
    case ErrorKind::UncalibratedConvention: return "UncalibratedConvention";
    case ErrorKind::NotLocallyFree: return "NotLocallyFree";
    case ErrorKind::DegenerateStart: return "DegenerateStart";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::AllDiverged: return "AllDiverged";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

ImaginaryQuaternion commutator(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
  const Quaternion qa = a.as_quaternion(), qb = b.as_quaternion();
  return ImaginaryQuaternion::from(qa * qb - qb * qa);
}

double ImaginaryOctonion::dot(const ImaginaryOctonion& o) const {
  double s = 0.0;
  for (int m = 0; m < 7; ++m) s += c[m] * o.c[m];
  return s;
}

namespace {

// Cayley-Dickson incidence on (i, j, k, e, ie, je, ke); each triple is listed
// in its conventional cyclic order.
constexpr int kLines[7][3] = {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 3, 6},
                              {0, 5, 6}, {1, 6, 4}, {2, 4, 5}};

struct Incidence {
  int third[7][7];
  int line[7][7];
  Incidence() {
    for (auto& row : third)
      for (int& v : row) v = -1;
    for (int l = 0; l < 7; ++l) {
      const int* t = kLines[l];
      for (int r = 0; r < 3; ++r) {
        const int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
        third[a][b] = third[b][a] = c;
        line[a][b] = line[b][a] = l;
      }
    }
  }
};

const Incidence& incidence() {
  static const Incidence inc;
  return inc;
}

}  // namespace

int MultiplicationConvention::third(int m, int n) { return incidence().third[m][n]; }

int MultiplicationConvention::pair_index(int m, int n) {
  // lexicographic index of (m, n), m < n, among the 21 pairs of 0..6
  return m * 7 - m * (m + 1) / 2 + (n - m - 1);
}

int MultiplicationConvention::sign(int m, int n) const {
  if (m < n) return signs_[pair_index(m, n)];
  return -signs_[pair_index(n, m)];
}

MultiplicationConvention MultiplicationConvention::from_orientation(std::uint8_t bits,
                                                                    int pairing_unit,
                                                                    int cross_term_coefficient) {
  MultiplicationConvention conv;
  for (int l = 0; l < 7; ++l) {
    const bool positive = (bits >> l) & 1U;
    const int* t = kLines[l];
    for (int r = 0; r < 3; ++r) {
      const int a = t[r], b = t[(r + 1) % 3];
      // cyclic order gives a b = +c
      const int s = positive ? 1 : -1;
      if (a < b)
        conv.signs_[pair_index(a, b)] = s;
      else
        conv.signs_[pair_index(b, a)] = -s;
    }
  }
  conv.pairing_unit_ = pairing_unit;
  conv.cross_term_coefficient_ = cross_term_coefficient;
  return conv;
}

MultiplicationConvention MultiplicationConvention::from_signs(const std::array<int, 21>& signs,
                                                              int pairing_unit,
                                                              int cross_term_coefficient) {
  for (int s : signs)
    if (s != 1 && s != -1) throw Error(ErrorKind::InvalidArgument, "structure signs must be +-1");
  if (pairing_unit < 0 || pairing_unit > 6)
    throw Error(ErrorKind::InvalidArgument, "pairing unit out of range");
  MultiplicationConvention conv;
  conv.signs_ = signs;
  conv.pairing_unit_ = pairing_unit;
  conv.cross_term_coefficient_ = cross_term_coefficient;
  return conv;
}

std::uint8_t MultiplicationConvention::orientation_bits() const {
  std::uint8_t bits = 0;
  for (int l = 0; l < 7; ++l)
    if (sign(kLines[l][0], kLines[l][1]) > 0) bits |= static_cast<std::uint8_t>(1U << l);
  return bits;
}

Octonion oct_mul(const ImaginaryOctonion& a, const ImaginaryOctonion& b,
                 const MultiplicationConvention& conv) {
  Octonion out;
  out.re = -a.dot(b);
  for (int m = 0; m < 7; ++m) {
    if (a.c[m] == 0.0) continue;
    for (int n = 0; n < 7; ++n) {
      if (n == m || b.c[n] == 0.0) continue;
      out.im.c[MultiplicationConvention::third(m, n)] += conv.sign(m, n) * a.c[m] * b.c[n];
    }
  }
  return out;
}

double calibration_phi(const ImaginaryOctonion& a, const ImaginaryOctonion& b,
                       const ImaginaryOctonion& c, const MultiplicationConvention& conv) {
  return oct_mul(a, b, conv).im.dot(c);
}

bool MultiplicationConvention::satisfies_norm_composition(int random_pairs,
                                                          std::uint64_t seed) const {
  auto check = [&](const ImaginaryOctonion& a, const ImaginaryOctonion& b) {
    const double lhs = oct_mul(a, b, *this).norm2();
    const double rhs = a.dot(a) * b.dot(b);
    return std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs);
  };
  for (int m = 0; m < 7; ++m)
    for (int n = 0; n < 7; ++n) {
      ImaginaryOctonion a = ImaginaryOctonion::unit(m), b = ImaginaryOctonion::unit(n);
      a.c[(m + 3) % 7] += 0.5;  // mixed pairs catch sign clashes between lines
      b.c[(n + 5) % 7] -= 0.25;
      if (!check(a, b)) return false;
    }
  CounterRng rng(seed);
  for (int t = 0; t < random_pairs; ++t) {
    ImaginaryOctonion a, b;
    for (int m = 0; m < 7; ++m) a.c[m] = rng.normal();
    for (int m = 0; m < 7; ++m) b.c[m] = rng.normal();
    if (!check(a, b)) return false;
  }
  return true;
}

namespace {

std::vector<QuaternionVector> calibration_points(int samples, std::uint64_t seed) {
  std::vector<QuaternionVector> pts;
  pts.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(stream_seed(seed, static_cast<std::uint64_t>(s)));
    QuaternionVector u(7);
    for (int a = 0; a < 7; ++a)
      for (int c = 0; c < 4; ++c) u[a][c] = rng.normal();
    pts.push_back(std::move(u));
  }
  return pts;
}

constexpr int kCrossTermCandidates[] = {1, -1, 2, -2};

}  // namespace

double detail::nu_deviation(const MultiplicationConvention& conv,
                            const std::vector<QuaternionVector>& pts, double stop_above) {
  double worst = 0.0;
  for (const auto& u : pts) {
    const ImaginaryQuaternion q = moment_u1_weighted(u, WeightTriple{{1, 1, 1}});
    const ImaginaryQuaternion o = detail::nu_octonionic_unchecked(u, conv);
    const double scale = std::max(1.0, q.norm());
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(q[c] - o[c]) / scale);
    if (worst > stop_above) return worst;
  }
  return worst;
}

std::vector<QuaternionVector> detail::random_points7(int samples, std::uint64_t seed) {
  return calibration_points(samples, seed);
}

CalibrationResult calibrate_convention(int samples, std::uint64_t seed) {
  if (samples < 100) throw Error(ErrorKind::InvalidArgument, "calibration needs >= 100 samples");
  const auto pts = calibration_points(samples, seed);

  CalibrationResult result;
  std::optional<MultiplicationConvention> first;
  for (int bits = 0; bits < 128; ++bits) {
    // ij = k keeps span(i, j, k) a copy of the quaternions
    if (!(bits & 1)) continue;
    const auto table = MultiplicationConvention::from_orientation(static_cast<std::uint8_t>(bits));
    if (!table.satisfies_norm_composition()) continue;
    ++result.norm_composing_tables;
    for (int unit = 0; unit < 7; ++unit) {
      for (int coeff : kCrossTermCandidates) {
        ++result.candidates_tested;
        const auto conv = MultiplicationConvention::from_signs(table.signs(), unit, coeff);
        const double dev = detail::nu_deviation(conv, pts, 1e-10);
        if (dev <= 1e-10) {
          ++result.matching_candidates;
          if (!first) {
            first = conv;
            result.max_deviation = dev;
          }
        }
      }
    }
  }
  if (!first)
    throw Error(ErrorKind::NoConventionFound,
                "no sign table reproduces the quaternionic moment map; check oct_mul and the "
                "octonionic nu formula");
  result.convention = *first;
  result.convention.mark_calibrated();
  return result;
}

const MultiplicationConvention& default_convention() {
  static const MultiplicationConvention conv = calibrate_convention(1000, 1).convention;
  return conv;
}

}  // namespace hkq
