#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace hkq {

/// Real quaternion w + x i + y j + z k with Hamilton's ij = k.
struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }
  /// Basis element 0..3 (1, i, j, k).
  static constexpr Quaternion unit(int index) {
    Quaternion q;
    q[index] = 1.0;
    return q;
  }

  constexpr double& operator[](int c) { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }
  constexpr double operator[](int c) const { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(double s, const Quaternion& a) {
  return {s * a.w, s * a.x, s * a.y, s * a.z};
}
constexpr Quaternion& operator+=(Quaternion& a, const Quaternion& b) { return a = a + b; }

Quaternion quat_mul(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }

/// Element of Im(H); values of the moment maps live here.
struct ImaginaryQuaternion {
  double x = 0.0, y = 0.0, z = 0.0;

  static ImaginaryQuaternion from(const Quaternion& q) { return {q.x, q.y, q.z}; }
  constexpr Quaternion as_quaternion() const { return {0.0, x, y, z}; }
  constexpr double operator[](int c) const { return c == 0 ? x : c == 1 ? y : z; }
  constexpr double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  friend constexpr bool operator==(const ImaginaryQuaternion&, const ImaginaryQuaternion&) = default;
};

constexpr ImaginaryQuaternion operator+(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr ImaginaryQuaternion operator-(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr ImaginaryQuaternion operator*(double s, const ImaginaryQuaternion& a) {
  return {s * a.x, s * a.y, s * a.z};
}

/// Commutator ab - ba of imaginary quaternions (stays imaginary).
ImaginaryQuaternion commutator(const ImaginaryQuaternion& a, const ImaginaryQuaternion& b);

// ---------------------------------------------------------------------------
// Octonions
// ---------------------------------------------------------------------------

/// Ordered basis of Im(O): i, j, k, e, ie, je, ke.
inline constexpr std::array<const char*, 7> kOctonionBasisNames = {"i", "j", "k", "e",
                                                                   "ie", "je", "ke"};

struct ImaginaryOctonion {
  std::array<double, 7> c{};

  static ImaginaryOctonion unit(int index) {
    ImaginaryOctonion o;
    o.c[index] = 1.0;
    return o;
  }
  double operator[](int m) const { return c[m]; }
  double& operator[](int m) { return c[m]; }
  double dot(const ImaginaryOctonion& o) const;
  double norm() const { return std::sqrt(dot(*this)); }
};

struct Octonion {
  double re = 0.0;
  ImaginaryOctonion im;
  double norm2() const { return re * re + im.dot(im); }
};

/// Structure-constant signs for Im(O) on the fixed Cayley-Dickson incidence
/// (the seven lines {i,j,k}, {i,e,ie}, {j,e,je}, {k,e,ke}, {i,je,ke},
/// {j,ke,ie}, {k,ie,je}) plus the data that pairs the octonionic ν formula
/// with the quaternionic one.
///
/// `sign(m, n)` for m < n gives e_m e_n = sign * e_{third(m, n)}. There are 21
/// such pairs; they are stored in lexicographic (m, n) order.
class MultiplicationConvention {
 public:
  /// Uncalibrated placeholder; `calibrated()` is false and ν evaluation refuses it.
  MultiplicationConvention() = default;

  /// Builds the table from one orientation bit per line (bit l set means the
  /// listed cyclic order of line l is positive). Does not validate.
  static MultiplicationConvention from_orientation(std::uint8_t orientation_bits,
                                                   int pairing_unit = 0,
                                                   int cross_term_coefficient = -1);

  /// Builds from 21 signs in lexicographic pair order. Throws InvalidArgument
  /// if a sign is not +-1.
  static MultiplicationConvention from_signs(const std::array<int, 21>& signs, int pairing_unit,
                                             int cross_term_coefficient);

  int sign(int m, int n) const;  // m != n, both in 0..6
  static int third(int m, int n);
  static int pair_index(int m, int n);  // m < n

  const std::array<int, 21>& signs() const { return signs_; }
  std::uint8_t orientation_bits() const;
  /// Basis unit the three ν components are read off against.
  int pairing_unit() const { return pairing_unit_; }
  /// Coefficient of the single ordered cyclic term f^b f^c in the ν formula.
  int cross_term_coefficient() const { return cross_term_coefficient_; }

  bool calibrated() const { return calibrated_; }
  void mark_calibrated() { calibrated_ = true; }

  /// Checks |ab| = |a||b| on the 49 basis pairs and on `random_pairs` seeded pairs.
  bool satisfies_norm_composition(int random_pairs = 64, std::uint64_t seed = 7) const;

  friend bool operator==(const MultiplicationConvention& a, const MultiplicationConvention& b) {
    return a.signs_ == b.signs_ && a.pairing_unit_ == b.pairing_unit_ &&
           a.cross_term_coefficient_ == b.cross_term_coefficient_;
  }

 private:
  std::array<int, 21> signs_{};
  int pairing_unit_ = 0;
  int cross_term_coefficient_ = -1;
  bool calibrated_ = false;
};

/// Product of two imaginary octonions; the real part is -<a, b>.
Octonion oct_mul(const ImaginaryOctonion& a, const ImaginaryOctonion& b,
                 const MultiplicationConvention& conv);

/// Associative calibration <ab, c>.
double calibration_phi(const ImaginaryOctonion& a, const ImaginaryOctonion& b,
                       const ImaginaryOctonion& c, const MultiplicationConvention& conv);

struct CalibrationResult {
  MultiplicationConvention convention;
  int candidates_tested = 0;
  int norm_composing_tables = 0;
  int matching_candidates = 0;  // how many candidates reproduce ν on every sample
  double max_deviation = 0.0;   // of the returned convention, over the samples
};

/// Searches orientation x pairing unit x cross-term coefficient in a fixed order
/// and returns the first candidate whose octonionic ν agrees with the
/// quaternionic ν (weights 1,1,1) on `samples` seeded random points to 1e-10.
/// Throws NoConventionFound otherwise. Requires samples >= 100.
CalibrationResult calibrate_convention(int samples, std::uint64_t seed);

/// The convention `calibrate_convention` returns, computed once per process.
const MultiplicationConvention& default_convention();

}  // namespace hkq
