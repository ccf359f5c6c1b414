#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "hkq/algebra.hpp"
#include "hkq/levelset_spec.hpp"
#include "hkq/weightarith.hpp"

namespace hkq {

/// A point of H^7 or H^8.
class QuaternionVector {
 public:
  QuaternionVector() = default;
  /// Zero vector; throws DimensionMismatch unless n is 7 or 8.
  explicit QuaternionVector(int n);
  QuaternionVector(std::initializer_list<Quaternion> entries);
  explicit QuaternionVector(std::vector<Quaternion> entries);

  /// From 28/32 reals in coordinate-major order (u1w, u1x, u1y, u1z, u2w, ...).
  static QuaternionVector from_real(const Eigen::VectorXd& x);
  Eigen::VectorXd to_real() const;

  int size() const { return static_cast<int>(entries_.size()); }
  int real_dim() const { return 4 * size(); }
  const Quaternion& operator[](int a) const { return entries_[a]; }
  Quaternion& operator[](int a) { return entries_[a]; }
  const std::vector<Quaternion>& entries() const { return entries_; }

  double norm2() const;
  double norm() const;

  friend bool operator==(const QuaternionVector&, const QuaternionVector&) = default;

 private:
  std::vector<Quaternion> entries_;
};

QuaternionVector operator*(double s, const QuaternionVector& u);
QuaternionVector operator-(const QuaternionVector& a, const QuaternionVector& b);

/// 4 x n matrix whose row a holds the a-th quaternion component of every coordinate.
using FrameMatrix = Eigen::Matrix<double, 4, Eigen::Dynamic>;
FrameMatrix frame_matrix(const QuaternionVector& u);

/// The vertex witness 1/2 (1, i, 0, j, 0, k, 0) and its H^8 analogue
/// 1/2 (1, 0, i, 0, j, 0, k, 0).
QuaternionVector vertex_point7();
QuaternionVector vertex_point8();

// ---------------------------------------------------------------------------
// Moment maps
// ---------------------------------------------------------------------------

/// (sum conj(u) i u, sum conj(u) j u, sum conj(u) k u).
std::array<ImaginaryQuaternion, 3> moment_sp1(const QuaternionVector& u);

/// conj(x) y - conj(y) x for one rotation pair.
ImaginaryQuaternion pair_moment(const Quaternion& x, const Quaternion& y);

/// Weighted pair sum over the layout's pairs.
ImaginaryQuaternion abelian_moment(const QuaternionVector& u, const PairLayout& layout,
                                   const std::vector<Int>& weights);

/// Pairs (u2,u3), (u4,u5), (u6,u7); u1 is inert.
ImaginaryQuaternion moment_u1_weighted(const QuaternionVector& u, const WeightTriple& p);
std::array<ImaginaryQuaternion, 2> moment_torus(const QuaternionVector& u, const WeightMatrix& theta);
/// Pairs (u1,u2), (u3,u4), (u5,u6), (u7,u8).
ImaginaryQuaternion moment_u1_quad(const QuaternionVector& u, const WeightQuad& p);

/// ν with weights (1,1,1) through the octonionic rows of the frame matrix.
/// Throws UncalibratedConvention.
ImaginaryQuaternion nu_octonionic(const QuaternionVector& u, const MultiplicationConvention& conv);

/// Row a of the frame matrix read as an imaginary octonion (H^7 only).
ImaginaryOctonion frame_row_octonion(const QuaternionVector& u, int a);

// ---------------------------------------------------------------------------
// Group action
// ---------------------------------------------------------------------------

/// (lambda, angles): lambda acts by left multiplication, angle r drives the
/// rotation blocks A(sum_r w_r * angle_r) of the LevelSetSpec's abelian rows.
struct GroupElement {
  Quaternion lambda = Quaternion::one();
  std::vector<double> angles;
};

/// Throws NonUnitLambda if ||lambda| - 1| > 1e-9, DimensionMismatch if the
/// point or the angle count does not fit the LevelSetSpec.
QuaternionVector action_apply(const QuaternionVector& u, const GroupElement& g,
                              const LevelSetSpec& spec);

/// Generators at u as columns: left multiplication by i, j, k, then one
/// column per abelian row.
Eigen::MatrixXd killing_fields(const QuaternionVector& u, const LevelSetSpec& spec);

// ---------------------------------------------------------------------------
// Constraint system
// ---------------------------------------------------------------------------

/// (|u|^2 - 1, mu_i, mu_j, mu_k, abelian rows...) as a real vector of length
/// spec.constraint_count(). Throws DimensionMismatch.
Eigen::VectorXd constraint_residual(const QuaternionVector& u, const LevelSetSpec& spec);

/// Analytic Jacobian of `constraint_residual` in the real coordinates.
Eigen::MatrixXd constraint_jacobian(const QuaternionVector& u, const LevelSetSpec& spec);

}  // namespace hkq
