#include "hkq/momentmaps.hpp"

#include <cmath>
#include <string>

#include "hkq/errors.hpp"
#include "internal.hpp"

namespace hkq {

namespace {

void check_size(int n) {
  if (n != 7 && n != 8)
    throw Error(ErrorKind::DimensionMismatch,
                "quaternion vector length must be 7 or 8, got " + std::to_string(n));
}

void check_matches(const QuaternionVector& u, const LevelSetSpec& spec) {
  if (u.size() != spec.ambient_quaternionic_dim())
    throw Error(ErrorKind::DimensionMismatch,
                "point has " + std::to_string(u.size()) + " quaternionic coordinates, spec expects " +
                    std::to_string(spec.ambient_quaternionic_dim()));
}

// 2 Im(conj(a) b), i.e. conj(a) b - conj(b) a
ImaginaryQuaternion twice_im_conj_product(const Quaternion& a, const Quaternion& b) {
  const Quaternion p = a.conj() * b;
  return {2.0 * p.x, 2.0 * p.y, 2.0 * p.z};
}

PairLayout triple_layout() { return {true, {{1, 2}, {3, 4}, {5, 6}}}; }
PairLayout quad_layout() { return {false, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}}; }

}  // namespace

QuaternionVector::QuaternionVector(int n) {
  check_size(n);
  entries_.assign(n, Quaternion{});
}

QuaternionVector::QuaternionVector(std::initializer_list<Quaternion> entries) : entries_(entries) {
  check_size(size());
}

QuaternionVector::QuaternionVector(std::vector<Quaternion> entries) : entries_(std::move(entries)) {
  check_size(size());
}

QuaternionVector QuaternionVector::from_real(const Eigen::VectorXd& x) {
  if (x.size() != 28 && x.size() != 32)
    throw Error(ErrorKind::DimensionMismatch,
                "real coordinate vector must have 28 or 32 entries, got " + std::to_string(x.size()));
  QuaternionVector u(static_cast<int>(x.size() / 4));
  for (int a = 0; a < u.size(); ++a)
    for (int c = 0; c < 4; ++c) u[a][c] = x[4 * a + c];
  return u;
}

Eigen::VectorXd QuaternionVector::to_real() const {
  Eigen::VectorXd x(real_dim());
  for (int a = 0; a < size(); ++a)
    for (int c = 0; c < 4; ++c) x[4 * a + c] = entries_[a][c];
  return x;
}

double QuaternionVector::norm2() const {
  double s = 0.0;
  for (const auto& q : entries_) s += q.norm2();
  return s;
}

double QuaternionVector::norm() const { return std::sqrt(norm2()); }

QuaternionVector operator*(double s, const QuaternionVector& u) {
  QuaternionVector out = u;
  for (int a = 0; a < out.size(); ++a) out[a] = s * out[a];
  return out;
}

QuaternionVector operator-(const QuaternionVector& a, const QuaternionVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "length mismatch");
  QuaternionVector out = a;
  for (int i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

FrameMatrix frame_matrix(const QuaternionVector& u) {
  FrameMatrix f(4, u.size());
  for (int a = 0; a < u.size(); ++a)
    for (int c = 0; c < 4; ++c) f(c, a) = u[a][c];
  return f;
}

QuaternionVector vertex_point7() {
  return {0.5 * Quaternion::one(), 0.5 * Quaternion::i(), {}, 0.5 * Quaternion::j(), {},
          0.5 * Quaternion::k(),   {}};
}

QuaternionVector vertex_point8() {
  return {0.5 * Quaternion::one(), {}, 0.5 * Quaternion::i(), {}, 0.5 * Quaternion::j(), {},
          0.5 * Quaternion::k(),   {}};
}

std::array<ImaginaryQuaternion, 3> moment_sp1(const QuaternionVector& u) {
  std::array<ImaginaryQuaternion, 3> mu{};
  for (int e = 0; e < 3; ++e) {
    const Quaternion unit = Quaternion::unit(e + 1);
    Quaternion acc;
    for (const auto& q : u.entries()) acc += q.conj() * unit * q;
    mu[e] = ImaginaryQuaternion::from(acc);
  }
  return mu;
}

ImaginaryQuaternion pair_moment(const Quaternion& x, const Quaternion& y) {
  return ImaginaryQuaternion::from(x.conj() * y - y.conj() * x);
}

ImaginaryQuaternion abelian_moment(const QuaternionVector& u, const PairLayout& layout,
                                   const std::vector<Int>& weights) {
  if (weights.size() != layout.pairs.size())
    throw Error(ErrorKind::DimensionMismatch, "weight count does not match pair count");
  ImaginaryQuaternion acc;
  for (std::size_t r = 0; r < layout.pairs.size(); ++r) {
    const auto [a, b] = layout.pairs[r];
    if (weights[r] == 0) continue;
    acc = acc + static_cast<double>(weights[r]) * pair_moment(u[a], u[b]);
  }
  return acc;
}

ImaginaryQuaternion moment_u1_weighted(const QuaternionVector& u, const WeightTriple& p) {
  if (u.size() != 7) throw Error(ErrorKind::DimensionMismatch, "weighted U(1) map needs H^7");
  return abelian_moment(u, triple_layout(), {p[0], p[1], p[2]});
}

std::array<ImaginaryQuaternion, 2> moment_torus(const QuaternionVector& u,
                                                const WeightMatrix& theta) {
  if (u.size() != 7) throw Error(ErrorKind::DimensionMismatch, "torus map needs H^7");
  const auto layout = triple_layout();
  return {abelian_moment(u, layout, {theta.p[0], theta.p[1], theta.p[2]}),
          abelian_moment(u, layout, {theta.q[0], theta.q[1], theta.q[2]})};
}

ImaginaryQuaternion moment_u1_quad(const QuaternionVector& u, const WeightQuad& p) {
  if (u.size() != 8) throw Error(ErrorKind::DimensionMismatch, "quad U(1) map needs H^8");
  return abelian_moment(u, quad_layout(), {p[0], p[1], p[2], p[3]});
}

ImaginaryOctonion frame_row_octonion(const QuaternionVector& u, int a) {
  if (u.size() != 7) throw Error(ErrorKind::DimensionMismatch, "octonionic rows need H^7");
  ImaginaryOctonion f;
  for (int m = 0; m < 7; ++m) f.c[m] = u[m][a];
  return f;
}

ImaginaryQuaternion detail::nu_octonionic_unchecked(const QuaternionVector& u,
                                                    const MultiplicationConvention& conv) {
  std::array<ImaginaryOctonion, 4> f;
  for (int a = 0; a < 4; ++a) f[a] = frame_row_octonion(u, a);
  const ImaginaryOctonion unit = ImaginaryOctonion::unit(conv.pairing_unit());
  const double kappa = conv.cross_term_coefficient();
  double nu[3];
  for (int a = 1; a <= 3; ++a) {
    const int b = a % 3 + 1, c = b % 3 + 1;  // (a, b, c) cyclic
    const double first = oct_mul(f[0], f[a], conv).im.dot(unit);
    const double cross = oct_mul(f[b], f[c], conv).im.dot(unit);
    nu[a - 1] = 2.0 * (first + kappa * cross);
  }
  return {nu[0], nu[1], nu[2]};
}

ImaginaryQuaternion nu_octonionic(const QuaternionVector& u, const MultiplicationConvention& conv) {
  if (!conv.calibrated())
    throw Error(ErrorKind::UncalibratedConvention,
                "octonionic evaluation needs a convention produced by calibration");
  return detail::nu_octonionic_unchecked(u, conv);
}

QuaternionVector action_apply(const QuaternionVector& u, const GroupElement& g,
                              const LevelSetSpec& spec) {
  check_matches(u, spec);
  if (std::abs(g.lambda.norm() - 1.0) > 1e-9)
    throw Error(ErrorKind::NonUnitLambda, "|lambda| = " + std::to_string(g.lambda.norm()));
  if (static_cast<int>(g.angles.size()) != spec.abelian_dim() &&
      !(g.angles.empty() && spec.abelian_dim() > 0))
    throw Error(ErrorKind::DimensionMismatch, "angle count does not match the abelian factor");

  QuaternionVector out = u;
  if (!g.angles.empty()) {
    const auto& layout = spec.layout();
    for (std::size_t pr = 0; pr < layout.pairs.size(); ++pr) {
      double theta = 0.0;
      for (int r = 0; r < spec.abelian_dim(); ++r)
        theta += static_cast<double>(spec.abelian_rows()[r][pr]) * g.angles[r];
      const double c = std::cos(theta), s = std::sin(theta);
      const auto [a, b] = layout.pairs[pr];
      out[a] = c * u[a] + s * u[b];
      out[b] = (-s) * u[a] + c * u[b];
    }
  }
  for (int a = 0; a < out.size(); ++a) out[a] = g.lambda * out[a];
  return out;
}

Eigen::MatrixXd killing_fields(const QuaternionVector& u, const LevelSetSpec& spec) {
  check_matches(u, spec);
  const int n = u.real_dim();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, spec.group_dim());
  for (int e = 0; e < 3; ++e) {
    const Quaternion unit = Quaternion::unit(e + 1);
    for (int a = 0; a < u.size(); ++a) {
      const Quaternion v = unit * u[a];
      for (int c = 0; c < 4; ++c) k(4 * a + c, e) = v[c];
    }
  }
  const auto& layout = spec.layout();
  for (int r = 0; r < spec.abelian_dim(); ++r) {
    for (std::size_t pr = 0; pr < layout.pairs.size(); ++pr) {
      const double w = static_cast<double>(spec.abelian_rows()[r][pr]);
      const auto [a, b] = layout.pairs[pr];
      for (int c = 0; c < 4; ++c) {
        k(4 * a + c, 3 + r) = w * u[b][c];
        k(4 * b + c, 3 + r) = -w * u[a][c];
      }
    }
  }
  return k;
}

Eigen::VectorXd constraint_residual(const QuaternionVector& u, const LevelSetSpec& spec) {
  check_matches(u, spec);
  Eigen::VectorXd r(spec.constraint_count());
  r[0] = u.norm2() - 1.0;
  const auto mu = moment_sp1(u);
  for (int e = 0; e < 3; ++e)
    for (int c = 0; c < 3; ++c) r[1 + 3 * e + c] = mu[e][c];
  for (int row = 0; row < spec.abelian_dim(); ++row) {
    const auto nu = abelian_moment(u, spec.layout(), spec.abelian_rows()[row]);
    for (int c = 0; c < 3; ++c) r[10 + 3 * row + c] = nu[c];
  }
  return r;
}

Eigen::MatrixXd constraint_jacobian(const QuaternionVector& u, const LevelSetSpec& spec) {
  check_matches(u, spec);
  const int n = u.real_dim();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(spec.constraint_count(), n);
  for (int a = 0; a < u.size(); ++a) {
    for (int c = 0; c < 4; ++c) {
      const int col = 4 * a + c;
      const Quaternion dir_conj = Quaternion::unit(c).conj();
      jac(0, col) = 2.0 * u[a][c];
      for (int e = 0; e < 3; ++e) {
        const Quaternion p = dir_conj * Quaternion::unit(e + 1) * u[a];
        jac(1 + 3 * e + 0, col) = 2.0 * p.x;
        jac(1 + 3 * e + 1, col) = 2.0 * p.y;
        jac(1 + 3 * e + 2, col) = 2.0 * p.z;
      }
    }
  }
  const auto& layout = spec.layout();
  for (int row = 0; row < spec.abelian_dim(); ++row) {
    for (std::size_t pr = 0; pr < layout.pairs.size(); ++pr) {
      const double w = static_cast<double>(spec.abelian_rows()[row][pr]);
      if (w == 0.0) continue;
      const auto [a, b] = layout.pairs[pr];
      for (int c = 0; c < 4; ++c) {
        const Quaternion dir = Quaternion::unit(c);
        const ImaginaryQuaternion da = twice_im_conj_product(dir, u[b]);
        const ImaginaryQuaternion db = twice_im_conj_product(u[a], dir);
        for (int k = 0; k < 3; ++k) {
          jac(10 + 3 * row + k, 4 * a + c) += w * da[k];
          jac(10 + 3 * row + k, 4 * b + c) += w * db[k];
        }
      }
    }
  }
  return jac;
}

}  // namespace hkq
