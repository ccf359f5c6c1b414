#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "hkq/errors.hpp"
#include "hkq/levelset.hpp"

namespace hkq {

namespace {

ImaginaryOctonion as_octonion(const Eigen::Matrix<double, 1, 7>& row) {
  ImaginaryOctonion o;
  for (int m = 0; m < 7; ++m) o.c[m] = row[m];
  return o;
}

// Rotation of R^7 induced by the central circle: A(t) on index pairs
// (2,3), (4,5), (6,7); applied to the complement basis rows.
Eigen::Matrix<double, 3, 7> rotate_rows(const Eigen::Matrix<double, 3, 7>& g, double t) {
  Eigen::Matrix<double, 3, 7> out = g;
  const double c = std::cos(t), s = std::sin(t);
  for (int a = 1; a < 7; a += 2) {
    out.col(a) = c * g.col(a) + s * g.col(a + 1);
    out.col(a + 1) = -s * g.col(a) + c * g.col(a + 1);
  }
  return out;
}

double phi_rows(const Eigen::Matrix<double, 3, 7>& g, const MultiplicationConvention& conv) {
  return calibration_phi(as_octonion(g.row(0)), as_octonion(g.row(1)), as_octonion(g.row(2)), conv);
}

}  // namespace

Eigen::Matrix<double, 3, 7> frame_complement(const QuaternionVector& u) {
  if (u.size() != 7) throw Error(ErrorKind::DimensionMismatch, "co-associativity needs H^7");
  const FrameMatrix f = frame_matrix(u);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(f), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(3).transpose();
}

double complement_calibration(const QuaternionVector& u, const MultiplicationConvention& conv) {
  return std::abs(phi_rows(frame_complement(u), conv));
}

double orbit_max_calibration(const QuaternionVector& u, const MultiplicationConvention& conv) {
  // phi of the rotated complement is a trigonometric polynomial of degree <= 3
  // in t; seven equispaced samples determine it exactly.
  const Eigen::Matrix<double, 3, 7> g = frame_complement(u);
  constexpr int kNodes = 7;
  double a0 = 0.0, a[4] = {}, b[4] = {};
  for (int n = 0; n < kNodes; ++n) {
    const double t = 2.0 * std::numbers::pi * n / kNodes;
    const double h = phi_rows(rotate_rows(g, t), conv);
    a0 += h / kNodes;
    for (int k = 1; k <= 3; ++k) {
      a[k] += 2.0 * h * std::cos(k * t) / kNodes;
      b[k] += 2.0 * h * std::sin(k * t) / kNodes;
    }
  }
  auto h = [&](double t) {
    double v = a0;
    for (int k = 1; k <= 3; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    return v;
  };
  auto dh = [&](double t) {
    double v = 0.0;
    for (int k = 1; k <= 3; ++k) v += k * (-a[k] * std::sin(k * t) + b[k] * std::cos(k * t));
    return v;
  };
  auto d2h = [&](double t) {
    double v = 0.0;
    for (int k = 1; k <= 3; ++k) v -= k * k * (a[k] * std::cos(k * t) + b[k] * std::sin(k * t));
    return v;
  };
  constexpr int kGrid = 720;
  double best = 0.0;
  for (int n = 0; n < kGrid; ++n) {
    double t = 2.0 * std::numbers::pi * n / kGrid;
    const double v = std::abs(h(t));
    if (v < best - 1e-2) continue;
    for (int it = 0; it < 8; ++it) {
      const double curv = d2h(t);
      if (curv == 0.0) break;
      t -= dh(t) / curv;
    }
    best = std::max({best, v, std::abs(h(t))});
  }
  return best;
}

CoassociativityReport coassociativity_check(const std::vector<SamplePoint>& samples,
                                            const MultiplicationConvention& conv, double tol) {
  if (!conv.calibrated())
    throw Error(ErrorKind::UncalibratedConvention, "co-associativity needs a calibrated convention");
  CoassociativityReport rep;
  rep.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = complement_calibration(samples[i].u, conv);
    const double o = orbit_max_calibration(samples[i].u, conv);
    rep.values.push_back(v);
    rep.orbit_values.push_back(o);
    if (std::abs(v - 1.0) > rep.max_pointwise_deficit) {
      rep.max_pointwise_deficit = std::abs(v - 1.0);
      rep.worst_index = i;
    }
    rep.max_orbit_deficit = std::max(rep.max_orbit_deficit, std::abs(o - 1.0));
  }
  rep.pointwise_passed = !samples.empty() && rep.max_pointwise_deficit <= tol;
  rep.orbit_passed = !samples.empty() && rep.max_orbit_deficit <= tol;
  return rep;
}

}  // namespace hkq
