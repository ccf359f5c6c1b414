#include <Eigen/SVD>

#include "hkq/levelset.hpp"

namespace hkq {

RankInfo numerical_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  RankInfo info;
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  info.singular_values = svd.singularValues();
  info.sigma_max = info.singular_values.size() ? info.singular_values[0] : 0.0;
  const double cut = rel_threshold * info.sigma_max;
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    const double s = info.singular_values[i];
    if (s > cut && s > 0.0) {
      ++info.rank;
      info.sigma_min_retained = s;
    } else if (info.sigma_first_dropped == 0.0) {
      info.sigma_first_dropped = s;
    }
  }
  return info;
}

}  // namespace hkq
