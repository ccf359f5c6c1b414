#pragma once

#include <cstdint>
#include <vector>

#include "hkq/algebra.hpp"
#include "hkq/momentmaps.hpp"

namespace hkq::detail {

ImaginaryQuaternion nu_octonionic_unchecked(const QuaternionVector& u,
                                            const MultiplicationConvention& conv);

/// Largest relative componentwise gap between the two ν evaluations; returns
/// early once it exceeds `stop_above`.
double nu_deviation(const MultiplicationConvention& conv, const std::vector<QuaternionVector>& pts,
                    double stop_above);

std::vector<QuaternionVector> random_points7(int samples, std::uint64_t seed);

}  // namespace hkq::detail
