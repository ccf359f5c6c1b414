#pragma once

#include <iosfwd>
#include <string>

#include "hkq/weightarith.hpp"

namespace hkq::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;

WeightTriple parse_triple(const std::string& s);
WeightQuad parse_quad(const std::string& s);
WeightMatrix parse_theta(const std::string& s);  // "p1,p2,p3;q1,q2,q3"

/// Entry point behind the `hkq` executable; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hkq::cli
