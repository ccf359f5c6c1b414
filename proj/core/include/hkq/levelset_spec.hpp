#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hkq/weightarith.hpp"

namespace hkq {

enum class Family {
  Triple,   // H^7, Sp(1) x U(1)_p
  Quad,     // H^8, Sp(1) x U(1)_p
  Theta,    // H^7, Sp(1) x T^2_Theta
  Stiefel,  // H^7, Sp(1) only (the level set N without the abelian moment map)
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);  // throws InvalidArgument

struct Tolerances {
  double convergence = 1e-12;   // residual 2-norm
  int max_iterations = 200;
  double rank_relative = 1e-6;  // singular values below this * sigma_max are zero
  double infeasible = 1e-3;     // best multi-start residual above this => infeasible
};

/// Which quaternionic coordinates (0-based) the rotation blocks act on.
struct PairLayout {
  bool has_inert_first = true;  // u1 untouched by the abelian factor
  std::vector<std::pair<int, int>> pairs;
};

using WeightDatum = std::variant<std::monostate, WeightTriple, WeightQuad, WeightMatrix>;

class LevelSetSpec {
 public:
  static LevelSetSpec triple(const WeightTriple& p, Tolerances tol = {});
  static LevelSetSpec quad(const WeightQuad& p, Tolerances tol = {});
  static LevelSetSpec theta(const WeightMatrix& theta, Tolerances tol = {});
  static LevelSetSpec stiefel(Tolerances tol = {});

  Family family() const { return family_; }
  const WeightDatum& weights() const { return weights_; }
  int ambient_quaternionic_dim() const { return ambient_; }
  int ambient_real_dim() const { return 4 * ambient_; }
  const PairLayout& layout() const { return layout_; }
  const Tolerances& tolerances() const { return tol_; }
  Tolerances& tolerances() { return tol_; }

  /// Integer weight of each pair, one row per abelian generator (0, 1 or 2 rows).
  const std::vector<std::vector<Int>>& abelian_rows() const { return rows_; }
  int abelian_dim() const { return static_cast<int>(rows_.size()); }

  int constraint_count() const { return 1 + 9 + 3 * abelian_dim(); }
  int group_dim() const { return 3 + abelian_dim(); }
  int ambient_sphere_dim() const { return ambient_real_dim() - 1; }
  int level_set_dim() const { return ambient_sphere_dim() - (constraint_count() - 1); }
  int quotient_dim() const { return level_set_dim() - group_dim(); }

  /// "1,2,3" / "0,1,2,3" / "1,0,1;0,1,1" / "-".
  std::string weights_string() const;

 private:
  Family family_ = Family::Triple;
  WeightDatum weights_;
  int ambient_ = 7;
  PairLayout layout_;
  std::vector<std::vector<Int>> rows_;
  Tolerances tol_;
};

}  // namespace hkq
