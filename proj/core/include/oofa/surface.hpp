#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oofa/ols.hpp"
#include "oofa/ranking.hpp"

namespace oofa {

/// Fitted second-order response surface for three components, drawn in the
/// (p_1, p_2) plane with p_3 = 1 − p_1 − p_2.
struct SurfacePoint {
  double p1 = 0.0;
  double p2 = 0.0;
  double eta = 0.0;
  std::optional<Permutation> order;  // set for the m! order points
  bool argmax = false;
};

struct SurfaceGrid {
  std::vector<std::string> labels;
  std::vector<SurfacePoint> grid;    // grid x grid points, p1 outer, p2 inner
  std::vector<SurfacePoint> orders;  // the 6 feasible orders, lexicographic
};

/// Standardized positions span [1/6, 1/2] at m = 3; `grid` points per axis cover that
/// range inclusive. Throws ArgumentError unless the fit is RS2 at m = 3 and grid >= 2.
/// The best order point (per `direction`) is flagged argmax.
SurfaceGrid rs2_surface(const FitResult& fit, int grid, Direction direction = Direction::Maximize);

}  // namespace oofa
