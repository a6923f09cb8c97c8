#include "oofa/surface.hpp"

#include <array>

#include "oofa/error.hpp"

namespace oofa {

SurfaceGrid rs2_surface(const FitResult& fit, int grid, Direction direction) {
  if (fit.spec.family() != Family::ResponseSurface2 || fit.m != 3) {
    throw ArgumentError("surface grids are defined for the rs2 model with m=3 only");
  }
  if (grid < 2) throw ArgumentError("surface grid needs at least 2 points per axis");

  const Eigen::VectorXd beta = fit.model_coefficients();
  Eigen::RowVectorXd row(beta.size());
  auto eta = [&](double p1, double p2) {
    const std::array<double, 3> p{p1, p2, 1.0 - p1 - p2};
    response_surface_row(fit.spec, p, row);
    return row.dot(beta);
  };

  SurfaceGrid out;
  out.labels = fit.labels;
  constexpr double lo = 1.0 / 6.0;
  constexpr double hi = 0.5;
  for (int i = 0; i < grid; ++i) {
    const double p1 = lo + (hi - lo) * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double p2 = lo + (hi - lo) * j / (grid - 1);
      out.grid.push_back({p1, p2, eta(p1, p2), std::nullopt, false});
    }
  }

  const auto table = predict_all(fit, direction);
  for (const auto& r : table.rows) {
    const auto p = standardize(r.order);
    out.orders.push_back({p[1], p[2], r.estimate, r.order, r.rank == 1});
  }
  return out;
}

}  // namespace oofa
