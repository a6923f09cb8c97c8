#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oofa/ols.hpp"
#include "oofa/permutation.hpp"

namespace oofa {

/// Which end of the response scale is "best". The default looks for the largest response.
enum class Direction { Maximize, Minimize };

struct PredictionRow {
  Permutation order;
  double estimate = 0.0;
  std::optional<double> se;  // empty for saturated fits
  int rank = 0;              // 1 = best
};

/// Predictions for every one of the m! orders. `rows` are kept in lexicographic order;
/// use top_k() for the ranked view.
struct PredictionTable {
  int m = 0;
  std::vector<std::string> labels;
  std::string model;
  std::vector<PredictionRow> rows;
};

/// Ranks 1..n, best first. Equal values keep their input order.
std::vector<int> rank_values(std::span<const double> values, Direction direction = Direction::Maximize);

/// η̂_f = X_f β̂ over all orders with block covariates at zero, and the conditional
/// standard errors sqrt(x (X^T X)^{-1} x^T σ̂²).
PredictionTable predict_all(const FitResult& fit, Direction direction = Direction::Maximize);

/// The k best rows in rank order. Throws ArgumentError unless 1 <= k <= m!.
PredictionTable top_k(const PredictionTable& table, std::size_t k);

}  // namespace oofa
