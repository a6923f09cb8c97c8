#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oofa/ols.hpp"
#include "oofa/ranking.hpp"

namespace oofa {

/// Fits of several models to one dataset, with their averaging weights.
struct CandidateSet {
  std::vector<FitResult> fits;
  std::vector<double> weights;

  /// Akaike weights from each fit's AIC. Saturated fits have no AIC and get weight 0.
  /// Throws ArgumentError when every fit is saturated.
  static CandidateSet with_akaike_weights(std::vector<FitResult> fits);

  /// Throws ArgumentError for mismatched sizes, negative weights, a weight sum off one
  /// by more than 1e-9, or fits that do not come from the same dataset shape.
  void validate() const;
};

/// Per-model inputs to the average: predictions over all m! orders and their
/// conditional variances (empty when unknown, which only a zero weight tolerates).
struct ModelPredictions {
  std::string model;
  double weight = 0.0;
  std::vector<double> estimates;
  std::optional<std::vector<double>> variances;
  std::vector<int> ranks;
};

struct AveragedPrediction {
  int m = 0;
  std::vector<std::string> labels;
  std::vector<Permutation> orders;  // lexicographic
  std::vector<ModelPredictions> models;
  std::vector<double> estimate;
  std::vector<double> variance;
  std::vector<int> rank;

  double se(std::size_t i) const;
};

/// Weighted mean of the model predictions, with the unconditional variance
/// {Σ_k w_k sqrt(var_k + (η̂_k − η̂)²)}² per order.
AveragedPrediction combine_predictions(std::vector<ModelPredictions> models, std::vector<Permutation> orders,
                                       Direction direction = Direction::Maximize);

/// predict_all() for each fit, then combine_predictions().
AveragedPrediction average_predictions(const CandidateSet& set, Direction direction = Direction::Maximize);

/// Mean of the averaged-prediction variances over all orders.
double average_variance_summary(const AveragedPrediction& pred);

}  // namespace oofa
