#include "oofa/averaging.hpp"

#include <cmath>
#include <numeric>

#include "oofa/error.hpp"

namespace oofa {
namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_weights(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("model weights must be finite and non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw ArgumentError("model weights sum to " + std::to_string(total) + ", not 1");
  }
}

}  // namespace

CandidateSet CandidateSet::with_akaike_weights(std::vector<FitResult> fits) {
  std::vector<double> aic;
  for (const auto& f : fits) {
    if (f.aic) aic.push_back(*f.aic);
  }
  if (aic.empty()) throw ArgumentError("no candidate model has an AIC (all are saturated)");
  const auto w = akaike_weights(aic);
  CandidateSet set;
  std::size_t next = 0;
  for (const auto& f : fits) set.weights.push_back(f.aic ? w[next++] : 0.0);
  set.fits = std::move(fits);
  return set;
}

void CandidateSet::validate() const {
  if (fits.empty()) throw ArgumentError("candidate set is empty");
  if (weights.size() != fits.size()) {
    throw ArgumentError(std::to_string(weights.size()) + " weights for " + std::to_string(fits.size()) + " models");
  }
  check_weights(weights);
  for (const auto& f : fits) {
    if (f.m != fits.front().m || f.n != fits.front().n) {
      throw ArgumentError("candidate fits must come from the same dataset");
    }
  }
}

double AveragedPrediction::se(std::size_t i) const { return std::sqrt(variance.at(i)); }

AveragedPrediction combine_predictions(std::vector<ModelPredictions> models, std::vector<Permutation> orders,
                                       Direction direction) {
  if (models.empty()) throw ArgumentError("nothing to average");
  const std::size_t w = orders.size();
  std::vector<double> weights;
  for (const auto& mp : models) {
    if (mp.estimates.size() != w) throw ArgumentError("model " + mp.model + " does not cover every order");
    if (mp.weight > 0.0 && (!mp.variances || mp.variances->size() != w)) {
      throw ArgumentError("model " + mp.model + " has positive weight but no prediction variance (saturated fit?)");
    }
    weights.push_back(mp.weight);
  }
  check_weights(weights);

  AveragedPrediction out;
  out.m = orders.empty() ? 0 : orders.front().size();
  out.estimate.assign(w, 0.0);
  out.variance.assign(w, 0.0);
  for (std::size_t i = 0; i < w; ++i) {
    double eta = 0.0;
    for (const auto& mp : models) eta += mp.weight * mp.estimates[i];
    double spread = 0.0;
    for (const auto& mp : models) {
      if (mp.weight == 0.0) continue;
      const double dev = mp.estimates[i] - eta;
      spread += mp.weight * std::sqrt((*mp.variances)[i] + dev * dev);
    }
    out.estimate[i] = eta;
    out.variance[i] = spread * spread;
  }
  out.rank = rank_values(out.estimate, direction);
  for (auto& mp : models) {
    if (mp.ranks.size() != w) mp.ranks = rank_values(mp.estimates, direction);
  }
  out.models = std::move(models);
  out.orders = std::move(orders);
  return out;
}

AveragedPrediction average_predictions(const CandidateSet& set, Direction direction) {
  set.validate();
  std::vector<ModelPredictions> models;
  std::vector<Permutation> orders;
  for (std::size_t k = 0; k < set.fits.size(); ++k) {
    const auto table = predict_all(set.fits[k], direction);
    ModelPredictions mp;
    mp.model = table.model;
    mp.weight = set.weights[k];
    std::vector<double> var;
    for (const auto& row : table.rows) {
      mp.estimates.push_back(row.estimate);
      mp.ranks.push_back(row.rank);
      if (row.se) var.push_back(*row.se * *row.se);
    }
    if (var.size() == table.rows.size()) mp.variances = std::move(var);
    if (orders.empty()) {
      for (const auto& row : table.rows) orders.push_back(row.order);
    }
    models.push_back(std::move(mp));
  }
  auto out = combine_predictions(std::move(models), std::move(orders), direction);
  out.labels = set.fits.front().labels;
  return out;
}

double average_variance_summary(const AveragedPrediction& pred) {
  if (pred.variance.empty()) throw ArgumentError("empty prediction");
  return std::accumulate(pred.variance.begin(), pred.variance.end(), 0.0) / static_cast<double>(pred.variance.size());
}

}  // namespace oofa
