#include "oofa/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oofa/error.hpp"

namespace oofa {

std::vector<int> rank_values(std::span<const double> values, Direction direction) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return direction == Direction::Maximize ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<int> rank(values.size());
  for (std::size_t k = 0; k < idx.size(); ++k) rank[idx[k]] = static_cast<int>(k + 1);
  return rank;
}

PredictionTable predict_all(const FitResult& fit, Direction direction) {
  const auto orders = enumerate_permutations(fit.m);
  const auto xf = build_matrix(fit.spec, orders).values;
  if (xf.cols() != fit.model_columns) {
    throw ArgumentError("fit has " + std::to_string(fit.model_columns) + " model columns but " + fit.spec.name() +
                        " at m=" + std::to_string(fit.m) + " has " + std::to_string(xf.cols()));
  }
  const Eigen::VectorXd estimates = xf * fit.model_coefficients();
  const Eigen::MatrixXd cov = fit.model_covariance();

  PredictionTable table;
  table.m = fit.m;
  table.labels = fit.labels;
  table.model = fit.spec.name();
  const auto ranks = rank_values(std::span<const double>(estimates.data(), static_cast<std::size_t>(estimates.size())),
                                 direction);
  table.rows.reserve(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    PredictionRow row{orders[i], estimates(r), std::nullopt, ranks[i]};
    if (fit.sigma2_hat) {
      const double v = xf.row(r) * cov * xf.row(r).transpose();
      row.se = std::sqrt(std::max(v, 0.0) * *fit.sigma2_hat);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

PredictionTable top_k(const PredictionTable& table, std::size_t k) {
  if (k < 1 || k > table.rows.size()) {
    throw ArgumentError("top-k needs 1 <= k <= " + std::to_string(table.rows.size()) + " (got " + std::to_string(k) + ")");
  }
  PredictionTable out{table.m, table.labels, table.model, {}};
  out.rows = table.rows;
  std::sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
  out.rows.erase(out.rows.begin() + static_cast<std::ptrdiff_t>(k), out.rows.end());
  return out;
}

}  // namespace oofa
