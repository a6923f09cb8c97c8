#include "oofa/ols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oofa/error.hpp"
#include "oofa/linalg.hpp"

namespace oofa {

Eigen::VectorXd FitResult::model_coefficients() const {
  Eigen::VectorXd beta(model_columns);
  for (int j = 0; j < model_columns; ++j) beta(j) = coefficients[static_cast<std::size_t>(j)].estimate;
  return beta;
}

Eigen::MatrixXd FitResult::model_covariance() const {
  return unscaled_covariance.topLeftCorner(model_columns, model_columns);
}

Eigen::MatrixXd block_columns(std::span<const std::string> blocks, std::vector<std::string>& levels) {
  levels.clear();
  std::vector<std::size_t> code(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto it = std::find(levels.begin(), levels.end(), blocks[i]);
    if (it == levels.end()) {
      levels.push_back(blocks[i]);
      it = levels.end() - 1;
    }
    code[i] = static_cast<std::size_t>(it - levels.begin());
  }
  const auto k = levels.empty() ? 0 : static_cast<Eigen::Index>(levels.size() - 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(blocks.size()), k);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    if (static_cast<Eigen::Index>(code[i]) == k) {
      out.row(r).setConstant(-1.0);
    } else {
      out(r, static_cast<Eigen::Index>(code[i])) = 1.0;
    }
  }
  return out;
}

FitResult ols_fit(const ModelSpec& spec, const Dataset& data, const FitOptions& options) {
  data.validate();
  const auto model = build_matrix(spec, data.design.runs);

  FitResult fit;
  fit.spec = spec;
  fit.m = model.m;
  fit.labels = data.design.labels;
  fit.model_columns = static_cast<int>(model.cols());

  std::vector<std::string> terms = model.labels;
  Eigen::MatrixXd x = model.values;
  if (data.design.has_blocks()) {
    const Eigen::MatrixXd b = block_columns(data.design.blocks, fit.block_levels);
    if (b.cols() == 0) fit.block_levels.clear();
    for (Eigen::Index j = 0; j < b.cols(); ++j) terms.push_back("block_" + fit.block_levels[static_cast<std::size_t>(j)]);
    x.conservativeResize(Eigen::NoChange, x.cols() + b.cols());
    x.rightCols(b.cols()) = b;
  }

  const Eigen::Map<const Eigen::VectorXd> y(data.response.data(), static_cast<Eigen::Index>(data.response.size()));
  auto dec = linalg::decompose(x);
  std::vector<Eigen::Index> kept(static_cast<std::size_t>(x.cols()));
  std::iota(kept.begin(), kept.end(), Eigen::Index{0});
  if (!dec.full_column_rank()) {
    const auto dependent = linalg::dependent_columns(x);
    std::vector<std::string> names;
    for (int j : dependent) names.push_back(terms[static_cast<std::size_t>(j)]);
    if (!options.alias_dependent) {
      std::string msg = spec.name() + " is not estimable on this design (rank " + std::to_string(dec.rank) + " < " +
                        std::to_string(x.cols()) + " columns); dependent terms:";
      for (const auto& t : names) msg += " " + t;
      throw EstimabilityError(msg, names);
    }
    fit.aliased = names;
    std::erase_if(kept, [&](Eigen::Index j) { return std::find(dependent.begin(), dependent.end(), j) != dependent.end(); });
    dec = linalg::decompose(x(Eigen::all, kept));
    if (!dec.full_column_rank()) throw EstimabilityError(spec.name() + ": aliasing left a rank-deficient matrix", names);
  }

  const Eigen::VectorXd reduced = linalg::solve(dec, y);
  const Eigen::MatrixXd reduced_cov = linalg::gram_inverse(dec);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  fit.unscaled_covariance = Eigen::MatrixXd::Zero(x.cols(), x.cols());
  for (std::size_t a = 0; a < kept.size(); ++a) {
    beta(kept[a]) = reduced(static_cast<Eigen::Index>(a));
    for (std::size_t b = 0; b < kept.size(); ++b) {
      fit.unscaled_covariance(kept[a], kept[b]) = reduced_cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  fit.coefficients.reserve(terms.size());
  for (std::size_t j = 0; j < terms.size(); ++j) fit.coefficients.push_back({terms[j], beta(static_cast<Eigen::Index>(j))});
  fit.rss = (y - x * beta).squaredNorm();
  fit.n = static_cast<int>(x.rows());
  fit.p_effective = dec.rank;
  fit.df_error = fit.n - fit.p_effective;
  if (!fit.saturated()) {
    fit.sigma2_hat = fit.rss / fit.df_error;
    fit.rmse = std::sqrt(*fit.sigma2_hat);
    const auto ic = gaussian_information_criteria(fit.n, fit.rss, fit.p_effective);
    fit.log_lik = ic.log_lik;
    fit.aic = ic.aic;
    fit.bic = ic.bic;
  }
  return fit;
}

InformationCriteria gaussian_information_criteria(int n, double rss, int p) {
  const double nd = n;
  InformationCriteria ic;
  ic.log_lik = -(nd / 2.0) * (std::log(2.0 * std::numbers::pi * rss / nd) + 1.0);
  ic.aic = -2.0 * ic.log_lik + 2.0 * (p + 1);
  ic.bic = -2.0 * ic.log_lik + std::log(nd) * (p + 1);
  return ic;
}

InformationCriteria information_criteria(const FitResult& fit) {
  if (fit.saturated()) {
    throw SaturatedModelError(fit.spec.name() + " is saturated (0 error d.f.); AIC and BIC are unavailable");
  }
  return gaussian_information_criteria(fit.n, fit.rss, fit.p_effective);
}

std::vector<double> akaike_weights(std::span<const double> criteria) {
  if (criteria.empty()) throw ArgumentError("Akaike weights need at least one criterion value");
  for (double c : criteria) {
    if (!std::isfinite(c)) throw ArgumentError("information criteria must be finite");
  }
  const double best = *std::min_element(criteria.begin(), criteria.end());
  std::vector<double> w(criteria.size());
  double total = 0.0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    w[k] = std::exp(-(criteria[k] - best) / 2.0);
    total += w[k];
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace oofa
