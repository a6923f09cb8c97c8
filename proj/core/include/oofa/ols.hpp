#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oofa/design.hpp"
#include "oofa/model_matrix.hpp"

namespace oofa {

struct Coefficient {
  std::string term;
  double estimate = 0.0;
};

/// Ordinary least-squares fit of one model family to one dataset.
///
/// Block covariates (sum-to-zero coded, one column per level but the last) follow
/// the model columns in both `coefficients` and `unscaled_covariance`. Evaluating a
/// prediction with the block columns set to zero gives the across-block average.
///
/// When the fit is saturated (df_error == 0) the dispersion-based fields stay empty.
struct FitResult {
  ModelSpec spec;
  int m = 0;
  std::vector<std::string> labels;        // component labels of the dataset
  std::vector<std::string> block_levels;  // empty when fitted without blocks
  int model_columns = 0;
  std::vector<Coefficient> coefficients;
  Eigen::MatrixXd unscaled_covariance;    // (X^T X)^{-1}
  double rss = 0.0;
  int n = 0;
  int p_effective = 0;
  int df_error = 0;
  std::optional<double> sigma2_hat;
  std::optional<double> rmse;
  std::optional<double> log_lik;
  std::optional<double> aic;
  std::optional<double> bic;
  std::vector<std::string> aliased;       // terms dropped under FitOptions::alias_dependent

  bool saturated() const noexcept { return df_error == 0; }

  /// Coefficients of the model columns only (block terms dropped).
  Eigen::VectorXd model_coefficients() const;

  /// Top-left model_columns square of unscaled_covariance.
  Eigen::MatrixXd model_covariance() const;
};

/// Sum-to-zero block covariates for `blocks`; `levels` receives the distinct labels in
/// first-appearance order. Two levels give a single ±1 column.
Eigen::MatrixXd block_columns(std::span<const std::string> blocks, std::vector<std::string>& levels);

struct FitOptions {
  /// Drop columns that depend on earlier ones instead of failing. Their coefficients
  /// and covariance entries are reported as zero, and df_error = n − rank.
  bool alias_dependent = false;
};

/// Least squares via a thin SVD. Throws EstimabilityError naming dependent columns
/// when the model plus block columns are rank deficient, unless aliasing is enabled.
FitResult ols_fit(const ModelSpec& spec, const Dataset& data, const FitOptions& options = {});

struct InformationCriteria {
  double log_lik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
};

/// Gaussian maximum likelihood with σ² counted as a parameter:
/// log L = −(n/2)(ln(2π RSS/n) + 1), AIC = −2 log L + 2(p+1), BIC = −2 log L + ln(n)(p+1).
InformationCriteria gaussian_information_criteria(int n, double rss, int p);

/// Throws SaturatedModelError when df_error == 0.
InformationCriteria information_criteria(const FitResult& fit);

/// exp(−I_k/2) normalized to sum to one, computed relative to min I_k.
std::vector<double> akaike_weights(std::span<const double> criteria);

}  // namespace oofa
