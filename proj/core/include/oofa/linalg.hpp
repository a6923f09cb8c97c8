#pragma once

#include <vector>

#include <Eigen/Dense>

namespace oofa::linalg {

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Thin SVD X = U diag(s) V^T together with its numerical rank.
struct Decomposition {
  Eigen::MatrixXd u;
  Eigen::VectorXd s;
  Eigen::MatrixXd v;
  int rank = 0;

  bool full_column_rank() const noexcept { return rank == static_cast<int>(v.cols()); }
};

Decomposition decompose(const Eigen::MatrixXd& x);

int numerical_rank(const Eigen::MatrixXd& x);

/// Columns that add nothing to the span of the columns before them.
std::vector<int> dependent_columns(const Eigen::MatrixXd& x);

/// Least-squares coefficients for a full-column-rank decomposition.
Eigen::VectorXd solve(const Decomposition& d, const Eigen::VectorXd& y);

/// (X^T X)^{-1} = V diag(s^-2) V^T for a full-column-rank decomposition.
Eigen::MatrixXd gram_inverse(const Decomposition& d);

}  // namespace oofa::linalg
