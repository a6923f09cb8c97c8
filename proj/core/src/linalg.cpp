#include "oofa/linalg.hpp"

namespace oofa::linalg {

Decomposition decompose(const Eigen::MatrixXd& x) {
  Decomposition d;
  if (x.cols() == 0 || x.rows() == 0) {
    d.v = Eigen::MatrixXd::Identity(x.cols(), x.cols());
    d.u = Eigen::MatrixXd::Zero(x.rows(), 0);
    d.s = Eigen::VectorXd::Zero(0);
    return d;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  d.u = svd.matrixU();
  d.s = svd.singularValues();
  d.v = svd.matrixV();
  const double largest = d.s.size() > 0 ? d.s(0) : 0.0;
  const double cutoff = kRankTolerance * largest;
  for (Eigen::Index i = 0; i < d.s.size(); ++i) {
    if (d.s(i) > cutoff && d.s(i) > 0.0) ++d.rank;
  }
  // A tall-thin SVD has min(n, p) singular values; when n < p the missing ones are zeros,
  // and V only has n columns, so pad V to keep `full_column_rank` honest.
  if (d.v.cols() < x.cols()) {
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(x.cols(), x.cols());
    padded.leftCols(d.v.cols()) = d.v;
    d.v = padded;
  }
  return d;
}

int numerical_rank(const Eigen::MatrixXd& x) { return decompose(x).rank; }

std::vector<int> dependent_columns(const Eigen::MatrixXd& x) {
  std::vector<int> dependent;
  std::vector<Eigen::Index> kept;
  const double scale = x.cols() > 0 ? decompose(x).s.maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Eigen::MatrixXd trial(x.rows(), static_cast<Eigen::Index>(kept.size()) + 1);
    for (std::size_t k = 0; k < kept.size(); ++k) trial.col(static_cast<Eigen::Index>(k)) = x.col(kept[k]);
    trial.col(trial.cols() - 1) = x.col(j);
    // Same tolerance as decompose(), but measured against the whole matrix so a
    // tiny leading column cannot hide a dependency.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(trial);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > kRankTolerance * scale) ++r;
    }
    if (r == trial.cols()) {
      kept.push_back(j);
    } else {
      dependent.push_back(static_cast<int>(j));
    }
  }
  return dependent;
}

Eigen::VectorXd solve(const Decomposition& d, const Eigen::VectorXd& y) {
  const Eigen::VectorXd uty = d.u.transpose() * y;
  return d.v.leftCols(d.s.size()) * (uty.array() / d.s.array()).matrix();
}

Eigen::MatrixXd gram_inverse(const Decomposition& d) {
  const Eigen::MatrixXd scaled = d.v.leftCols(d.s.size()) * d.s.cwiseInverse().asDiagonal();
  return scaled * scaled.transpose();
}

}  // namespace oofa::linalg
