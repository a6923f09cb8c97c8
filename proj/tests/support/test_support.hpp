#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oofa/design.hpp"
#include "oofa/model_matrix.hpp"

namespace oofa::testing {

std::string data_path(const std::string& name);

/// Second-order RS with all m linear terms and pairs c <= m-2, d > c; no intercept.
Eigen::MatrixXd rs2_alternative_matrix(std::span<const Permutation> runs);

/// m=4 full factorial with permutation parity as a two-level block.
Design parity_block_design();

/// m=5, 40 runs: a 20-run cyclic component orthogonal array (block "1") and the same
/// runs with positions reordered by (2,1,3,5,4) (block "2").
Design coa_block_design();

std::vector<Permutation> random_runs(int m, int n, std::mt19937_64& rng);
std::vector<double> random_response(std::size_t n, std::mt19937_64& rng);

/// Least squares through the normal equations with a full-pivot LU; a check on the SVD path.
Eigen::VectorXd normal_equations(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

int rank_of(const Eigen::MatrixXd& x);

}  // namespace oofa::testing
