#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "oofa/model_matrix.hpp"
#include "oofa/permutation.hpp"

namespace oofa {

enum class CriterionKind {
  Apv,  // average variance of pairwise differences of predictions over all m! orders
  Av,   // average prediction variance over all m! orders (I-optimality)
  A,    // (σ²/p) trace (X^T X)^{-1}
  D,    // σ² |X^T X|^{1/p}
};

enum class Orientation { Minimize, Maximize };

struct CriterionSpec {
  CriterionKind kind = CriterionKind::Apv;
  double sigma2 = 1.0;
  bool orthogonal_coding = false;
};

CriterionKind parse_criterion(std::string_view text);
std::string criterion_name(CriterionKind kind);
Orientation orientation_of(CriterionKind kind);

/// Criterion turned into a smaller-is-better quantity: D becomes 1/D, the rest pass through.
double oriented_value(CriterionKind kind, double value);

/// Design-independent pieces of the criteria for one model at one m.
struct MomentMatrices {
  int m = 0;
  std::size_t w = 0;               // m!
  Eigen::MatrixXd candidates;      // X_f, one row per order, lexicographic
  Eigen::MatrixXd gram;            // X_f^T X_f
  Eigen::MatrixXd centered;        // X_f^T (I - J/w) X_f
};

MomentMatrices compute_moment_matrices(const Eigen::MatrixXd& candidates);
MomentMatrices compute_moment_matrices(const ModelSpec& spec, int m);

/// Shared, lazily built moment matrices. Safe to call from several threads.
std::shared_ptr<const MomentMatrices> moment_matrices(const ModelSpec& spec, int m);

/// Re-coding x ↦ x R^{-1} sqrt(w) with X_f^T X_f = R^T R, which makes the coded
/// full-factorial Gram matrix w·I.
struct OrthogonalCoding {
  Eigen::MatrixXd r;  // upper triangular
  double w = 0.0;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& rows) const;
};

/// Throws EstimabilityError if X_f lacks full column rank.
OrthogonalCoding orthogonal_coding(const ModelSpec& spec, int m);

/// Criterion value for a design matrix `x` against precomputed moments.
/// Returns nullopt when `x` lacks full column rank.
std::optional<double> criterion_value(CriterionKind kind, double sigma2, const Eigen::MatrixXd& x,
                                      const MomentMatrices& moments);

/// Evaluates one criterion for one model on designs given as rows of X_f.
class CriterionEvaluator {
 public:
  CriterionEvaluator(ModelSpec model, CriterionSpec criterion, int m);

  const ModelSpec& model() const noexcept { return model_; }
  const CriterionSpec& criterion() const noexcept { return criterion_; }
  std::size_t candidate_count() const noexcept { return moments_->w; }

  /// Design given as lexicographic candidate indices; nullopt when not estimable.
  std::optional<double> try_evaluate(std::span<const std::size_t> candidates) const;

  /// Throws EstimabilityError when the model is not estimable on `design`.
  double evaluate(std::span<const Permutation> design) const;

 private:
  ModelSpec model_;
  CriterionSpec criterion_;
  int m_ = 0;
  std::shared_ptr<const MomentMatrices> moments_;  // coded when criterion_.orthogonal_coding
};

double evaluate_criterion(const ModelSpec& model, const CriterionSpec& criterion, std::span<const Permutation> design);

double apv(const ModelSpec& model, std::span<const Permutation> design, double sigma2 = 1.0);
double av(const ModelSpec& model, std::span<const Permutation> design, double sigma2 = 1.0);
double a_criterion(const ModelSpec& model, std::span<const Permutation> design, double sigma2 = 1.0);
double d_criterion(const ModelSpec& model, std::span<const Permutation> design, double sigma2 = 1.0);

struct CompoundMember {
  ModelSpec model;
  CriterionSpec criterion;
  double weight = 1.0;
};

/// Σ_k a_k Ψ_k over candidate models, each Ψ_k oriented so smaller is better.
struct CompoundSpec {
  std::vector<CompoundMember> members;

  /// a_k = 1/K for every model.
  static CompoundSpec equal_weights(const std::vector<ModelSpec>& models, const CriterionSpec& criterion);

  /// Throws ArgumentError on an empty set, a negative weight or weights not summing to one.
  void validate() const;
};

/// Throws EstimabilityError naming the first member model that is not estimable.
double compound(const CompoundSpec& spec, std::span<const Permutation> design);

}  // namespace oofa
