#include "oofa/criteria.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "oofa/error.hpp"
#include "oofa/linalg.hpp"

namespace oofa {
namespace {

std::shared_ptr<const MomentMatrices> coded_moments(const ModelSpec& spec, int m) {
  const auto plain = moment_matrices(spec, m);
  const auto coding = orthogonal_coding(spec, m);
  return std::make_shared<const MomentMatrices>(compute_moment_matrices(coding.apply(plain->candidates)));
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& candidates, std::span<const std::size_t> idx) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(idx.size()), candidates.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = candidates.row(static_cast<Eigen::Index>(idx[i]));
  }
  return x;
}

}  // namespace

CriterionKind parse_criterion(std::string_view text) {
  if (text == "apv" || text == "avd") return CriterionKind::Apv;
  if (text == "av") return CriterionKind::Av;
  if (text == "a") return CriterionKind::A;
  if (text == "d") return CriterionKind::D;
  throw ArgumentError("unknown criterion '" + std::string(text) + "' (expected apv, av, a or d)");
}

std::string criterion_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::Apv: return "apv";
    case CriterionKind::Av: return "av";
    case CriterionKind::A: return "a";
    case CriterionKind::D: return "d";
  }
  return "?";
}

Orientation orientation_of(CriterionKind kind) {
  return kind == CriterionKind::D ? Orientation::Maximize : Orientation::Minimize;
}

double oriented_value(CriterionKind kind, double value) { return kind == CriterionKind::D ? 1.0 / value : value; }

MomentMatrices compute_moment_matrices(const Eigen::MatrixXd& candidates) {
  MomentMatrices mm;
  mm.w = static_cast<std::size_t>(candidates.rows());
  mm.candidates = candidates;
  mm.gram = candidates.transpose() * candidates;
  const Eigen::VectorXd sums = candidates.colwise().sum().transpose();
  mm.centered = mm.gram - sums * sums.transpose() / static_cast<double>(mm.w);
  return mm;
}

MomentMatrices compute_moment_matrices(const ModelSpec& spec, int m) {
  auto mm = compute_moment_matrices(full_factorial_matrix(spec, m).values);
  mm.m = m;
  return mm;
}

std::shared_ptr<const MomentMatrices> moment_matrices(const ModelSpec& spec, int m) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const MomentMatrices>> cache;
  const auto key = std::make_pair(spec.name(), m);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const MomentMatrices>(compute_moment_matrices(spec, m));
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(built)).first->second;
}

Eigen::MatrixXd OrthogonalCoding::apply(const Eigen::MatrixXd& rows) const {
  // rows * R^{-1}: solve R^T Z^T = rows^T.
  const Eigen::MatrixXd zt = r.transpose().triangularView<Eigen::Lower>().solve(rows.transpose());
  return zt.transpose() * std::sqrt(w);
}

OrthogonalCoding orthogonal_coding(const ModelSpec& spec, int m) {
  const auto mm = moment_matrices(spec, m);
  if (linalg::numerical_rank(mm->candidates) < mm->candidates.cols()) {
    throw EstimabilityError(spec.name() + " full-factorial matrix is rank deficient; no orthogonal coding", {});
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mm->gram);
  if (llt.info() != Eigen::Success) throw EstimabilityError("Cholesky factorization of X_f^T X_f failed", {});
  return {llt.matrixU(), static_cast<double>(mm->w)};
}

std::optional<double> criterion_value(CriterionKind kind, double sigma2, const Eigen::MatrixXd& x,
                                      const MomentMatrices& moments) {
  const auto dec = linalg::decompose(x);
  if (!dec.full_column_rank()) return std::nullopt;
  const double p = static_cast<double>(x.cols());
  switch (kind) {
    case CriterionKind::D: {
      const double log_det = 2.0 * dec.s.array().log().sum();
      return sigma2 * std::exp(log_det / p);
    }
    case CriterionKind::A:
      return sigma2 / p * linalg::gram_inverse(dec).trace();
    case CriterionKind::Av: {
      const double w = static_cast<double>(moments.w);
      return sigma2 / w * (linalg::gram_inverse(dec) * moments.gram).trace();
    }
    case CriterionKind::Apv: {
      const double w = static_cast<double>(moments.w);
      return 2.0 * sigma2 / (w - 1.0) * (linalg::gram_inverse(dec) * moments.centered).trace();
    }
  }
  return std::nullopt;
}

CriterionEvaluator::CriterionEvaluator(ModelSpec model, CriterionSpec criterion, int m)
    : model_(std::move(model)), criterion_(criterion), m_(m) {
  if (!(criterion_.sigma2 > 0.0)) throw ArgumentError("sigma2 must be positive");
  moments_ = criterion_.orthogonal_coding ? coded_moments(model_, m_) : moment_matrices(model_, m_);
}

std::optional<double> CriterionEvaluator::try_evaluate(std::span<const std::size_t> candidates) const {
  return criterion_value(criterion_.kind, criterion_.sigma2, gather_rows(moments_->candidates, candidates), *moments_);
}

double CriterionEvaluator::evaluate(std::span<const Permutation> design) const {
  std::vector<std::size_t> idx;
  idx.reserve(design.size());
  for (const auto& run : design) {
    if (run.size() != m_) throw ArgumentError("design mixes run lengths");
    idx.push_back(lexicographic_index(run));
  }
  const auto value = try_evaluate(idx);
  if (!value) {
    throw EstimabilityError(model_.name() + " is not estimable on this design (" + std::to_string(design.size()) +
                                " runs, " + std::to_string(moments_->candidates.cols()) + " parameters)",
                            {});
  }
  return *value;
}

double evaluate_criterion(const ModelSpec& model, const CriterionSpec& criterion, std::span<const Permutation> design) {
  if (design.empty()) throw ArgumentError("design has no runs");
  return CriterionEvaluator(model, criterion, design.front().size()).evaluate(design);
}

double apv(const ModelSpec& model, std::span<const Permutation> design, double sigma2) {
  return evaluate_criterion(model, {CriterionKind::Apv, sigma2, false}, design);
}

double av(const ModelSpec& model, std::span<const Permutation> design, double sigma2) {
  return evaluate_criterion(model, {CriterionKind::Av, sigma2, false}, design);
}

double a_criterion(const ModelSpec& model, std::span<const Permutation> design, double sigma2) {
  return evaluate_criterion(model, {CriterionKind::A, sigma2, false}, design);
}

double d_criterion(const ModelSpec& model, std::span<const Permutation> design, double sigma2) {
  return evaluate_criterion(model, {CriterionKind::D, sigma2, false}, design);
}

CompoundSpec CompoundSpec::equal_weights(const std::vector<ModelSpec>& models, const CriterionSpec& criterion) {
  CompoundSpec spec;
  for (const auto& m : models) spec.members.push_back({m, criterion, 1.0 / static_cast<double>(models.size())});
  return spec;
}

void CompoundSpec::validate() const {
  if (members.empty()) throw ArgumentError("compound criterion needs at least one model");
  double total = 0.0;
  for (const auto& member : members) {
    if (!(member.weight >= 0.0)) throw ArgumentError("compound weights must be non-negative");
    if (!(member.criterion.sigma2 > 0.0)) throw ArgumentError("sigma2 must be positive");
    total += member.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ArgumentError("compound weights sum to " + std::to_string(total) + ", not 1");
}

double compound(const CompoundSpec& spec, std::span<const Permutation> design) {
  spec.validate();
  double total = 0.0;
  for (const auto& member : spec.members) {
    total += member.weight * oriented_value(member.criterion.kind, evaluate_criterion(member.model, member.criterion, design));
  }
  return total;
}

}  // namespace oofa
