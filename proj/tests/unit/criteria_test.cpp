#include <gtest/gtest.h>

#include "oofa/criteria.hpp"
#include "oofa/error.hpp"
#include "test_support.hpp"

using namespace oofa;

namespace {

const std::vector<ModelSpec>& families() {
  static const std::vector<ModelSpec> specs{
      ModelSpec(Family::Pwo),
      ModelSpec(Family::TaperedPwo, Taper{TaperKind::InverseDistance}),
      ModelSpec(Family::TaperedPwo, Taper{TaperKind::Linear}),
      ModelSpec(Family::ComponentPosition),
      ModelSpec(Family::ResponseSurface2),
      ModelSpec(Family::ResponseSurface3),
      ModelSpec(Family::SpecialCubic),
      ModelSpec(Family::NearestNeighbour),
  };
  return specs;
}

std::vector<Permutation> estimable_runs(const ModelSpec& spec, int m, int n, std::mt19937_64& rng) {
  std::vector<Permutation> runs;
  do {
    runs = oofa::testing::random_runs(m, n, rng);
  } while (oofa::testing::rank_of(build_matrix(spec, runs).values) < parameter_count(spec, m));
  return runs;
}

}  // namespace

TEST(Criteria, ParseNames) {
  EXPECT_EQ(parse_criterion("apv"), CriterionKind::Apv);
  EXPECT_EQ(parse_criterion("avd"), CriterionKind::Apv);
  EXPECT_EQ(parse_criterion("d"), CriterionKind::D);
  EXPECT_THROW(parse_criterion("e"), ArgumentError);
  EXPECT_EQ(orientation_of(CriterionKind::D), Orientation::Maximize);
  EXPECT_EQ(oriented_value(CriterionKind::D, 4.0), 0.25);
  EXPECT_EQ(oriented_value(CriterionKind::Av, 4.0), 4.0);
}

TEST(Criteria, ApvFullFactorialFourComponents) {
  const auto runs = enumerate_permutations(4);
  EXPECT_NEAR(apv(ModelSpec(Family::Pwo), runs), 0.52174, 1e-4);
  EXPECT_NEAR(apv(ModelSpec(Family::TaperedPwo, Taper{}), runs), 0.52174, 1e-4);
  EXPECT_NEAR(apv(ModelSpec(Family::ComponentPosition), runs), 0.78261, 1e-4);
  EXPECT_NEAR(apv(ModelSpec(Family::ResponseSurface2), runs), 0.69565, 1e-4);
  EXPECT_NEAR(apv(ModelSpec(Family::NearestNeighbour), runs), 0.95652, 1e-4);
}

TEST(Criteria, ApvFullFactorialClosedForm) {
  for (int m = 3; m <= 4; ++m) {
    const auto runs = enumerate_permutations(m);
    const double w = static_cast<double>(runs.size());
    for (const auto& spec : families()) {
      const double p = parameter_count(spec, m);
      EXPECT_NEAR(apv(spec, runs), 2.0 * (p - 1.0) / (w - 1.0), 1e-10) << spec.name() << " m=" << m;
    }
  }
}

TEST(Criteria, AvFullFactorialPwo) {
  EXPECT_NEAR(av(ModelSpec(Family::Pwo), enumerate_permutations(3)), 4.0 / 6.0, 1e-12);
  EXPECT_NEAR(av(ModelSpec(Family::Pwo), enumerate_permutations(3), 2.0), 8.0 / 6.0, 1e-12);
}

TEST(Criteria, InterceptOnly) {
  const auto moments = compute_moment_matrices(Eigen::MatrixXd::Ones(6, 1));
  const Eigen::MatrixXd x = Eigen::MatrixXd::Ones(5, 1);
  EXPECT_NEAR(*criterion_value(CriterionKind::Apv, 1.0, x, moments), 0.0, 1e-15);
  EXPECT_NEAR(*criterion_value(CriterionKind::Av, 1.0, x, moments), 0.2, 1e-15);
  EXPECT_NEAR(*criterion_value(CriterionKind::A, 1.0, x, moments), 0.2, 1e-15);
  EXPECT_NEAR(*criterion_value(CriterionKind::D, 1.0, x, moments), 5.0, 1e-12);
}

TEST(Criteria, DuplicatingRunsHalvesAAndDoublesD) {
  std::mt19937_64 rng(41);
  for (const auto& spec : families()) {
    auto runs = estimable_runs(spec, 4, parameter_count(spec, 4) + 3, rng);
    const double a = a_criterion(spec, runs);
    const double d = d_criterion(spec, runs);
    const auto copy = runs;
    runs.insert(runs.end(), copy.begin(), copy.end());
    EXPECT_NEAR(a_criterion(spec, runs), a / 2.0, 1e-9 * a) << spec.name();
    EXPECT_NEAR(d_criterion(spec, runs), 2.0 * d, 1e-9 * d) << spec.name();
  }
}

TEST(Criteria, AddingARunNeverHurts) {
  std::mt19937_64 rng(42);
  for (const auto& spec : families()) {
    for (int t = 0; t < 5; ++t) {
      auto runs = estimable_runs(spec, 4, parameter_count(spec, 4) + 2, rng);
      double before[4];
      const CriterionKind kinds[] = {CriterionKind::Apv, CriterionKind::Av, CriterionKind::A, CriterionKind::D};
      for (int k = 0; k < 4; ++k) before[k] = evaluate_criterion(spec, CriterionSpec{kinds[k]}, runs);
      runs.push_back(oofa::testing::random_runs(4, 1, rng).front());
      for (int k = 0; k < 3; ++k) EXPECT_LE(evaluate_criterion(spec, CriterionSpec{kinds[k]}, runs), before[k] * (1 + 1e-12));
      EXPECT_GE(evaluate_criterion(spec, CriterionSpec{CriterionKind::D}, runs), before[3] * (1 - 1e-12));
      EXPECT_GE(before[0], 0.0);
      EXPECT_GT(before[1], 0.0);
    }
  }
}

TEST(Criteria, CachedMomentsMatchDirectEvaluation) {
  std::mt19937_64 rng(43);
  for (const auto& spec : families()) {
    const auto runs = estimable_runs(spec, 4, parameter_count(spec, 4) + 4, rng);
    const auto fresh = compute_moment_matrices(spec, 4);
    const Eigen::MatrixXd x = build_matrix(spec, runs).values;
    for (auto kind : {CriterionKind::Apv, CriterionKind::Av, CriterionKind::A, CriterionKind::D}) {
      const double cached = evaluate_criterion(spec, CriterionSpec{kind}, runs);
      const double direct = *criterion_value(kind, 1.0, x, fresh);
      EXPECT_NEAR(cached, direct, 1e-12 * std::max(1.0, std::abs(direct))) << spec.name();
    }
  }
}

TEST(Criteria, SingularDesignIsNotEstimable) {
  const std::vector<Permutation> runs(10, Permutation({1, 2, 3}));
  EXPECT_THROW(apv(ModelSpec(Family::Pwo), runs), EstimabilityError);
  const CriterionEvaluator eval(ModelSpec(Family::Pwo), CriterionSpec{}, 3);
  const std::vector<std::size_t> idx(10, 0);
  EXPECT_FALSE(eval.try_evaluate(idx));
  EXPECT_EQ(eval.candidate_count(), 6u);
  EXPECT_THROW(CriterionEvaluator(ModelSpec(Family::Pwo), CriterionSpec{CriterionKind::Apv, 0.0}, 3), ArgumentError);
}

TEST(Criteria, ApvAndAvInvariantButANotUnderReparameterization) {
  std::mt19937_64 rng(44);
  const ModelSpec rs2(Family::ResponseSurface2);
  const auto alt_moments = compute_moment_matrices(oofa::testing::rs2_alternative_matrix(enumerate_permutations(3)));
  const auto d1 = estimable_runs(rs2, 3, 8, rng);
  const auto d2 = estimable_runs(rs2, 3, 8, rng);
  const Eigen::MatrixXd x1 = oofa::testing::rs2_alternative_matrix(d1);
  const Eigen::MatrixXd x2 = oofa::testing::rs2_alternative_matrix(d2);
  EXPECT_NEAR(apv(rs2, d1), *criterion_value(CriterionKind::Apv, 1.0, x1, alt_moments), 1e-10);
  EXPECT_NEAR(av(rs2, d1), *criterion_value(CriterionKind::Av, 1.0, x1, alt_moments), 1e-10);
  const double a1 = a_criterion(rs2, d1);
  EXPECT_GT(std::abs(a1 - *criterion_value(CriterionKind::A, 1.0, x1, alt_moments)), 1e-6 * a1);
  const bool d_order = d_criterion(rs2, d1) > d_criterion(rs2, d2);
  const bool alt_order = *criterion_value(CriterionKind::D, 1.0, x1, alt_moments) >
                         *criterion_value(CriterionKind::D, 1.0, x2, alt_moments);
  EXPECT_EQ(d_order, alt_order);
}

TEST(OrthogonalCoding, GramBecomesScaledIdentity) {
  std::mt19937_64 rng(45);
  for (int m = 3; m <= 4; ++m) {
    const double w = static_cast<double>(factorial(m));
    for (const auto& spec : families()) {
      const auto coding = orthogonal_coding(spec, m);
      const Eigen::MatrixXd coded = coding.apply(full_factorial_matrix(spec, m).values);
      const Eigen::MatrixXd gram = coded.transpose() * coded;
      EXPECT_LT((gram - w * Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff(), 1e-8);

      const auto runs = estimable_runs(spec, m, 2 * parameter_count(spec, m), rng);
      const Eigen::MatrixXd x = coding.apply(build_matrix(spec, runs).values);
      const double trace = (x.transpose() * x).inverse().trace();
      EXPECT_NEAR(evaluate_criterion(spec, CriterionSpec{CriterionKind::Av, 1.0, true}, runs), trace, 1e-8 * trace);
    }
  }
}

TEST(OrthogonalCoding, OrthogonalColumnsGiveDiagonalFactor) {
  const auto coding = orthogonal_coding(ModelSpec(Family::Pwo), 2);
  const Eigen::MatrixXd off = coding.r.triangularView<Eigen::StrictlyUpper>();
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Compound, Examples) {
  const auto runs = enumerate_permutations(4);
  const CriterionSpec crit{CriterionKind::Apv};
  const ModelSpec pwo(Family::Pwo), rs2(Family::ResponseSurface2);
  EXPECT_NEAR(compound(CompoundSpec::equal_weights({pwo, rs2}, crit), runs), 0.60870, 1e-4);
  EXPECT_NEAR(compound(CompoundSpec::equal_weights({pwo}, crit), runs), apv(pwo, runs), 1e-15);
  EXPECT_NEAR(compound(CompoundSpec::equal_weights({pwo, pwo, pwo}, crit), runs), apv(pwo, runs), 1e-12);
  const CompoundSpec d_only{{{pwo, CriterionSpec{CriterionKind::D}, 1.0}}};
  EXPECT_NEAR(compound(d_only, runs), 1.0 / d_criterion(pwo, runs), 1e-12);
}

TEST(Compound, WeightsMustSumToOne) {
  const ModelSpec pwo(Family::Pwo);
  CompoundSpec spec{{{pwo, CriterionSpec{}, 0.5}, {pwo, CriterionSpec{}, 0.4}}};
  EXPECT_THROW(spec.validate(), ArgumentError);
  spec.members[1].weight = 0.5;
  EXPECT_NO_THROW(spec.validate());
  EXPECT_THROW(CompoundSpec{}.validate(), ArgumentError);
}
