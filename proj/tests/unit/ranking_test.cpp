#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oofa/error.hpp"
#include "oofa/io.hpp"
#include "oofa/ranking.hpp"
#include "test_support.hpp"

using namespace oofa;

namespace {

Dataset three_drug() {
  std::ifstream in(oofa::testing::data_path("three_drug.csv"));
  return io::read_dataset(in);
}

Dataset random_dataset(int m, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Design design;
  design.runs = oofa::testing::random_runs(m, n, rng);
  return Dataset{design, oofa::testing::random_response(static_cast<std::size_t>(n), rng)};
}

}  // namespace

TEST(RankValues, BestFirstWithStableTies) {
  const std::vector<double> v{3.0, 5.0, 3.0, 1.0};
  EXPECT_EQ(rank_values(v), (std::vector<int>{2, 1, 3, 4}));
  EXPECT_EQ(rank_values(v, Direction::Minimize), (std::vector<int>{2, 4, 3, 1}));
  const std::vector<double> flat(4, 2.0);
  EXPECT_EQ(rank_values(flat), (std::vector<int>{1, 2, 3, 4}));
}

TEST(PredictAll, CoversEveryOrderLexicographically) {
  const auto table = predict_all(ols_fit(ModelSpec(Family::Pwo), three_drug()));
  ASSERT_EQ(table.rows.size(), 6u);
  const auto orders = enumerate_permutations(3);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(table.rows[i].order, orders[i]);
    ASSERT_TRUE(table.rows[i].se);
    EXPECT_GT(*table.rows[i].se, 0.0);
  }
  EXPECT_EQ(table.labels, (std::vector<std::string>{"A", "B", "C"}));
}

TEST(PredictAll, ResponseSurfaceBestOrderMatchesOracle) {
  std::ifstream fixture(oofa::testing::data_path("three_drug_oracle.json"));
  const auto oracle = nlohmann::json::parse(fixture);
  const auto table = predict_all(ols_fit(ModelSpec(Family::ResponseSurface2), three_drug()));
  const auto best = top_k(table, 1);
  for (const auto& m : oracle.at("models")) {
    if (m.at("model") != "rs2") continue;
    const auto ranks = m.at("ranks").get<std::vector<int>>();
    const auto i = static_cast<std::size_t>(std::find(ranks.begin(), ranks.end(), 1) - ranks.begin());
    EXPECT_EQ(io::order_text(best.rows[0].order, table.labels), oracle.at("orders").at(i).get<std::string>());
  }
}

TEST(PredictAll, RanksInvariantUnderReparameterization) {
  const auto data = random_dataset(4, 18, 21);
  const auto a = predict_all(ols_fit(ModelSpec(Family::Pwo), data));
  const auto b = predict_all(ols_fit(ModelSpec(Family::TaperedPwo, Taper{TaperKind::Linear}), data));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_NEAR(a.rows[i].estimate, b.rows[i].estimate, 1e-9);
    EXPECT_NEAR(*a.rows[i].se, *b.rows[i].se, 1e-9);
  }
}

TEST(PredictAll, PwoMirrorsReversedData) {
  auto data = random_dataset(4, 16, 22);
  const auto a = predict_all(ols_fit(ModelSpec(Family::Pwo), data));
  for (auto& run : data.design.runs) run = run.reversed();
  const auto b = predict_all(ols_fit(ModelSpec(Family::Pwo), data));
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto mirror = lexicographic_index(a.rows[i].order.reversed());
    EXPECT_NEAR(b.rows[i].estimate, a.rows[mirror].estimate, 1e-9);
  }
}

TEST(PredictAll, SaturatedFitHasNoStandardErrors) {
  const auto table = predict_all(ols_fit(ModelSpec(Family::NearestNeighbour), three_drug()));
  for (const auto& row : table.rows) EXPECT_FALSE(row.se);
  EXPECT_NEAR(table.rows[3].estimate, 48.7, 1e-9);
}

TEST(TopK, Bounds) {
  const auto table = predict_all(ols_fit(ModelSpec(Family::Pwo), random_dataset(4, 20, 23)));
  EXPECT_EQ(top_k(table, 24).rows.size(), 24u);
  const auto ten = top_k(table, 10);
  ASSERT_EQ(ten.rows.size(), 10u);
  for (int r = 0; r < 10; ++r) EXPECT_EQ(ten.rows[static_cast<std::size_t>(r)].rank, r + 1);
  const auto best = std::max_element(table.rows.begin(), table.rows.end(),
                                     [](const auto& a, const auto& b) { return a.estimate < b.estimate; });
  EXPECT_EQ(top_k(table, 1).rows[0].order, best->order);
  EXPECT_THROW(top_k(table, 0), ArgumentError);
  EXPECT_THROW(top_k(table, 25), ArgumentError);
}
