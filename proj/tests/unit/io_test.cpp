#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oofa/error.hpp"
#include "oofa/io.hpp"
#include "test_support.hpp"

using namespace oofa;

namespace {

io::DesignTable parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_design_table(in);
}

Dataset three_drug() {
  std::ifstream in(oofa::testing::data_path("three_drug.csv"));
  return io::read_dataset(in);
}

}  // namespace

TEST(ReadDesign, ThreeDrugExample) {
  const auto data = three_drug();
  EXPECT_EQ(data.design.m(), 3);
  EXPECT_EQ(data.size(), 6u);
  EXPECT_EQ(data.design.labels, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(data.design.runs[3], Permutation({2, 3, 1}));
  EXPECT_DOUBLE_EQ(data.response[3], 48.7);
}

TEST(ReadDesign, LabelsByFirstAppearance) {
  const auto t = parse("pos_1,pos_2,pos_3\ncis,dox,pac\npac,cis,dox\n");
  EXPECT_EQ(t.design.labels, (std::vector<std::string>{"cis", "dox", "pac"}));
  const auto u = parse("pos_1,pos_2,pos_3\nC,A,B\nA,B,C\n");
  EXPECT_EQ(u.design.labels, (std::vector<std::string>{"C", "A", "B"}));
  EXPECT_EQ(u.design.runs[0], Permutation({1, 2, 3}));
}

TEST(ReadDesign, NumericLabelsKeepTheirIds) {
  const auto t = parse("run,pos_1,pos_2,pos_3,block\n1,3,1,2,a\n2,1,2,3,b\n");
  EXPECT_EQ(t.design.runs[0], Permutation({3, 1, 2}));
  EXPECT_EQ(t.design.blocks, (std::vector<std::string>{"a", "b"}));
  EXPECT_FALSE(t.response);
}

TEST(ReadDesign, RepeatedComponentNamesTheRow) {
  try {
    parse("pos_1,pos_2,pos_3,y\nA,B,C,1\nA,A,C,2\n");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("pos_1,pos_2\nA,B\nA,C\n"), ValidationError);
}

TEST(ReadDesign, StructuralErrors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("pos_1,pos_3\nA,B\n"), ParseError);
  EXPECT_THROW(parse("pos_1,pos_2\nA,B,C\n"), ParseError);
  EXPECT_THROW(parse("pos_1,pos_2,colour\nA,B,red\n"), ParseError);
  EXPECT_THROW(parse("pos_1,pos_2,y\nA,B,abc\n"), ParseError);
  EXPECT_THROW(parse("pos_1,pos_2\n"), ParseError);
  std::istringstream no_y("pos_1,pos_2\nA,B\n");
  EXPECT_THROW(io::read_dataset(no_y), ParseError);
}

TEST(ReadDesign, ToleratesWhitespaceAndCarriageReturns) {
  const auto t = parse("\xEF\xBB\xBFpos_1 , pos_2 ,y\r\n A , B , 1.5\r\n\r\nB,A,+2e1\r\n");
  EXPECT_EQ(t.design.size(), 2u);
  EXPECT_EQ(*t.response, (std::vector<double>{1.5, 20.0}));
}

TEST(WriteDesign, RoundTrip) {
  const auto data = three_drug();
  std::ostringstream first;
  io::write_design_csv(first, data.design, &data.response);
  std::istringstream in(first.str());
  const auto again = io::read_dataset(in);
  EXPECT_EQ(again.design.runs, data.design.runs);
  EXPECT_EQ(again.design.labels, data.design.labels);
  EXPECT_EQ(again.response, data.response);
  std::ostringstream second;
  io::write_design_csv(second, again.design, &again.response);
  EXPECT_EQ(first.str(), second.str());

  auto blocked = oofa::testing::coa_block_design();
  std::ostringstream out;
  io::write_design_csv(out, blocked);
  const auto back = parse(out.str());
  EXPECT_EQ(back.design.runs, blocked.runs);
  EXPECT_EQ(back.design.blocks, blocked.blocks);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(io::format_number(0.1 + 0.2), "0.3");
  EXPECT_EQ(io::format_number(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(io::format_number(12.0), "12");
}

TEST(FitJson, RoundTrip) {
  const auto fit = ols_fit(ModelSpec::parse("tpwo:geom=0.25"), three_drug());
  std::stringstream json;
  io::write_fit_json(json, fit);
  const auto parsed = nlohmann::json::parse(json.str());
  for (const char* key : {"model", "taper", "coefficients", "rss", "rmse", "df_error", "aic", "bic", "n"}) {
    EXPECT_TRUE(parsed.contains(key)) << key;
  }
  EXPECT_EQ(parsed.at("model"), "tpwo");
  EXPECT_EQ(parsed.at("taper"), "geom=0.25");
  std::istringstream in(json.str());
  const auto back = io::read_fit_json(in);
  EXPECT_EQ(back.spec, fit.spec);
  EXPECT_EQ(back.model_coefficients(), fit.model_coefficients());
  EXPECT_EQ(back.unscaled_covariance, fit.unscaled_covariance);
  EXPECT_EQ(back.aic, fit.aic);
  std::ostringstream again;
  io::write_fit_json(again, back);
  EXPECT_EQ(again.str(), json.str());
}

TEST(FitJson, SaturatedFitWritesNulls) {
  std::ostringstream out;
  io::write_fit_json(out, ols_fit(ModelSpec(Family::NearestNeighbour), three_drug()));
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_TRUE(j.at("aic").is_null());
  EXPECT_TRUE(j.at("rmse").is_null());
  EXPECT_TRUE(j.at("taper").is_null());
}

TEST(FitJson, RejectsMalformedInput) {
  std::istringstream bad("{\"model\": \"pwo\"}");
  EXPECT_THROW(io::read_fit_json(bad), ParseError);
  std::istringstream garbage("not json");
  EXPECT_THROW(io::read_fit_json(garbage), ParseError);
}

TEST(PredictionCsv, SixRows) {
  const auto table = predict_all(ols_fit(ModelSpec(Family::Pwo), three_drug()));
  std::ostringstream out;
  io::write_prediction_csv(out, table);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "order,estimate,se,rank");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 6);
  EXPECT_NE(out.str().find("B C A,42.8,"), std::string::npos);
}

TEST(CriteriaJson, Records) {
  std::ostringstream out;
  io::write_criteria_json(out, {{"pwo", CriterionSpec{CriterionKind::D, 2.0, true}, 3.5}});
  const auto j = nlohmann::json::parse(out.str());
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0].at("criterion"), "d");
  EXPECT_EQ(j[0].at("model"), "pwo");
  EXPECT_EQ(j[0].at("value"), 3.5);
  EXPECT_EQ(j[0].at("orientation"), "maximize");
}
