#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oofa/averaging.hpp"
#include "oofa/criteria.hpp"
#include "oofa/design.hpp"
#include "oofa/design_search.hpp"
#include "oofa/model_matrix.hpp"
#include "oofa/ols.hpp"
#include "oofa/ranking.hpp"
#include "oofa/surface.hpp"

namespace oofa::io {

/// 12 significant digits, '.' decimal point regardless of locale.
std::string format_number(double value);

/// Contents of a design CSV: header `pos_1..pos_m`, optional `block`, optional `y`,
/// and an optional leading `run` column that is ignored.
///
/// Component labels map to ids 1..m in order of first appearance, except that a
/// label set of exactly "1".."m" keeps its numeric meaning.
struct DesignTable {
  Design design;
  std::optional<std::vector<double>> response;
};

/// Throws ParseError for structural problems (missing header, ragged rows, bad numbers)
/// and ValidationError for rows that are not permutations of the label set.
DesignTable read_design_table(std::istream& in);

/// `path` "-" reads standard input.
DesignTable read_design_file(const std::string& path);

/// As read_design_table but requires the `y` column.
Dataset read_dataset(std::istream& in);

/// Writes `run,pos_1..pos_m[,block][,y]`.
void write_design_csv(std::ostream& out, const Design& design, const std::vector<double>* response = nullptr);

/// Header is the term labels.
void write_matrix_csv(std::ostream& out, const DesignMatrix& matrix);

/// `order,estimate,se,rank`, rows as given (use top_k() for a ranked view). Orders
/// are space-separated component labels.
void write_prediction_csv(std::ostream& out, const PredictionTable& table);
void write_prediction_json(std::ostream& out, const PredictionTable& table);

/// Per-order table: `pos_1..pos_m`, `<model>_estimate,<model>_rank` per model, then
/// `ma_estimate,ma_rank,ma_se`; the `top` best orders by averaged rank.
void write_averaged_csv(std::ostream& out, const AveragedPrediction& pred, std::size_t top);
void write_averaged_json(std::ostream& out, const AveragedPrediction& pred, std::size_t top);

void write_fit_json(std::ostream& out, const FitResult& fit);
FitResult read_fit_json(std::istream& in);

struct CriterionRecord {
  std::string model;
  CriterionSpec criterion;
  double value = 0.0;
};

/// Array of {criterion, model, value, orientation, sigma2, orthogonal_coding}.
void write_criteria_json(std::ostream& out, const std::vector<CriterionRecord>& records);

/// Header `p1,p2,eta,kind,order,argmax`; grid rows first, then one row per order.
void write_surface_csv(std::ostream& out, const SurfaceGrid& surface);

void write_search_report_json(std::ostream& out, const SearchResult& result, const SearchConfig& config);

/// Space-separated labels of an order, e.g. "A C B".
std::string order_text(const Permutation& order, const std::vector<std::string>& labels);

}  // namespace oofa::io
