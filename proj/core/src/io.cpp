#include "oofa/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "oofa/error.hpp"

namespace oofa::io {
namespace {

using Json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& text, std::size_t line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return value;
}

std::optional<double> json_number(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

std::string order_text(const Permutation& order, const std::vector<std::string>& labels) {
  std::string out;
  for (int pos = 1; pos <= order.size(); ++pos) {
    if (pos > 1) out += ' ';
    const int c = order.component_at(pos);
    out += static_cast<std::size_t>(c) <= labels.size() ? labels[static_cast<std::size_t>(c - 1)] : std::to_string(c);
  }
  return out;
}

DesignTable read_design_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_csv(line);
      break;
    }
  }
  if (header.empty()) throw ParseError("design file is empty (a header row is required)");

  std::map<int, std::size_t> pos_columns;
  std::optional<std::size_t> block_col, y_col;
  for (std::size_t j = 0; j < header.size(); ++j) {
    const auto& h = header[j];
    if (h.starts_with("pos_")) {
      int k = 0;
      const auto [ptr, ec] = std::from_chars(h.data() + 4, h.data() + h.size(), k);
      if (ec != std::errc() || ptr != h.data() + h.size() || k < 1) throw ParseError("bad column name '" + h + "'");
      if (!pos_columns.emplace(k, j).second) throw ParseError("duplicate column '" + h + "'");
    } else if (h == "block") {
      block_col = j;
    } else if (h == "y") {
      y_col = j;
    } else if (h != "run") {
      throw ParseError("unexpected column '" + h + "' (expected run, pos_1..pos_m, block, y)");
    }
  }
  const int m = static_cast<int>(pos_columns.size());
  if (m == 0) throw ParseError("header has no pos_1..pos_m columns");
  if (pos_columns.rbegin()->first != m) throw ParseError("position columns must be pos_1..pos_" + std::to_string(m));
  if (m > kMaxComponents) {
    throw CapacityError("number of components must be at most " + std::to_string(kMaxComponents) + " (got " +
                        std::to_string(m) + ")");
  }

  std::vector<std::vector<std::string>> raw_orders;
  std::vector<std::string> blocks;
  std::vector<double> response;
  std::vector<std::string> first_seen;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    const std::size_t row = raw_orders.size() + 1;
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields, found " + std::to_string(fields.size()));
    }
    std::vector<std::string> order;
    for (int k = 1; k <= m; ++k) {
      const auto& label = fields[pos_columns[k]];
      if (label.empty()) throw ValidationError("row " + std::to_string(row) + ": empty component label");
      if (std::find(order.begin(), order.end(), label) != order.end()) {
        throw ValidationError("row " + std::to_string(row) + ": component '" + label + "' appears more than once");
      }
      order.push_back(label);
      if (std::find(first_seen.begin(), first_seen.end(), label) == first_seen.end()) {
        if (static_cast<int>(first_seen.size()) == m) {
          throw ValidationError("row " + std::to_string(row) + ": label '" + label + "' makes more than " +
                                std::to_string(m) + " distinct components");
        }
        first_seen.push_back(label);
      }
    }
    raw_orders.push_back(std::move(order));
    row_lines.push_back(line_no);
    if (block_col) blocks.push_back(fields[*block_col]);
    if (y_col) response.push_back(parse_number(fields[*y_col], line_no));
  }
  if (raw_orders.empty()) throw ParseError("design file has no runs");

  std::vector<std::string> labels = first_seen;
  {
    std::vector<std::string> numeric(static_cast<std::size_t>(m));
    for (int c = 1; c <= m; ++c) numeric[static_cast<std::size_t>(c - 1)] = std::to_string(c);
    std::vector<std::string> sorted = first_seen;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> sorted_numeric = numeric;
    std::sort(sorted_numeric.begin(), sorted_numeric.end());
    if (sorted == sorted_numeric) labels = numeric;
  }

  DesignTable table;
  table.design.labels = labels;
  for (std::size_t r = 0; r < raw_orders.size(); ++r) {
    std::vector<int> ids;
    for (const auto& label : raw_orders[r]) {
      ids.push_back(static_cast<int>(std::find(labels.begin(), labels.end(), label) - labels.begin()) + 1);
    }
    table.design.runs.emplace_back(std::move(ids));
  }
  table.design.blocks = std::move(blocks);
  if (y_col) table.response = std::move(response);
  return table;
}

DesignTable read_design_file(const std::string& path) {
  if (path == "-") return read_design_table(std::cin);
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_design_table(in);
}

Dataset read_dataset(std::istream& in) {
  auto table = read_design_table(in);
  if (!table.response) throw ParseError("data file needs a 'y' column");
  Dataset data{std::move(table.design), std::move(*table.response)};
  data.validate();
  return data;
}

void write_design_csv(std::ostream& out, const Design& design, const std::vector<double>* response) {
  const int m = design.m();
  out << "run";
  for (int k = 1; k <= m; ++k) out << ",pos_" << k;
  if (design.has_blocks()) out << ",block";
  if (response != nullptr) out << ",y";
  out << '\n';
  for (std::size_t i = 0; i < design.size(); ++i) {
    out << (i + 1);
    for (int k = 1; k <= m; ++k) out << ',' << design.label(design.runs[i].component_at(k));
    if (design.has_blocks()) out << ',' << design.blocks[i];
    if (response != nullptr) out << ',' << format_number((*response)[i]);
    out << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const DesignMatrix& matrix) {
  for (std::size_t j = 0; j < matrix.labels.size(); ++j) out << (j ? "," : "") << matrix.labels[j];
  out << '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) out << (j ? "," : "") << format_number(matrix.values(i, j));
    out << '\n';
  }
}

void write_prediction_csv(std::ostream& out, const PredictionTable& table) {
  out << "order,estimate,se,rank\n";
  for (const auto& row : table.rows) {
    out << order_text(row.order, table.labels) << ',' << format_number(row.estimate) << ','
        << (row.se ? format_number(*row.se) : std::string()) << ',' << row.rank << '\n';
  }
}

void write_prediction_json(std::ostream& out, const PredictionTable& table) {
  Json j;
  j["model"] = table.model;
  j["m"] = table.m;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r;
    r["order"] = order_text(row.order, table.labels);
    r["estimate"] = row.estimate;
    r["se"] = optional_number(row.se);
    r["rank"] = row.rank;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

namespace {

std::vector<std::size_t> by_rank(const AveragedPrediction& pred, std::size_t top) {
  if (top < 1 || top > pred.orders.size()) {
    throw ArgumentError("top-k needs 1 <= k <= " + std::to_string(pred.orders.size()) + " (got " + std::to_string(top) + ")");
  }
  std::vector<std::size_t> idx(pred.orders.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pred.rank[a] < pred.rank[b]; });
  idx.resize(top);
  return idx;
}

}  // namespace

void write_averaged_csv(std::ostream& out, const AveragedPrediction& pred, std::size_t top) {
  for (int k = 1; k <= pred.m; ++k) out << (k > 1 ? "," : "") << "pos_" << k;
  for (const auto& mp : pred.models) out << ',' << mp.model << "_estimate," << mp.model << "_rank";
  out << ",ma_estimate,ma_rank,ma_se\n";
  for (std::size_t i : by_rank(pred, top)) {
    const auto& order = pred.orders[i];
    for (int k = 1; k <= pred.m; ++k) {
      const int c = order.component_at(k);
      out << (k > 1 ? "," : "")
          << (static_cast<std::size_t>(c) <= pred.labels.size() ? pred.labels[static_cast<std::size_t>(c - 1)]
                                                                 : std::to_string(c));
    }
    for (const auto& mp : pred.models) out << ',' << format_number(mp.estimates[i]) << ',' << mp.ranks[i];
    out << ',' << format_number(pred.estimate[i]) << ',' << pred.rank[i] << ',' << format_number(pred.se(i)) << '\n';
  }
}

void write_averaged_json(std::ostream& out, const AveragedPrediction& pred, std::size_t top) {
  Json j;
  Json models = Json::array();
  for (const auto& mp : pred.models) {
    Json e;
    e["model"] = mp.model;
    e["weight"] = mp.weight;
    models.push_back(std::move(e));
  }
  j["models"] = std::move(models);
  j["mean_variance"] = average_variance_summary(pred);
  Json rows = Json::array();
  for (std::size_t i : by_rank(pred, top)) {
    Json r;
    r["order"] = order_text(pred.orders[i], pred.labels);
    Json per = Json::array();
    for (const auto& mp : pred.models) {
      Json e;
      e["model"] = mp.model;
      e["estimate"] = mp.estimates[i];
      e["rank"] = mp.ranks[i];
      per.push_back(std::move(e));
    }
    r["models"] = std::move(per);
    r["estimate"] = pred.estimate[i];
    r["rank"] = pred.rank[i];
    r["se"] = pred.se(i);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

void write_fit_json(std::ostream& out, const FitResult& fit) {
  Json j;
  j["model"] = fit.spec.family_name();
  j["taper"] = fit.spec.taper() ? Json(fit.spec.taper_name()) : Json(nullptr);
  Json coefs = Json::array();
  for (const auto& c : fit.coefficients) coefs.push_back(Json{{"term", c.term}, {"estimate", c.estimate}});
  j["coefficients"] = std::move(coefs);
  j["rss"] = fit.rss;
  j["rmse"] = optional_number(fit.rmse);
  j["df_error"] = fit.df_error;
  j["aic"] = optional_number(fit.aic);
  j["bic"] = optional_number(fit.bic);
  j["n"] = fit.n;
  j["m"] = fit.m;
  j["labels"] = fit.labels;
  j["sigma2_hat"] = optional_number(fit.sigma2_hat);
  j["log_lik"] = optional_number(fit.log_lik);
  j["p_effective"] = fit.p_effective;
  j["model_columns"] = fit.model_columns;
  j["block_levels"] = fit.block_levels;
  j["aliased"] = fit.aliased;
  Json cov = Json::array();
  for (Eigen::Index i = 0; i < fit.unscaled_covariance.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < fit.unscaled_covariance.cols(); ++k) row.push_back(fit.unscaled_covariance(i, k));
    cov.push_back(std::move(row));
  }
  j["unscaled_covariance"] = std::move(cov);
  out << j.dump(2) << '\n';
}

FitResult read_fit_json(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
    FitResult fit;
    const std::string model = j.at("model").get<std::string>();
    const std::string name = j.at("taper").is_null() ? model : model + ":" + j.at("taper").get<std::string>();
    fit.spec = ModelSpec::parse(name);
    for (const auto& c : j.at("coefficients")) {
      fit.coefficients.push_back({c.at("term").get<std::string>(), c.at("estimate").get<double>()});
    }
    fit.rss = j.at("rss").get<double>();
    fit.rmse = json_number(j.at("rmse"));
    fit.df_error = j.at("df_error").get<int>();
    fit.aic = json_number(j.at("aic"));
    fit.bic = json_number(j.at("bic"));
    fit.n = j.at("n").get<int>();
    fit.m = j.at("m").get<int>();
    fit.labels = j.at("labels").get<std::vector<std::string>>();
    fit.sigma2_hat = json_number(j.at("sigma2_hat"));
    fit.log_lik = json_number(j.at("log_lik"));
    fit.p_effective = j.at("p_effective").get<int>();
    fit.model_columns = j.at("model_columns").get<int>();
    fit.block_levels = j.at("block_levels").get<std::vector<std::string>>();
    if (j.contains("aliased")) fit.aliased = j.at("aliased").get<std::vector<std::string>>();
    const auto& cov = j.at("unscaled_covariance");
    const auto p = static_cast<Eigen::Index>(cov.size());
    if (p != static_cast<Eigen::Index>(fit.coefficients.size())) throw ParseError("covariance size does not match coefficients");
    fit.unscaled_covariance.resize(p, p);
    for (Eigen::Index r = 0; r < p; ++r) {
      const auto& row = cov.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != p) throw ParseError("covariance matrix is not square");
      for (Eigen::Index c = 0; c < p; ++c) fit.unscaled_covariance(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    if (fit.model_columns > p || fit.model_columns != parameter_count(fit.spec, fit.m)) {
      throw ParseError("model_columns does not match " + fit.spec.name() + " at m=" + std::to_string(fit.m));
    }
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad fit JSON: ") + e.what());
  }
}

void write_criteria_json(std::ostream& out, const std::vector<CriterionRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    Json j;
    j["criterion"] = criterion_name(r.criterion.kind);
    j["model"] = r.model;
    j["value"] = r.value;
    j["orientation"] = orientation_of(r.criterion.kind) == Orientation::Maximize ? "maximize" : "minimize";
    j["sigma2"] = r.criterion.sigma2;
    j["orthogonal_coding"] = r.criterion.orthogonal_coding;
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_surface_csv(std::ostream& out, const SurfaceGrid& surface) {
  out << "p1,p2,eta,kind,order,argmax\n";
  for (const auto& g : surface.grid) {
    out << format_number(g.p1) << ',' << format_number(g.p2) << ',' << format_number(g.eta) << ",grid,,0\n";
  }
  for (const auto& o : surface.orders) {
    out << format_number(o.p1) << ',' << format_number(o.p2) << ',' << format_number(o.eta) << ",order,"
        << order_text(*o.order, surface.labels) << ',' << (o.argmax ? 1 : 0) << '\n';
  }
}

void write_search_report_json(std::ostream& out, const SearchResult& result, const SearchConfig& config) {
  Json j;
  j["objective"] = result.objective;
  j["m"] = config.m;
  j["runs"] = config.runs;
  Json members = Json::array();
  for (std::size_t k = 0; k < config.objective.members.size(); ++k) {
    const auto& member = config.objective.members[k];
    Json e;
    e["model"] = member.model.name();
    e["criterion"] = criterion_name(member.criterion.kind);
    e["weight"] = member.weight;
    e["value"] = k < result.member_values.size() ? Json(result.member_values[k]) : Json(nullptr);
    e["orientation"] = orientation_of(member.criterion.kind) == Orientation::Maximize ? "maximize" : "minimize";
    members.push_back(std::move(e));
  }
  j["models"] = std::move(members);
  j["passes"] = result.passes;
  j["pass_objectives"] = result.pass_objectives;
  j["improvements"] = result.improvements;
  j["restart"] = result.restart;
  j["restarts"] = config.restarts;
  j["seed"] = result.seed;
  out << j.dump(2) << '\n';
}

}  // namespace oofa::io
