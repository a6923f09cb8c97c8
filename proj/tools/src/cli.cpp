#include "oofa/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "oofa/averaging.hpp"
#include "oofa/criteria.hpp"
#include "oofa/design_search.hpp"
#include "oofa/error.hpp"
#include "oofa/io.hpp"
#include "oofa/ranking.hpp"
#include "oofa/surface.hpp"

namespace oofa::cli {
namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(' ');
    const auto b = item.find_last_not_of(' ');
    if (a == std::string::npos) throw ArgumentError("empty entry in list '" + text + "'");
    out.push_back(item.substr(a, b - a + 1));
  }
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

std::vector<ModelSpec> parse_models(const std::string& text) {
  std::vector<ModelSpec> out;
  for (const auto& name : split_list(text)) out.push_back(ModelSpec::parse(name));
  return out;
}

std::vector<double> parse_weights(const std::string& text, std::size_t expected) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ArgumentError("weight '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw ArgumentError("got " + std::to_string(out.size()) + " weights for " + std::to_string(expected) + " models");
  }
  return out;
}

std::string one_line(std::string text) {
  for (char& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
  if (dynamic_cast<const CapacityError*>(&e)) return "capacity";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const UnsupportedModelError*>(&e)) return "unsupported_model";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const EstimabilityError*>(&e)) return "estimability";
  if (dynamic_cast<const SaturatedModelError*>(&e)) return "saturated";
  if (dynamic_cast<const SearchFailure*>(&e)) return "search_failure";
  return "numerical";
}

std::string join_models(const std::vector<ModelSpec>& models) {
  std::string out;
  for (const auto& m : models) out += (out.empty() ? "" : ",") + m.name();
  return out;
}

Dataset load_dataset(const std::string& path, bool use_blocks) {
  auto table = io::read_design_file(path);
  if (!table.response) throw ParseError("data file '" + path + "' needs a 'y' column");
  if (use_blocks && !table.design.has_blocks()) throw ArgumentError("--block given but '" + path + "' has no block column");
  if (!use_blocks) table.design.blocks.clear();
  Dataset data{std::move(table.design), std::move(*table.response)};
  data.validate();
  return data;
}

Direction direction_of(bool minimize) { return minimize ? Direction::Minimize : Direction::Maximize; }

void check_format(const std::string& format) {
  if (format != "csv" && format != "json") throw ArgumentError("--format must be csv or json (got '" + format + "')");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Order-of-addition experiments: models, fitting, model averaging, design criteria and design search",
               "oofa"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  int m = 0;
  int runs = 0;
  int top = 0;
  int grid = 0;
  int restarts = 1;
  int max_passes = 50;
  int threads = 1;
  int full_factorial = 0;
  double sigma2 = 1.0;
  bool use_blocks = false;
  bool minimize = false;
  bool orth = false;
  bool alias = false;
  std::string model, taper, models, weights, design_weights, design_path, data_path, fit_path, criterion, format = "csv", report;
  std::optional<std::uint64_t> seed;

  auto* enumerate = app.add_subcommand("enumerate", "List all m! orders lexicographically");
  enumerate->add_option("--m", m, "Number of components")->required();

  auto* matrix = app.add_subcommand("matrix", "Model matrix for a design");
  matrix->add_option("--model", model, "Model family, e.g. pwo, tpwo:invh, cp, rs2, rs3, rs3s, nn")->required();
  matrix->add_option("--taper", taper, "Taper for tpwo: invh, linear, geom[=c]");
  matrix->add_option("--design", design_path, "Design CSV ('-' for stdin)")->required();

  auto* fit = app.add_subcommand("fit", "Least-squares fit; writes fit JSON");
  fit->add_option("--model", model, "Model family")->required();
  fit->add_option("--data", data_path, "Data CSV with a y column")->required();
  fit->add_flag("--block", use_blocks, "Include the block column as a fixed effect");
  fit->add_flag("--alias", alias, "Drop dependent columns instead of failing");

  auto* average = app.add_subcommand("average", "Fit several models and average their predictions");
  average->add_option("--data", data_path, "Data CSV with a y column")->required();
  average->add_option("--models", models, "Comma-separated model list")->required();
  average->add_option("--weights", weights, "akaike, or one weight per model")->default_val("akaike");
  average->add_option("--top", top, "Rows to print (default: all orders)");
  average->add_flag("--block", use_blocks, "Include the block column as a fixed effect");
  average->add_flag("--alias", alias, "Drop dependent columns instead of failing");
  average->add_flag("--minimize", minimize, "Rank small responses first");
  average->add_option("--format", format, "csv or json");

  auto* predict = app.add_subcommand("predict", "Rank all orders from a fit JSON");
  predict->add_option("--fit", fit_path, "Fit JSON written by 'oofa fit'")->required();
  predict->add_option("--top", top, "Rows to print (default: all orders)");
  predict->add_flag("--minimize", minimize, "Rank small responses first");
  predict->add_option("--format", format, "csv or json");

  auto* criteria = app.add_subcommand("criteria", "Design criteria for one or more models");
  auto* design_opt = criteria->add_option("--design", design_path, "Design CSV ('-' for stdin)");
  auto* ff_opt = criteria->add_option("--full-factorial", full_factorial, "Use the full factorial for this m");
  design_opt->excludes(ff_opt);
  criteria->add_option("--models", models, "Comma-separated model list")->required();
  criteria->add_option("--criterion", criterion, "apv, av, a or d")->required();
  criteria->add_option("--sigma2", sigma2, "Error variance");
  criteria->add_flag("--orth", orth, "Orthogonal coding of the model columns");

  auto* design = app.add_subcommand("design", "Point-exchange search for an optimal design");
  design->add_option("--m", m, "Number of components")->required();
  design->add_option("--runs", runs, "Number of runs")->required();
  design->add_option("--models", models, "Comma-separated model list")->required();
  design->add_option("--criterion", criterion, "apv, av, a or d")->default_val("apv");
  design->add_option("--weights", design_weights, "equal, or one weight per model")->default_val("equal");
  design->add_option("--restarts", restarts, "Random restarts");
  design->add_option("--seed", seed, "Seed (falls back to OOFA_SEED, then 0)");
  design->add_option("--max-passes", max_passes, "Passes per restart");
  design->add_option("--threads", threads, "Worker threads for restarts");
  design->add_option("--sigma2", sigma2, "Error variance");
  design->add_flag("--orth", orth, "Orthogonal coding of the model columns");
  design->add_option("--report", report, "Write a JSON search report to this path");

  auto* surface = app.add_subcommand("surface", "RS2 response surface grid for m=3");
  surface->add_option("--data", data_path, "Data CSV with a y column")->required();
  surface->add_option("--model", model, "Must be rs2")->default_val("rs2");
  surface->add_option("--grid", grid, "Grid points per axis")->required();
  surface->add_flag("--minimize", minimize, "Flag the smallest response");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (enumerate->parsed()) {
      err << "# oofa enumerate --m " << m << '\n';
      io::write_design_csv(out, full_factorial_design(m));
    } else if (matrix->parsed()) {
      if (!taper.empty()) {
        if (model.find(':') != std::string::npos) throw ArgumentError("taper given twice ('" + model + "' and --taper)");
        model += ":" + taper;
      }
      const auto spec = ModelSpec::parse(model);
      const auto table = io::read_design_file(design_path);
      err << "# oofa matrix --model " << spec.name() << " --design " << design_path << '\n';
      io::write_matrix_csv(out, build_matrix(spec, table.design.runs));
    } else if (fit->parsed()) {
      const auto spec = ModelSpec::parse(model);
      const auto data = load_dataset(data_path, use_blocks);
      err << "# oofa fit --model " << spec.name() << " --data " << data_path << (use_blocks ? " --block" : "")
          << (alias ? " --alias" : "") << '\n';
      io::write_fit_json(out, ols_fit(spec, data, FitOptions{alias}));
    } else if (average->parsed()) {
      check_format(format);
      const auto specs = parse_models(models);
      const auto data = load_dataset(data_path, use_blocks);
      std::vector<FitResult> fits;
      for (const auto& spec : specs) fits.push_back(ols_fit(spec, data, FitOptions{alias}));
      CandidateSet set;
      if (weights == "akaike") {
        set = CandidateSet::with_akaike_weights(std::move(fits));
      } else {
        set.weights = parse_weights(weights, specs.size());
        set.fits = std::move(fits);
      }
      const auto pred = average_predictions(set, direction_of(minimize));
      const std::size_t k = top > 0 ? static_cast<std::size_t>(top) : pred.orders.size();
      err << "# oofa average --data " << data_path << " --models " << join_models(specs) << " --weights " << weights
          << " --top " << k << (use_blocks ? " --block" : "") << (alias ? " --alias" : "") << (minimize ? " --minimize" : "") << " --format "
          << format << '\n';
      err << "# weights";
      for (const auto& mp : pred.models) err << ' ' << mp.model << '=' << io::format_number(mp.weight);
      err << '\n';
      if (format == "csv") {
        io::write_averaged_csv(out, pred, k);
      } else {
        io::write_averaged_json(out, pred, k);
      }
    } else if (predict->parsed()) {
      check_format(format);
      std::ifstream in(fit_path);
      if (!in) throw ValidationError("cannot open '" + fit_path + "'");
      const auto fitted = io::read_fit_json(in);
      const auto table = predict_all(fitted, direction_of(minimize));
      const std::size_t k = top > 0 ? static_cast<std::size_t>(top) : table.rows.size();
      err << "# oofa predict --fit " << fit_path << " --top " << k << (minimize ? " --minimize" : "") << " --format "
          << format << '\n';
      const auto ranked = top_k(table, k);
      if (format == "csv") {
        io::write_prediction_csv(out, ranked);
      } else {
        io::write_prediction_json(out, ranked);
      }
    } else if (criteria->parsed()) {
      if (design_path.empty() && full_factorial == 0) throw ArgumentError("criteria needs --design or --full-factorial");
      const auto specs = parse_models(models);
      const CriterionSpec crit{parse_criterion(criterion), sigma2, orth};
      const Design d = design_path.empty() ? full_factorial_design(full_factorial) : io::read_design_file(design_path).design;
      err << "# oofa criteria "
          << (design_path.empty() ? "--full-factorial " + std::to_string(full_factorial) : "--design " + design_path)
          << " --models " << join_models(specs) << " --criterion " << criterion_name(crit.kind) << " --sigma2 "
          << io::format_number(sigma2) << (orth ? " --orth" : "") << '\n';
      std::vector<io::CriterionRecord> records;
      for (const auto& spec : specs) records.push_back({spec.name(), crit, evaluate_criterion(spec, crit, d.runs)});
      io::write_criteria_json(out, records);
    } else if (design->parsed()) {
      const auto specs = parse_models(models);
      const CriterionSpec crit{parse_criterion(criterion), sigma2, orth};
      if (!seed) {
        if (const char* env = std::getenv("OOFA_SEED"); env != nullptr && *env != '\0') {
          char* end = nullptr;
          const auto v = std::strtoull(env, &end, 10);
          if (*end != '\0') throw ArgumentError(std::string("OOFA_SEED '") + env + "' is not an unsigned integer");
          seed = v;
        } else {
          seed = 0;
        }
      }
      SearchConfig config;
      config.m = m;
      config.runs = runs;
      config.restarts = restarts;
      config.seed = *seed;
      config.max_passes = max_passes;
      config.threads = threads;
      if (design_weights == "equal") {
        config.objective = CompoundSpec::equal_weights(specs, crit);
      } else {
        const auto a = parse_weights(design_weights, specs.size());
        for (std::size_t k = 0; k < specs.size(); ++k) config.objective.members.push_back({specs[k], crit, a[k]});
      }
      config.validate();
      err << "# oofa design --m " << m << " --runs " << runs << " --models " << join_models(specs) << " --criterion "
          << criterion_name(crit.kind) << " --weights " << design_weights << " --restarts " << restarts << " --seed " << *seed
          << " --max-passes " << max_passes << " --sigma2 " << io::format_number(sigma2) << (orth ? " --orth" : "")
          << '\n';
      const auto result = exchange_search(config);
      io::write_design_csv(out, result.design);
      if (!report.empty()) {
        std::ofstream rep(report);
        if (!rep) throw ValidationError("cannot write '" + report + "'");
        io::write_search_report_json(rep, result, config);
      }
      err << "# objective " << io::format_number(result.objective) << " (restart " << result.restart << ", "
          << result.passes << " passes)\n";
    } else if (surface->parsed()) {
      const auto spec = ModelSpec::parse(model);
      if (spec.family() != Family::ResponseSurface2) {
        throw UnsupportedModelError("surface supports only rs2 (got '" + spec.name() + "')");
      }
      const auto data = load_dataset(data_path, false);
      err << "# oofa surface --data " << data_path << " --model rs2 --grid " << grid << (minimize ? " --minimize" : "")
          << '\n';
      io::write_surface_csv(out, rs2_surface(ols_fit(spec, data), grid, direction_of(minimize)));
    }
  } catch (const ValidationError& e) {
    err << "error: " << error_kind(e) << ": " << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << error_kind(e) << ": " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}

}  // namespace oofa::cli
