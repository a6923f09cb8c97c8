#include "oofa/model_matrix.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

#include "oofa/error.hpp"
#include "oofa/linalg.hpp"

namespace oofa {
namespace {

std::string pair_label(std::string_view stem, int c, int d) { return fmt::format("{}_{}_{}", stem, c, d); }

bool is_cubic(Family f) { return f == Family::ResponseSurface3 || f == Family::SpecialCubic; }

bool is_response_surface(Family f) { return f == Family::ResponseSurface2 || is_cubic(f); }

void require_supported(const ModelSpec& spec, int m) {
  if (m < 2) throw ArgumentError("models need at least two components (got m=" + std::to_string(m) + ")");
  if (is_cubic(spec.family()) && m < 3) {
    throw UnsupportedModelError(spec.family_name() + " has no third-order terms at m=" + std::to_string(m));
  }
}

// Column visitor shared by labels and values so the two can never drift apart.
// `emit(label_fn, value)` is invoked per column in canonical order.
template <typename Emit>
void visit_columns(const ModelSpec& spec, int m, const Permutation* run, std::span<const double> p, Emit&& emit) {
  auto q = [&](int c) { return run->position_of(c); };
  auto pc = [&](int c) { return p[static_cast<std::size_t>(c - 1)]; };
  switch (spec.family()) {
    case Family::Pwo:
    case Family::TaperedPwo: {
      const bool tapered = spec.family() == Family::TaperedPwo;
      emit([] { return std::string("b0"); }, 1.0);
      for (int c = 1; c < m; ++c) {
        for (int d = c + 1; d <= m; ++d) {
          double v = 0.0;
          if (run != nullptr) {
            v = q(c) < q(d) ? 1.0 : -1.0;
            if (tapered) v *= taper_value(*spec.taper(), std::abs(q(c) - q(d)), m);
          }
          emit([&] { return pair_label(tapered ? "t" : "x", c, d); }, v);
        }
      }
      break;
    }
    case Family::ComponentPosition:
      emit([] { return std::string("b0"); }, 1.0);
      for (int c = 1; c < m; ++c) {
        for (int j = 1; j < m; ++j) {
          emit([&] { return pair_label("tau", c, j); }, run != nullptr && q(c) == j ? 1.0 : 0.0);
        }
      }
      break;
    case Family::NearestNeighbour:
      for (int c = 1; c <= m; ++c) {
        for (int d = 1; d <= m; ++d) {
          if (c == d) continue;
          emit([&] { return pair_label("w", c, d); }, run != nullptr && q(d) == q(c) + 1 ? 1.0 : 0.0);
        }
      }
      break;
    case Family::ResponseSurface2:
      for (int c = 1; c < m; ++c) emit([&] { return fmt::format("p_{}", c); }, p.empty() ? 0.0 : pc(c));
      for (int c = 1; c < m; ++c) {
        emit([&] { return fmt::format("p_{}^2", c); }, p.empty() ? 0.0 : pc(c) * pc(c));
      }
      for (int c = 1; c <= m - 2; ++c) {
        for (int d = c + 1; d <= m - 1; ++d) {
          emit([&] { return fmt::format("p_{}*p_{}", c, d); }, p.empty() ? 0.0 : pc(c) * pc(d));
        }
      }
      break;
    case Family::ResponseSurface3:
    case Family::SpecialCubic:
      for (int c = 1; c <= m; ++c) emit([&] { return fmt::format("p_{}", c); }, p.empty() ? 0.0 : pc(c));
      for (int c = 1; c <= m - 2; ++c) {
        for (int d = c + 1; d <= m; ++d) {
          emit([&] { return fmt::format("p_{}*p_{}", c, d); }, p.empty() ? 0.0 : pc(c) * pc(d));
        }
      }
      if (spec.family() == Family::ResponseSurface3) {
        for (int c = 1; c <= m - 2; ++c) {
          for (int d = c + 1; d <= m - 1; ++d) {
            emit([&] { return pair_label("a", c, d); }, p.empty() ? 0.0 : pc(c) * pc(d) * (pc(c) - pc(d)));
          }
        }
      }
      for (int c = 1; c <= m - 3; ++c) {
        for (int d = c + 1; d <= m - 1; ++d) {
          for (int e = d + 1; e <= m; ++e) {
            emit([&] { return fmt::format("p_{}*p_{}*p_{}", c, d, e); }, p.empty() ? 0.0 : pc(c) * pc(d) * pc(e));
          }
        }
      }
      break;
  }
}

}  // namespace

double taper_value(const Taper& taper, int h, int m) {
  if (h < 1 || h > m - 1) {
    throw ArgumentError("taper distance " + std::to_string(h) + " outside 1.." + std::to_string(m - 1));
  }
  switch (taper.kind) {
    case TaperKind::InverseDistance:
      return 1.0 / h;
    case TaperKind::Geometric:
      return std::pow(taper.ratio, h - 1);
    case TaperKind::Linear:
      return static_cast<double>(m - h);
  }
  return 0.0;
}

ModelSpec::ModelSpec(Family family, std::optional<Taper> taper) : family_(family), taper_(taper) {
  if (family_ == Family::TaperedPwo && !taper_) throw ArgumentError("tapered PWO needs a taper");
  if (family_ != Family::TaperedPwo && taper_) throw ArgumentError("only tapered PWO takes a taper");
  if (taper_ && taper_->kind == TaperKind::Geometric && !(taper_->ratio > 0.0 && taper_->ratio < 1.0)) {
    throw ArgumentError("geometric taper ratio must lie in (0, 1)");
  }
}

ModelSpec ModelSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_taper = [&](Family f) {
    if (colon != std::string_view::npos) throw ArgumentError("model '" + std::string(text) + "' takes no taper");
    return ModelSpec(f);
  };
  if (head == "pwo") return no_taper(Family::Pwo);
  if (head == "cp") return no_taper(Family::ComponentPosition);
  if (head == "rs2" || head == "rs") return no_taper(Family::ResponseSurface2);
  if (head == "rs3") return no_taper(Family::ResponseSurface3);
  if (head == "rs3s" || head == "rs3special") return no_taper(Family::SpecialCubic);
  if (head == "nn") return no_taper(Family::NearestNeighbour);
  if (head == "tpwo") {
    if (tail.empty() || tail == "invh") return ModelSpec(Family::TaperedPwo, Taper{TaperKind::InverseDistance});
    if (tail == "linear") return ModelSpec(Family::TaperedPwo, Taper{TaperKind::Linear});
    if (tail.starts_with("geom")) {
      double ratio = 0.5;
      if (tail.size() > 4) {
        if (tail[4] != '=') throw ArgumentError("bad taper '" + std::string(tail) + "'");
        const std::string number(tail.substr(5));
        std::size_t used = 0;
        try {
          ratio = std::stod(number, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != number.size()) throw ArgumentError("bad geometric ratio '" + number + "'");
      }
      return ModelSpec(Family::TaperedPwo, Taper{TaperKind::Geometric, ratio});
    }
    throw ArgumentError("unknown taper '" + std::string(tail) + "' (expected invh, geom=<c> or linear)");
  }
  throw ArgumentError("unknown model '" + std::string(text) + "' (expected pwo, tpwo[:taper], cp, rs2, rs3, rs3s, nn)");
}

bool ModelSpec::has_intercept() const noexcept {
  return family_ == Family::Pwo || family_ == Family::TaperedPwo || family_ == Family::ComponentPosition;
}

std::string ModelSpec::family_name() const {
  switch (family_) {
    case Family::Pwo: return "pwo";
    case Family::TaperedPwo: return "tpwo";
    case Family::ComponentPosition: return "cp";
    case Family::ResponseSurface2: return "rs2";
    case Family::ResponseSurface3: return "rs3";
    case Family::SpecialCubic: return "rs3s";
    case Family::NearestNeighbour: return "nn";
  }
  return "?";
}

std::string ModelSpec::taper_name() const {
  if (!taper_) return {};
  switch (taper_->kind) {
    case TaperKind::InverseDistance: return "invh";
    case TaperKind::Linear: return "linear";
    case TaperKind::Geometric: return fmt::format("geom={}", taper_->ratio);
  }
  return {};
}

std::string ModelSpec::name() const {
  return taper_ ? family_name() + ":" + taper_name() : family_name();
}

int parameter_count(const ModelSpec& spec, int m) {
  const int rs2 = (m - 1) * (m + 2) / 2;
  const int rs3 = rs2 + m * (m * m - 1) / 6 - m;
  switch (spec.family()) {
    case Family::Pwo:
    case Family::TaperedPwo: return 1 + m * (m - 1) / 2;
    case Family::ComponentPosition: return 1 + (m - 1) * (m - 1);
    case Family::ResponseSurface2: return rs2;
    case Family::ResponseSurface3: return rs3;
    case Family::SpecialCubic: return rs3 - (m - 1) * (m - 2) / 2;
    case Family::NearestNeighbour: return m * (m - 1);
  }
  return 0;
}

std::vector<std::string> term_labels(const ModelSpec& spec, int m) {
  require_supported(spec, m);
  std::vector<std::string> labels;
  visit_columns(spec, m, nullptr, {}, [&](auto&& label, double) { labels.push_back(label()); });
  return labels;
}

void model_row(const ModelSpec& spec, const Permutation& run, RowRef out) {
  const int m = run.size();
  std::vector<double> p;
  if (is_response_surface(spec.family())) p = standardize(run).p;
  Eigen::Index j = 0;
  visit_columns(spec, m, &run, p, [&](auto&&, double v) { out(j++) = v; });
}

void response_surface_row(const ModelSpec& spec, std::span<const double> p, RowRef out) {
  if (!is_response_surface(spec.family())) {
    throw ArgumentError("model " + spec.name() + " is not a response-surface model");
  }
  const int m = static_cast<int>(p.size());
  require_supported(spec, m);
  Eigen::Index j = 0;
  visit_columns(spec, m, nullptr, p, [&](auto&&, double v) { out(j++) = v; });
}

DesignMatrix build_matrix(const ModelSpec& spec, std::span<const Permutation> runs) {
  if (runs.empty()) throw ArgumentError("design has no runs");
  const int m = runs.front().size();
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].size() != m) {
      throw ArgumentError("run " + std::to_string(i + 1) + " has " + std::to_string(runs[i].size()) +
                          " components, expected " + std::to_string(m));
    }
  }
  DesignMatrix out;
  out.labels = term_labels(spec, m);
  out.m = m;
  out.spec = spec;
  out.values.resize(static_cast<Eigen::Index>(runs.size()), static_cast<Eigen::Index>(out.labels.size()));
  for (std::size_t i = 0; i < runs.size(); ++i) model_row(spec, runs[i], out.values.row(static_cast<Eigen::Index>(i)));
  return out;
}

DesignMatrix full_factorial_matrix(const ModelSpec& spec, int m) {
  const auto runs = enumerate_permutations(m);
  return build_matrix(spec, runs);
}

PwoLinearMaps pwo_to_ltpwo_maps(int m) {
  const auto pwo = full_factorial_matrix(ModelSpec(Family::Pwo), m).values;
  const auto linear = full_factorial_matrix(ModelSpec(Family::TaperedPwo, Taper{TaperKind::Linear}), m).values;
  auto project = [](const Eigen::MatrixXd& from, const Eigen::MatrixXd& to, const char* what) {
    const auto d = linalg::decompose(from);
    if (!d.full_column_rank()) throw EstimabilityError(std::string(what) + " full-factorial matrix is rank deficient", {});
    Eigen::MatrixXd map(from.cols(), to.cols());
    for (Eigen::Index j = 0; j < to.cols(); ++j) map.col(j) = linalg::solve(d, to.col(j));
    return map;
  };
  return {project(pwo, linear, "PWO"), project(linear, pwo, "linear-taper PWO")};
}

}  // namespace oofa
