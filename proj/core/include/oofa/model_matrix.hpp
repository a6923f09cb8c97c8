#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "oofa/permutation.hpp"

namespace oofa {

/// A writable row, contiguous or a row of a column-major matrix.
using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

enum class Family {
  Pwo,                // pairwise ordering, x_cd = ±1
  TaperedPwo,         // x_cd scaled by z(h_cd)
  ComponentPosition,  // indicators of component c at position j
  ResponseSurface2,   // second-order polynomial in standardized positions
  ResponseSurface3,   // full third-order extension
  SpecialCubic,       // third order without the p_c p_d (p_c - p_d) terms
  NearestNeighbour,   // w_cd = 1 iff c immediately precedes d
};

enum class TaperKind { InverseDistance, Geometric, Linear };

/// Decay z(h) of a pairwise effect with positional distance h.
struct Taper {
  TaperKind kind = TaperKind::InverseDistance;
  double ratio = 0.5;  // c in z(h) = c^(h-1); only used by Geometric

  friend bool operator==(const Taper&, const Taper&) = default;
};

/// z(h) for 1 <= h <= m-1: 1/h, c^(h-1) or m-h. Throws ArgumentError outside that range.
double taper_value(const Taper& taper, int h, int m);

/// Which regression family to build. A taper is present exactly for TaperedPwo.
class ModelSpec {
 public:
  ModelSpec() = default;
  explicit ModelSpec(Family family, std::optional<Taper> taper = std::nullopt);

  /// Parses "pwo", "tpwo:invh", "tpwo:geom=0.5", "tpwo:linear", "cp", "rs2", "rs3",
  /// "rs3s" and "nn". A bare "tpwo" means the 1/h taper.
  static ModelSpec parse(std::string_view text);

  Family family() const noexcept { return family_; }
  const std::optional<Taper>& taper() const noexcept { return taper_; }
  bool has_intercept() const noexcept;

  /// Canonical text form; parse(name()) == *this.
  std::string name() const;
  std::string family_name() const;
  /// Empty unless TaperedPwo.
  std::string taper_name() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  Family family_ = Family::Pwo;
  std::optional<Taper> taper_;
};

/// Column count from the closed-form formula for each family.
int parameter_count(const ModelSpec& spec, int m);

/// Column labels in canonical order: intercept, then linear, quadratic, α and cubic
/// terms, each block by ascending component tuple.
std::vector<std::string> term_labels(const ModelSpec& spec, int m);

/// Model matrix with one row per run.
struct DesignMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> labels;
  int m = 0;
  ModelSpec spec;

  Eigen::Index rows() const noexcept { return values.rows(); }
  Eigen::Index cols() const noexcept { return values.cols(); }
};

/// Fills `out` (length term_labels(spec, m).size()) with the covariates of one run.
void model_row(const ModelSpec& spec, const Permutation& run, RowRef out);

/// Covariates of a response-surface family evaluated at arbitrary standardized
/// positions `p` (length m). Used for surfaces between the design points.
void response_surface_row(const ModelSpec& spec, std::span<const double> p, RowRef out);

/// Throws ArgumentError on mixed m, no runs or m < 2, UnsupportedModelError for
/// third-order families at m = 2.
DesignMatrix build_matrix(const ModelSpec& spec, std::span<const Permutation> runs);

/// build_matrix over all m! orders, rows in lexicographic order.
DesignMatrix full_factorial_matrix(const ModelSpec& spec, int m);

/// Linear maps between the PWO and linear-taper PWO full-factorial matrices:
/// X_lt = X_pwo * pwo_to_linear and X_pwo = X_lt * linear_to_pwo.
struct PwoLinearMaps {
  Eigen::MatrixXd pwo_to_linear;
  Eigen::MatrixXd linear_to_pwo;
};

PwoLinearMaps pwo_to_ltpwo_maps(int m);

}  // namespace oofa
