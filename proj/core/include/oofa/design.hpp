#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oofa/permutation.hpp"

namespace oofa {

/// N runs of an order-of-addition experiment.
struct Design {
  std::vector<Permutation> runs;
  /// Batch label per run, or empty when the design has no blocking.
  std::vector<std::string> blocks;
  /// External name of each component id (labels[c - 1] names component c).
  /// Empty means components are reported by number.
  std::vector<std::string> labels;

  int m() const noexcept { return runs.empty() ? 0 : runs.front().size(); }
  std::size_t size() const noexcept { return runs.size(); }
  bool has_blocks() const noexcept { return !blocks.empty(); }

  /// Label of component `c`, falling back to its number.
  std::string label(int c) const;

  /// Throws ArgumentError on mixed m, block count mismatch or a bad label table.
  void validate() const;
};

/// A design with one observed response per run.
struct Dataset {
  Design design;
  std::vector<double> response;

  std::size_t size() const noexcept { return response.size(); }
  void validate() const;
};

/// Full factorial: every one of the m! orders once, lexicographic.
Design full_factorial_design(int m);

}  // namespace oofa
