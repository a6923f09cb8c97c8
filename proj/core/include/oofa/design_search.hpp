#pragma once

#include <cstdint>
#include <vector>

#include "oofa/criteria.hpp"
#include "oofa/design.hpp"

namespace oofa {

struct SearchConfig {
  int m = 3;
  int runs = 6;
  CompoundSpec objective;  // a single criterion is a one-member compound
  int restarts = 1;
  std::uint64_t seed = 0;
  int max_passes = 50;
  int threads = 1;

  /// Throws ArgumentError/CapacityError for an unusable configuration, including
  /// fewer runs than the largest member model has parameters.
  void validate() const;
};

struct SearchResult {
  Design design;                      // runs sorted lexicographically
  double objective = 0.0;
  std::vector<double> member_values;  // raw (unoriented) criterion per member
  std::vector<double> improvements;   // objective after each accepted exchange
  std::vector<double> pass_objectives;
  int passes = 0;
  int restart = 0;                    // which restart produced the result
  std::uint64_t seed = 0;
};

/// N orders drawn uniformly with replacement from the m! candidates.
Design random_design(int m, int n, std::uint64_t seed);

/// Greedy point exchange over the full candidate list. Every accepted design keeps
/// all member models estimable. Throws SearchFailure if no restart finds an
/// estimable starting design.
SearchResult exchange_search(const SearchConfig& config);

}  // namespace oofa
