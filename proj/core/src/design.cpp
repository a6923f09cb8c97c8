#include "oofa/design.hpp"

#include <cmath>
#include <set>

#include "oofa/error.hpp"

namespace oofa {

std::string Design::label(int c) const {
  if (c >= 1 && static_cast<std::size_t>(c) <= labels.size()) return labels[static_cast<std::size_t>(c - 1)];
  return std::to_string(c);
}

void Design::validate() const {
  const int first = m();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].size() != first) {
      throw ArgumentError("run " + std::to_string(i + 1) + " has " + std::to_string(runs[i].size()) +
                          " components, expected " + std::to_string(first));
    }
  }
  if (!blocks.empty() && blocks.size() != runs.size()) {
    throw ArgumentError("block labels given for " + std::to_string(blocks.size()) + " of " +
                        std::to_string(runs.size()) + " runs");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != first) {
    throw ArgumentError("label table names " + std::to_string(labels.size()) + " components, runs have " +
                        std::to_string(first));
  }
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw ArgumentError("component labels must be distinct");
  }
}

void Dataset::validate() const {
  design.validate();
  if (response.size() != design.size()) {
    throw ArgumentError("response has " + std::to_string(response.size()) + " values for " +
                        std::to_string(design.size()) + " runs");
  }
  for (std::size_t i = 0; i < response.size(); ++i) {
    if (!std::isfinite(response[i])) throw ArgumentError("response of run " + std::to_string(i + 1) + " is not finite");
  }
}

Design full_factorial_design(int m) {
  Design d;
  d.runs = enumerate_permutations(m);
  return d;
}

}  // namespace oofa
