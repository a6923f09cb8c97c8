#include "oofa/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "oofa/error.hpp"

namespace oofa {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int m = size();
  if (m < 1) throw ValidationError("permutation must contain at least one component");
  positions_.assign(static_cast<std::size_t>(m), 0);
  for (int pos = 1; pos <= m; ++pos) {
    const int c = order_[static_cast<std::size_t>(pos - 1)];
    if (c < 1 || c > m) {
      throw ValidationError("component " + std::to_string(c) + " outside 1.." + std::to_string(m));
    }
    int& slot = positions_[static_cast<std::size_t>(c - 1)];
    if (slot != 0) throw ValidationError("component " + std::to_string(c) + " appears more than once");
    slot = pos;
  }
}

Permutation Permutation::identity(int m) {
  std::vector<int> order(static_cast<std::size_t>(std::max(m, 0)));
  std::iota(order.begin(), order.end(), 1);
  return Permutation(std::move(order));
}

Permutation Permutation::reversed() const {
  return Permutation(std::vector<int>(order_.rbegin(), order_.rend()));
}

std::size_t factorial(int m) {
  if (m < 1 || m > kMaxComponents) {
    throw CapacityError("number of components must be in 1.." + std::to_string(kMaxComponents) +
                        " (got " + std::to_string(m) + ")");
  }
  std::size_t out = 1;
  for (int i = 2; i <= m; ++i) out *= static_cast<std::size_t>(i);
  return out;
}

std::vector<Permutation> enumerate_permutations(int m) {
  std::vector<Permutation> out;
  out.reserve(factorial(m));
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 1);
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::size_t lexicographic_index(const Permutation& perm) {
  // Lehmer code: count smaller components still unused at each position.
  const int m = perm.size();
  std::size_t index = 0;
  std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
  for (int pos = 1; pos <= m; ++pos) {
    const int c = perm.component_at(pos);
    std::size_t smaller = 0;
    for (int k = 1; k < c; ++k) {
      if (!used[static_cast<std::size_t>(k)]) ++smaller;
    }
    used[static_cast<std::size_t>(c)] = true;
    index = index * static_cast<std::size_t>(m - pos + 1) + smaller;
  }
  return index;
}

StdPositions standardize(const Permutation& perm) {
  const int m = perm.size();
  const double scale = 2.0 / (static_cast<double>(m) * (m + 1));
  StdPositions out;
  out.p.resize(static_cast<std::size_t>(m));
  for (int c = 1; c <= m; ++c) out.p[static_cast<std::size_t>(c - 1)] = scale * perm.position_of(c);
  return out;
}

double std_position_sum_of_squares(int m) {
  const double md = m;
  return 2.0 * (2.0 * md + 1.0) / (3.0 * md * (md + 1.0));
}

double std_position_cross_product_sum(int m) {
  const double md = m;
  return (3.0 * md * md - md - 2.0) / (6.0 * md * (md + 1.0));
}

int signed_distance(const Permutation& perm, int c, int d) {
  if (c == d) throw ArgumentError("signed distance needs two distinct components");
  const int m = perm.size();
  if (c < 1 || c > m || d < 1 || d > m) throw ArgumentError("component outside 1.." + std::to_string(m));
  return perm.position_of(d) - perm.position_of(c);
}

}  // namespace oofa
