#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace oofa {

/// Largest number of components handled. Every m! candidate order gets
/// materialized as a matrix row, and 8! = 40320 is where that stops being cheap.
inline constexpr int kMaxComponents = 8;

/// An order of addition for components 1..m. Positions are 1-based.
class Permutation {
 public:
  /// Throws ValidationError unless `order` is a bijection on {1..m}.
  explicit Permutation(std::vector<int> order);

  static Permutation identity(int m);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  int component_at(int position) const { return order_.at(static_cast<std::size_t>(position - 1)); }
  int position_of(int component) const { return positions_.at(static_cast<std::size_t>(component - 1)); }
  std::span<const int> order() const noexcept { return order_; }

  /// Same components applied back to front.
  Permutation reversed() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.order_ == b.order_; }
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.order_ <=> b.order_;
  }

 private:
  std::vector<int> order_;
  std::vector<int> positions_;
};

/// m!, checked against kMaxComponents.
std::size_t factorial(int m);

/// All m! orders in lexicographic order. Throws CapacityError unless 1 <= m <= kMaxComponents.
std::vector<Permutation> enumerate_permutations(int m);

/// Index of `perm` within enumerate_permutations(perm.size()).
std::size_t lexicographic_index(const Permutation& perm);

/// Standardized positions p_c = 2 q_c / (m (m + 1)); they sum to one on every run.
struct StdPositions {
  std::vector<double> p;

  /// Component ids are 1-based.
  double operator[](int component) const { return p[static_cast<std::size_t>(component - 1)]; }
  int size() const noexcept { return static_cast<int>(p.size()); }
};

StdPositions standardize(const Permutation& perm);

/// Σ p_c² and Σ_{c<d} p_c p_d. Both are the same for every order of m components.
double std_position_sum_of_squares(int m);
double std_position_cross_product_sum(int m);

/// q_d − q_c: positive iff c precedes d. Throws ArgumentError when c == d.
int signed_distance(const Permutation& perm, int c, int d);

}  // namespace oofa
