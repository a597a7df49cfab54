#pragma once

// Complete enumeration of integer points in a rational ellipsoid
// { y in Z^m : y^T T y <= bound }, using exact rational Cholesky bounds.

#include <functional>
#include <span>
#include <vector>

#include "uqf/exact.hpp"

namespace uqf {

/// Integer interval [lo, hi] of all y with (y + center)^2 <= radius_sq.
/// Empty when lo > hi.
struct IntInterval {
  Int lo;
  Int hi;
};
IntInterval centered_interval(const Rat& center, const Rat& radius_sq);

class EllipsoidEnumerator {
 public:
  /// Called with the point and its exact value y^T T y. Return false to stop.
  using Visitor = std::function<bool(std::span<const Int>, const Rat&)>;

  /// Throws NotPositiveDefinite unless `form` is positive definite.
  explicit EllipsoidEnumerator(const RatMatrix& form);

  std::size_t dimension() const { return dim_; }

  /// Visits every point with value <= bound in ascending lexicographic order
  /// of (y_0, y_1, ...). Returns false iff the visitor stopped early.
  bool for_each(const Rat& bound, const Visitor& visit) const;

  /// Number of search-tree nodes touched by the last for_each (diagnostic).
  std::size_t last_node_count() const { return nodes_; }

 private:
  bool descend(std::size_t level, const Rat& budget, std::vector<Int>& y, const Rat& bound,
               const Visitor& visit) const;

  std::size_t dim_;
  // Cholesky of the form with coordinates reversed, so y_0 is the outermost loop.
  RatCholesky chol_;
  mutable std::size_t nodes_ = 0;
};

}  // namespace uqf
