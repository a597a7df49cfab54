#include "uqf/enumerate.hpp"

namespace uqf {

IntInterval centered_interval(const Rat& center, const Rat& radius_sq) {
  if (sgn(radius_sq) < 0) return {Int(1), Int(0)};
  // floor(sqrt(r)) = isqrt(floor(r)); the true bounds are within two steps.
  const Int s = isqrt(floor_rat(radius_sq));
  const Rat neg_c = -center;
  auto outside = [&](const Int& y) {
    const Rat off = y + center;
    return off * off > radius_sq;
  };
  Int hi = floor_rat(neg_c) + s + 1;
  while (sgn(Rat(hi + center)) > 0 && outside(hi)) --hi;
  Int lo = ceil_rat(neg_c) - s - 1;
  while (sgn(Rat(lo + center)) < 0 && outside(lo)) ++lo;
  return {lo, hi};
}

EllipsoidEnumerator::EllipsoidEnumerator(const RatMatrix& form) : dim_(form.rows()) {
  RatMatrix rev(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) rev(i, j) = form(dim_ - 1 - i, dim_ - 1 - j);
  chol_ = rational_cholesky(rev);
}

bool EllipsoidEnumerator::for_each(const Rat& bound, const Visitor& visit) const {
  nodes_ = 0;
  if (sgn(bound) < 0) return true;
  if (dim_ == 0) return visit({}, Rat(0));
  std::vector<Int> y(dim_);
  return descend(dim_, bound, y, bound, visit);
}

// `level` counts the reversed coordinates still free; reversed index k maps to
// original coordinate dim_ - 1 - k, so level dim_ fixes y_0 first.
bool EllipsoidEnumerator::descend(std::size_t level, const Rat& budget, std::vector<Int>& y,
                                  const Rat& bound, const Visitor& visit) const {
  ++nodes_;
  const std::size_t k = level - 1;
  Rat center = 0;
  for (std::size_t j = k + 1; j < dim_; ++j) {
    const Rat& u = chol_.upper(k, j);
    if (sgn(u) != 0) center += u * y[dim_ - 1 - j];
  }
  const Rat& pivot = chol_.pivots[k];
  const IntInterval range = centered_interval(center, budget / pivot);
  Int& slot = y[dim_ - 1 - k];
  for (Int v = range.lo; v <= range.hi; ++v) {
    slot = v;
    const Rat off = v + center;
    const Rat rest = budget - pivot * off * off;
    if (k == 0) {
      if (!visit(y, bound - rest)) return false;
    } else if (!descend(k, rest, y, bound, visit)) {
      return false;
    }
  }
  slot = 0;
  return true;
}

}  // namespace uqf
