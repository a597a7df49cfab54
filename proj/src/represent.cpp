#include "uqf/represent.hpp"

#include <algorithm>

#include "uqf/enumerate.hpp"
#include "uqf/errors.hpp"

namespace uqf {

namespace {

void require_target(const LatticeDesc& lat, const OInt& t) {
  if (!(t.field() == lat.field())) throw DomainError("target belongs to a different field");
  if (!t.is_zero() && !t.is_totally_positive()) {
    throw NotTotallyPositive("target " + t.str() + " is not totally positive");
  }
}

// Visits witnesses of Q(x) = t in lexicographic order until `take` returns false.
//
// The search runs on the twisted trace form tr(conj(t) Q(x)) <= tr(conj(t) t):
// every witness lies on its boundary.
template <class Take>
void for_each_witness(const LatticeDesc& lat, const OInt& t, Take&& take) {
  if (t.is_zero()) {
    take(VectorOF(lat.rank(), OInt(lat.field())));
    return;
  }
  const OInt twist = t.conj();
  const Rat bound((twist * t).trace());
  const EllipsoidEnumerator en(trace_form(lat, twist));
  en.for_each(bound, [&](std::span<const Int> y, const Rat& value) {
    if (value != bound) return true;
    VectorOF x = from_coordinates(lat.field(), y);
    if (!(quad_value(lat, x) == t)) return true;
    return take(std::move(x));
  });
}

// --- int64 arithmetic in Z[omega] for the brute-force oracle.

struct Small {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw DomainError("oracle overflow");
  return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw DomainError("oracle overflow");
  return r;
}

Small small_mul(const Small& x, const Small& y, std::int64_t tr_w, std::int64_t n_w) {
  const std::int64_t bb = checked_mul(x.b, y.b);
  return {checked_add(checked_mul(x.a, y.a), -checked_mul(bb, n_w)),
          checked_add(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)),
                      checked_mul(bb, tr_w))};
}

Small to_small(const OInt& x) {
  if (!x.a().fits_slong_p() || !x.b().fits_slong_p()) throw DomainError("oracle overflow");
  return {x.a().get_si(), x.b().get_si()};
}

RatMatrix rational_inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a(piv, c)) == 0) ++piv;
    if (piv == n) throw DomainError("singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    const Rat p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a(r, c)) == 0) continue;
      const Rat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace

bool lex_less(const VectorOF& x, const VectorOF& y) {
  const auto cx = coordinates(x);
  const auto cy = coordinates(y);
  return std::lexicographical_compare(cx.begin(), cx.end(), cy.begin(), cy.end());
}

std::optional<RepWitness> represents(const LatticeDesc& lat, const OInt& t) {
  require_target(lat, t);
  std::optional<RepWitness> found;
  for_each_witness(lat, t, [&](VectorOF x) {
    // -x is a witness too; report the one whose first nonzero coordinate is positive.
    for (const Int& c : coordinates(x)) {
      if (c == 0) continue;
      if (c < 0)
        for (OInt& e : x) e = -e;
      break;
    }
    found = RepWitness{std::move(x)};
    return false;
  });
  return found;
}

std::vector<RepWitness> enumerate_representations(const LatticeDesc& lat, const OInt& t,
                                                  std::size_t cap) {
  if (cap < 1) throw DomainError("cap must be at least 1");
  require_target(lat, t);
  std::vector<RepWitness> out;
  for_each_witness(lat, t, [&](VectorOF x) {
    out.push_back(RepWitness{std::move(x)});
    return out.size() < cap;
  });
  return out;
}

std::optional<RepWitness> naive_represents(const LatticeDesc& lat, const OInt& t, long box) {
  if (box < 1) throw DomainError("box must be at least 1");
  if (!t.is_totally_positive()) return std::nullopt;
  const std::size_t n = lat.rank();
  const std::int64_t tr_w = lat.field().omega_trace();
  const std::int64_t n_w = lat.field().omega_norm();

  // 2 G_ij straight from the Gram matrix.
  std::vector<Small> g2(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QElem& g = lat.gram()(i, j);
      const auto twice = OInt::from_qelem(lat.field(), g + g);
      g2[i * n + j] = to_small(*twice);
    }
  const Small target = to_small(t);
  const Small twice_target{checked_mul(2, target.a), checked_mul(2, target.b)};

  std::vector<Small> x(n, Small{-box, -box});
  while (true) {
    Small acc;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Small term = small_mul(small_mul(g2[i * n + j], x[i], tr_w, n_w), x[j], tr_w, n_w);
        acc = {checked_add(acc.a, term.a), checked_add(acc.b, term.b)};
      }
    if (acc.a == twice_target.a && acc.b == twice_target.b) {
      VectorOF w;
      for (const Small& c : x) w.emplace_back(lat.field(), c.a, c.b);
      return RepWitness{std::move(w)};
    }
    // Odometer over (a_1, b_1, ..., a_n, b_n), last coordinate fastest.
    std::size_t pos = 2 * n;
    while (pos > 0) {
      --pos;
      std::int64_t& c = (pos % 2 == 0) ? x[pos / 2].a : x[pos / 2].b;
      if (c < box) {
        ++c;
        break;
      }
      c = -box;
      if (pos == 0) return std::nullopt;
    }
  }
}

long naive_box_for_trace(const LatticeDesc& lat, const Int& tr_bound) {
  const RatMatrix inv = rational_inverse(trace_form(lat));
  Int best = 1;
  for (std::size_t i = 0; i < inv.rows(); ++i) {
    const Int r = isqrt(floor_rat(inv(i, i) * tr_bound));
    if (r > best) best = r;
  }
  return best.get_si();
}

std::optional<std::vector<Int>> z_represents(const RatMatrix& gram, const Int& n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return std::vector<Int>(gram.rows(), Int(0));
  std::optional<std::vector<Int>> found;
  const EllipsoidEnumerator en(gram);
  const Rat target(n);
  en.for_each(target, [&](std::span<const Int> y, const Rat& value) {
    if (value != target) return true;
    found.emplace(y.begin(), y.end());
    return false;
  });
  return found;
}

}  // namespace uqf
