#include <doctest.h>

#include "oracles.hpp"
#include "uqf/enumerate.hpp"
#include "uqf/lattice.hpp"

using namespace uqf;

namespace {

QMatrix qm(std::initializer_list<std::initializer_list<QElem>> rows) { return QMatrix(rows); }

}  // namespace

TEST_CASE("make_lattice validation order") {
  const FieldCtx f5 = make_field(5);
  CHECK(make_lattice(f5, QMatrix::identity(3), true).rank() == 3);
  CHECK_THROWS_AS(make_lattice(f5, QMatrix(2, 3), true), DimensionMismatch);
  CHECK_THROWS_AS(make_lattice(f5, QMatrix(0, 0), true), DimensionMismatch);
  CHECK_THROWS_AS(make_lattice(f5, qm({{QElem(1), QElem(1)}, {QElem(0), QElem(1)}}), true), NotSymmetric);
  const QElem half(Rat(1, 2));
  const QMatrix halfs = qm({{QElem(1), half}, {half, QElem(1)}});
  CHECK_THROWS_AS(make_lattice(f5, halfs, true), ClassicalityViolation);
  CHECK(make_lattice(f5, halfs, false).rank() == 2);
  CHECK_THROWS_AS(make_lattice(f5, qm({{half}}), false), ClassicalityViolation);
  CHECK_THROWS_AS(make_lattice(f5, qm({{QElem(Rat(1, 4))}}), false), ClassicalityViolation);
  CHECK_THROWS_AS(make_lattice(f5, qm({{QElem(1), QElem(2)}, {QElem(2), QElem(1)}}), true),
                  NotPositiveDefinite);
  // 1 + sqrt5 is not totally positive.
  CHECK_THROWS_AS(make_lattice(f5, qm({{QElem(1) + QElem::sqrt_of(5)}}), true), NotPositiveDefinite);
  CHECK_THROWS_AS(make_lattice(f5, qm({{QElem::sqrt_of(2)}}), true), DomainError);
}

TEST_CASE("quad_value and bilinear agree with the Gram matrix") {
  Rng rng(4);
  for (std::int64_t d : {2, 5, 13}) {
    const FieldCtx f = make_field(d);
    for (int trial = 0; trial < 20; ++trial) {
      const LatticeDesc lat = oracle::random_classic_lattice(rng, f, 1 + rng.below(4));
      VectorOF x, y;
      for (std::size_t i = 0; i < lat.rank(); ++i) {
        x.emplace_back(f, rng.range(-5, 5), rng.range(-5, 5));
        y.emplace_back(f, rng.range(-5, 5), rng.range(-5, 5));
      }
      CHECK(quad_value(lat, x).to_qelem() == oracle::quad_value_q(lat, x));
      VectorOF s;
      for (std::size_t i = 0; i < x.size(); ++i) s.push_back(x[i] + y[i]);
      const QElem b = (oracle::quad_value_q(lat, s) - oracle::quad_value_q(lat, x) -
                       oracle::quad_value_q(lat, y)) /
                      QElem(2);
      CHECK(bilinear(lat, x, y) == b);
    }
  }
}

TEST_CASE("trace form evaluates tr(Q(x)) and tr(lambda Q(x))") {
  Rng rng(8);
  for (std::int64_t d : {2, 3, 5, 13, 1000003}) {
    const FieldCtx f = make_field(d);
    const LatticeDesc lat = oracle::random_classic_lattice(rng, f, 3);
    const RatMatrix t = trace_form(lat);
    const OInt lambda(f, omega_floor(Int(2), f) + 3, 2);
    const RatMatrix tl = trace_form(lat, lambda);
    CHECK(t.is_symmetric());
    for (int i = 0; i < 100; ++i) {
      VectorOF x;
      for (std::size_t j = 0; j < 3; ++j) x.emplace_back(f, rng.range(-9, 9), rng.range(-9, 9));
      const std::vector<Int> y = coordinates(x);
      CHECK(from_coordinates(f, y) == x);
      Rat v(0), vl(0);
      for (std::size_t a = 0; a < y.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b) {
          v += t(a, b) * y[a] * y[b];
          vl += tl(a, b) * y[a] * y[b];
        }
      const OInt q = quad_value(lat, x);
      CHECK(v == Rat(q.trace()));
      CHECK(vl == Rat((lambda * q).trace()));
    }
  }
}

TEST_CASE("integral_span_check") {
  const FieldCtx f5 = make_field(5);
  const LatticeDesc i3 = identity_lattice(f5, 3);
  const std::vector<VectorOF> e{unit_vector(f5, 3, 0), unit_vector(f5, 3, 1)};
  const SpanCheck ok = integral_span_check(i3, e);
  CHECK(ok.integral);
  CHECK(ok.gram == IntMatrix::identity(2));

  // Q(omega e_1 + conj(omega) e_2) = omega^2 + conj(omega)^2 = 3, and
  // B with e_1 is omega.
  const OInt w = OInt::omega(f5);
  const std::vector<VectorOF> vs{unit_vector(f5, 3, 0), VectorOF{w, w.conj(), OInt(f5)}};
  const SpanCheck bad = integral_span_check(i3, vs);
  CHECK_FALSE(bad.integral);
  REQUIRE(bad.counterexample.has_value());
  CHECK(bad.counterexample_value == w.to_qelem());

  const std::vector<VectorOF> nonint{VectorOF{w, OInt(f5), OInt(f5)}};
  CHECK_THROWS_AS(integral_span_check(i3, nonint), NonIntegralNorm);
}

TEST_CASE("integer-norm vectors span a Z-lattice once the discriminant is large") {
  Rng rng(12);
  const FieldCtx f = make_field(1000003);
  REQUIRE(f.delta > 900);
  for (int trial = 0; trial < 10; ++trial) {
    const LatticeDesc lat = oracle::random_classic_lattice(rng, f, 3);
    // Integer-norm vectors with norm <= 15 all lie in the span of rational
    // coordinates at this discriminant; enumerate them from the trace form.
    const EllipsoidEnumerator en(trace_form(lat));
    std::vector<VectorOF> vs;
    en.for_each(Rat(30), [&](std::span<const Int> y, const Rat&) {
      const VectorOF x = from_coordinates(f, y);
      const OInt q = quad_value(lat, x);
      if (q.is_rational() && q.a() >= 1 && q.a() <= 15) vs.push_back(x);
      return vs.size() < 40;
    });
    CHECK_FALSE(vs.empty());
    CHECK(integral_span_check(lat, vs).integral);
  }
}

TEST_CASE("centered_interval matches a scan") {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const Rat c(Int(rng.range(-200, 200)), Int(rng.range(1, 13)));
    const Rat r(Int(rng.range(0, 400)), Int(rng.range(1, 13)));
    const IntInterval iv = centered_interval(c, r);
    for (long y = -60; y <= 60; ++y) {
      const Rat t = Rat(y) + c;
      const bool inside = t * t <= r;
      CHECK(inside == (iv.lo <= y && y <= iv.hi));
    }
  }
  const IntInterval empty = centered_interval(Rat(1, 2), Rat(1, 5));
  CHECK(empty.lo > empty.hi);
}

TEST_CASE("ellipsoid enumeration is complete and ordered") {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    const RatMatrix form = oracle::random_pd_rational(rng, n);
    const Rat bound(Int(rng.range(1, 20)));
    std::vector<std::vector<Int>> seen;
    EllipsoidEnumerator(form).for_each(bound, [&](std::span<const Int> y, const Rat& v) {
      seen.emplace_back(y.begin(), y.end());
      Rat s(0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += form(a, b) * y[a] * y[b];
      CHECK(s == v);
      return true;
    });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    // Brute force over a box containing the ellipsoid: form >= I / 3, so |y_i| <= 7.
    std::size_t count = 0;
    std::vector<long> y(n, -8);
    while (true) {
      Rat s(0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += form(a, b) * y[a] * y[b];
      if (s <= bound) ++count;
      std::size_t p = 0;
      while (p < n && y[p] == 8) y[p++] = -8;
      if (p == n) break;
      ++y[p];
    }
    CHECK(count == seen.size());
  }
  const RatMatrix not_pd{{Rat(1), Rat(2)}, {Rat(2), Rat(1)}};
  CHECK_THROWS_AS(EllipsoidEnumerator{not_pd}, NotPositiveDefinite);
}
