#include <doctest.h>

#include "oracles.hpp"
#include "uqf/qfield.hpp"

using namespace uqf;

TEST_CASE("make_field branches and discriminants") {
  const FieldCtx f5 = make_field(5);
  CHECK(f5.delta == 5);
  CHECK(f5.branch == Branch::OneMod4);
  const FieldCtx f2 = make_field(2);
  CHECK(f2.delta == 8);
  CHECK(f2.branch == Branch::TwoThreeMod4);
  CHECK(make_field(3).delta == 12);
  CHECK(make_field(13).delta == 13);
  CHECK_THROWS_AS(make_field(12), InvalidField);
  CHECK_THROWS_AS(make_field(1), InvalidField);
  CHECK_THROWS_AS(make_field(0), InvalidField);
  CHECK_THROWS_AS(make_field(-5), InvalidField);
  // Square of a large prime, and a squarefree product of large primes.
  CHECK_THROWS_AS(make_field(1000006000009), InvalidField);
  CHECK(make_field(3401222400000003).delta == 13604889600000012);
}

TEST_CASE("integer helpers") {
  CHECK(isqrt(Int(0)) == 0);
  CHECK(isqrt(Int(15)) == 3);
  CHECK(isqrt(Int(16)) == 4);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(floor_div(Int(6), Int(3)) == 2);
  CHECK(floor_rat(Rat(-1, 2)) == -1);
  CHECK(ceil_rat(Rat(-1, 2)) == 0);
  CHECK(factorial(8) == 40320);
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(18));
}

TEST_CASE("QElem arithmetic is exact and canonical") {
  const QElem r = QElem::sqrt_of(5);
  CHECK(r * r == QElem(5));
  const QElem x(Int(1), Int(1), Int(2), 5);  // (1 + sqrt5) / 2
  CHECK(x * x == x + QElem(1));
  CHECK(x.trace() == 1);
  CHECK(x.norm() == -1);
  CHECK(QElem(Int(2), Int(4), Int(2), 5) == QElem(Int(1), Int(2), Int(1), 5));
  CHECK((x / x) == QElem(1));
  CHECK(x.inverse() * x == QElem(1));
  CHECK((x - x).is_zero());
  CHECK_THROWS_AS(QElem(0).inverse(), DomainError);
  CHECK_THROWS_AS(QElem::sqrt_of(2) + QElem::sqrt_of(3), DomainError);
}

TEST_CASE("QElem sign and floor against exact bounds") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t d = std::vector<std::int64_t>{2, 3, 5, 6, 7, 13, 1000003}[rng.below(7)];
    const QElem x(Int(rng.range(-5000, 5000)), Int(rng.range(-50, 50)), Int(rng.range(1, 9)), d);
    // floor(x) <= x < floor(x) + 1, decided without floating point.
    const Int f = x.floor();
    CHECK(compare(QElem(f), x) <= 0);
    CHECK(compare(x, QElem(Int(f + 1))) < 0);
    CHECK(x.ceil() - f <= 1);
    // sign agrees with the double value whenever it is not borderline.
    const double a = x.approx();
    if (a > 1e-6) CHECK(x.sign() == 1);
    if (a < -1e-6) CHECK(x.sign() == -1);
    CHECK(x.conj_sign() == x.conj().sign());
  }
  const QElem near(Int(-1393), Int(985), Int(1), 2);  // 985 sqrt2 - 1393 ~ 3.6e-4
  CHECK(near.sign() == 1);
  CHECK(near.conj_sign() == -1);
}

TEST_CASE("OInt multiplication follows omega^2 = tr(omega) omega - N(omega)") {
  for (std::int64_t d : {2, 3, 5, 6, 7, 13, 17}) {
    const FieldCtx f = make_field(d);
    const OInt w = OInt::omega(f);
    CHECK((w * w) == OInt(f, -f.omega_norm(), f.omega_trace()));
    Rng rng(d);
    for (int i = 0; i < 100; ++i) {
      const OInt x(f, rng.range(-30, 30), rng.range(-30, 30));
      const OInt y(f, rng.range(-30, 30), rng.range(-30, 30));
      CHECK((x * y).to_qelem() == x.to_qelem() * y.to_qelem());
      CHECK(x.norm() == x.to_qelem().norm());
      CHECK(Rat(x.trace()) == x.to_qelem().trace());
      CHECK(x.conj().to_qelem() == x.to_qelem().conj());
      CHECK(OInt::from_qelem(f, x.to_qelem()) == x);
    }
  }
}

TEST_CASE("from_qelem rejects non-integers") {
  const FieldCtx f2 = make_field(2);
  CHECK_FALSE(OInt::from_qelem(f2, QElem(Rat(1, 2))).has_value());
  CHECK_FALSE(OInt::from_qelem(f2, QElem(Int(1), Int(1), Int(2), 2)).has_value());
  const FieldCtx f5 = make_field(5);
  CHECK(OInt::from_qelem(f5, QElem(Int(1), Int(1), Int(2), 5)) == OInt::omega(f5));
}

TEST_CASE("totally positive test") {
  const FieldCtx f5 = make_field(5);
  CHECK_FALSE(OInt::omega(f5).is_totally_positive());
  CHECK(OInt(f5, 1, 1).is_totally_positive());
  CHECK(OInt(f5, 1).is_totally_positive());
  CHECK_FALSE(OInt(f5, 0).is_totally_positive());
  const FieldCtx f2 = make_field(2);
  CHECK(OInt(f2, 3, 2).is_totally_positive());  // (1 + sqrt2)^2
  CHECK_FALSE(OInt(f2, 1, 1).is_totally_positive());
}

TEST_CASE("omega_floor gives the least m with m + k omega totally positive") {
  for (std::int64_t d : {2, 3, 5, 6, 7, 13, 17, 1000003}) {
    const FieldCtx f = make_field(d);
    for (long k = 1; k <= 15; ++k) {
      const Int m = omega_floor(Int(k), f);
      CHECK(OInt(f, m, k).is_totally_positive());
      CHECK_FALSE(OInt(f, m - 1, k).is_totally_positive());
      CHECK(kth_target(Int(k), f) == OInt(f, m, k));
    }
  }
  CHECK(omega_floor(Int(1), make_field(5)) == 1);
  CHECK_THROWS_AS(omega_floor(Int(0), make_field(5)), DomainError);
}

TEST_CASE("sqrt_discriminant") {
  CHECK(sqrt_discriminant(make_field(5)) == QElem::sqrt_of(5));
  CHECK(sqrt_discriminant(make_field(2)) == QElem(2) * QElem::sqrt_of(2));
}

TEST_CASE("enumerate_totally_positive matches a box scan") {
  for (std::int64_t d : {2, 3, 5, 13}) {
    const FieldCtx f = make_field(d);
    const auto fast = enumerate_totally_positive(f, Int(12));
    const auto slow = oracle::totally_positive_scan(f, 12, 40);
    CHECK(fast.size() == slow.size());
    for (const OInt& x : slow) CHECK(std::find(fast.begin(), fast.end(), x) != fast.end());
    for (std::size_t i = 1; i < fast.size(); ++i) CHECK(fast[i - 1].trace() <= fast[i].trace());
  }
  CHECK(enumerate_totally_positive(make_field(5), Int(0)).empty());
}
