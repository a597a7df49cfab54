#include <doctest.h>

#include "oracles.hpp"
#include "uqf/bounds.hpp"

using namespace uqf;

namespace {

Int pow_int(const Int& b, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

QMatrix qint(std::initializer_list<std::initializer_list<long>> rows) {
  QMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = QElem(v);
    ++i;
  }
  return m;
}

/// det(blockdiag(A, 0) x + B) at an integer x by Leibniz, for interpolation.
QElem det_at(const QMatrix& A, const QMatrix& B, long x) {
  QMatrix m = B;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.rows(); ++j) m(i, j) += A(i, j) * QElem(x);
  return oracle::leibniz_det(m);
}

}  // namespace

TEST_CASE("coefficient bound values") {
  CHECK(lemma22_coefficient(4, 4, 3, Int(2)) == 11520 * 256);
  CHECK(lemma22_coefficient(4, 4, 0, Int(2)) == 40320 * 256);
  CHECK(lemma22_coefficient(1, 1, 1, Int(2)) == 4);
  for (long n : {2, 15, 290}) {
    CHECK(lemma22_coefficient(4, 4, 3, Int(n)) == 11520 * pow_int(n, 8));
    CHECK(lemma22_coefficient(4, 4, 2, Int(n)) == 51840 * pow_int(n, 8));
    CHECK(lemma22_coefficient(4, 4, 1, Int(n)) == 80640 * pow_int(n, 8));
  }
  CHECK(lemma22_outer_coefficient(4, 4, Int(2)) == 24 * 40320 * 256);
  CHECK_THROWS_AS(lemma22_coefficient(2, 1, 3, Int(5)), DomainError);
  CHECK_THROWS_AS(lemma22_coefficient(2, 1, 1, Int(1)), DomainError);
  CHECK_THROWS_AS(lemma22_outer_coefficient(2, 1, Int(1)), DomainError);
}

TEST_CASE("coefficient bounds against the outer coefficient") {
  // Every c_l is at most the outer coefficient; some is strictly smaller
  // exactly when k >= 2.
  for (unsigned k = 1; k <= 6; ++k)
    for (unsigned s = 0; s <= 6; ++s) {
      const Int outer = lemma22_outer_coefficient(k, s, Int(2));
      bool some_strict = false;
      for (unsigned l = 0; l < k; ++l) {
        const Int c = lemma22_coefficient(k, s, l, Int(2));
        CHECK(c <= outer);
        some_strict = some_strict || c < outer;
      }
      CHECK(some_strict == (k >= 2));
    }
}

TEST_CASE("perturbed determinant coefficients match interpolation") {
  Rng rng(17);
  const FieldCtx f = make_field(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng.below(3);
    const std::size_t s = rng.below(3);
    const QMatrix A = oracle::random_int_qmatrix(rng, f, k, 3);
    const QMatrix B = oracle::random_int_qmatrix(rng, f, k + s, 3);
    const std::vector<QElem> d = perturbed_det_coefficients(A, B);
    REQUIRE(d.size() == k + 1);
    for (long x = -3; x <= 3; ++x) {
      QElem p(0), xl(1);
      for (const QElem& c : d) {
        p += c * xl;
        xl *= QElem(x);
      }
      CHECK(p == det_at(A, B, x));
    }
  }
}

TEST_CASE("bound chain examples") {
  // s = 0, B = 0, A = I_k: det = x^k.
  for (std::size_t k = 1; k <= 4; ++k) {
    const BoundChain c = lemma22_chain(QMatrix::identity(k), QMatrix(k, k, QElem(0)), QElem(7), Int(2));
    QElem xk(1);
    for (std::size_t i = 0; i < k; ++i) xk *= QElem(7);
    CHECK(c.det_value == xk);
    CHECK(c.leading == QElem(1));
    CHECK(c.inner_holds());
    CHECK(c.holds() == (k >= 2));
  }
  // k = 1: inner and outer bounds coincide, so the strict outer links fail.
  const BoundChain c = lemma22_chain(qint({{2}}), qint({{0, 1}, {1, 1}}), QElem(10), Int(2));
  CHECK(c.det_value == QElem(19));
  CHECK(c.inner_lower == QElem(20 - 8));
  CHECK(c.inner_upper == QElem(20 + 8));
  CHECK(c.inner_holds());
  CHECK(c.outer_lower == c.inner_lower);
  CHECK(c.outer_upper == c.inner_upper);
  CHECK_FALSE(c.outer_strict_expected());
  CHECK_FALSE(c.holds());
  CHECK(c.failure().find("outer_lower") != std::string::npos);

  CHECK_THROWS_AS(lemma22_chain(qint({{3}}), qint({{0, 1}, {1, 1}}), QElem(10), Int(2)), DomainError);
  CHECK_THROWS_AS(lemma22_chain(qint({{2}}), qint({{0, 1}, {1, 1}}), QElem(0), Int(2)), DomainError);
  CHECK_THROWS_AS(lemma22_chain(qint({{2}}), qint({{0, 1}, {1, 1}}), QElem(1), Int(1)), DomainError);
  CHECK_THROWS_AS(lemma22_chain(QMatrix::identity(3), QMatrix::identity(2), QElem(1), Int(2)),
                  DimensionMismatch);
}

TEST_CASE("bound chain on random 4 + 4 instances at x = 10^6") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    QMatrix A(4, 4), B(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) A(i, j) = QElem(rng.range(-15, 15));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) B(i, j) = QElem(rng.range(-15, 15));
    const BoundChain c = lemma22_chain(A, B, QElem(1000000), Int(15));
    CHECK(c.holds());
    CHECK(c.outer_strict_expected());
    CHECK(compare(c.outer_lower, c.inner_lower) < 0);
    CHECK(compare(c.inner_upper, c.outer_upper) < 0);
  }
}

TEST_CASE("bound chain with an irrational x") {
  Rng rng(29);
  const QElem x = QElem(2) * QElem::sqrt_of(1000003);
  for (int trial = 0; trial < 20; ++trial) {
    QMatrix A(2, 2), B(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) A(i, j) = QElem(rng.range(-5, 5));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) B(i, j) = QElem(Rat(Int(rng.range(-9, 9)), 2));
    CHECK(lemma22_chain(A, B, x, Int(5)).holds());
  }
}

TEST_CASE("seeded fuzz run is deterministic; only k = 1 outer links fail") {
  const Lemma22FuzzReport a = fuzz_lemma22(200, 99);
  const Lemma22FuzzReport b = fuzz_lemma22(200, 99);
  CHECK(a.passed + a.failed == 200);
  CHECK(a.failed > 0);
  CHECK(a.failed == a.failed_by_k[1]);
  CHECK(a.outer_only == a.failed);
  for (std::size_t k = 2; k <= 4; ++k) CHECK(a.failed_by_k[k] == 0);
  CHECK(a.transcript == b.transcript);
  // Count k = 1 instances independently from the transcript.
  std::size_t k1 = 0;
  for (const std::string& line : a.transcript) k1 += line.find(" k=1 ") != std::string::npos;
  CHECK(k1 == a.failed);
  CHECK(fuzz_lemma22(0, 1).passed == 0);
  CHECK(fuzz_lemma22(5, 1).transcript != fuzz_lemma22(5, 2).transcript);
}

TEST_CASE("trace bounds") {
  const TraceBoundReport r2 = trace_bound_check(make_field(2), 50);
  CHECK(r2.violations.empty());
  REQUIRE(r2.min_alpha_trace.has_value());
  CHECK(*r2.min_alpha_trace == 4);
  const TraceBoundReport r5 = trace_bound_check(make_field(5), 50);
  CHECK(r5.violations.empty());
  CHECK(*r5.min_beta_square_trace == 3);
  const TraceBoundReport r0 = trace_bound_check(make_field(5), 0);
  CHECK(r0.alphas_checked == 0);
  CHECK(r0.betas_checked == 0);
}

TEST_CASE("threshold polynomial") {
  const ThresholdReport t15 = threshold_polynomial(Int(15));
  CHECK(t15.paper_threshold == Int("29524500000005"));
  CHECK(t15.coefficients[3] == 11520 * pow_int(15, 8));
  CHECK(t15.positive_at_threshold);
  CHECK(t15.dominance_certified);
  CHECK(t15.negative_at_c3);
  CHECK(t15.minimal_threshold <= t15.paper_threshold);
  CHECK(threshold_quartic(t15.coefficients, t15.minimal_threshold) > 0);
  CHECK(threshold_quartic(t15.coefficients, t15.minimal_threshold - 1) <= 0);

  const ThresholdReport t290 = threshold_polynomial(Int(290));
  CHECK(t290.paper_threshold == Int("576283867731072000000005"));
  CHECK(t290.coefficients[3] == 11520 * pow_int(290, 8));
  CHECK(t290.positive_at_threshold);
  CHECK(t290.dominance_certified);

  CHECK_THROWS_AS(threshold_polynomial(Int(1)), DomainError);

  const QElem big(t15.paper_threshold);
  CHECK(threshold_quartic(t15.coefficients, big).sign() > 0);
  CHECK(discriminant_exceeds(make_field(5), Int(2)));
  CHECK_FALSE(discriminant_exceeds(make_field(5), t15.paper_threshold));
}
