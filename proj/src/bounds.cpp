#include "uqf/bounds.hpp"

#include <stdexcept>

#include "uqf/errors.hpp"

namespace uqf {

namespace {

Int power(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

QElem qpow(const QElem& x, unsigned e) {
  QElem r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

void require_bounded(const QMatrix& m, const Int& N, const char* name) {
  const QElem bound(N);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (compare(abs_first(m(i, j)), bound) > 0) {
        throw DomainError(std::string(name) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] = " + m(i, j).str() + " exceeds N = " + N.get_str());
      }
}

std::string link(const char* lhs, const char* op, const char* rhs) {
  return std::string(lhs) + " " + op + " " + rhs + " fails";
}

}  // namespace

Int lemma22_coefficient(unsigned k, unsigned s, unsigned l, const Int& N) {
  if (l > k) throw DomainError("lemma22_coefficient needs l <= k");
  if (N <= 1) throw DomainError("lemma22_coefficient needs N > 1");
  const Int count = binomial(k, l) * factorial(k) * factorial(k + s - l) / factorial(k - l);
  return count * power(N, k + s);
}

Int lemma22_outer_coefficient(unsigned k, unsigned s, const Int& N) {
  if (N <= 1) throw DomainError("lemma22_outer_coefficient needs N > 1");
  return factorial(k) * factorial(k + s) * power(N, k + s);
}

std::vector<QElem> perturbed_det_coefficients(const QMatrix& A, const QMatrix& B) {
  const std::size_t k = A.rows();
  const std::size_t n = B.rows();
  if (!A.is_square() || !B.is_square() || k > n) {
    throw DimensionMismatch("need A k x k and B (k+s) x (k+s)");
  }
  std::vector<QElem> d(k + 1, QElem(0));
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    QMatrix m = B;
    unsigned l = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (1UL << i))) continue;
      ++l;
      for (std::size_t j = 0; j < n; ++j) m(i, j) = j < k ? A(i, j) : QElem(0);
    }
    d[l] += det_exact(m);
  }
  return d;
}

namespace {

std::string inner_failure(const BoundChain& c) {
  if (compare(c.inner_lower, c.det_value) > 0) return link("inner_lower", "<=", "det");
  if (compare(c.det_value, c.inner_upper) > 0) return link("det", "<=", "inner_upper");
  if (!(c.coefficients.at(c.k) == c.leading)) return "leading coefficient differs from det(A) det(B_4)";
  for (unsigned l = 0; l < c.k; ++l) {
    if (compare(abs_first(c.coefficients[l]), QElem(lemma22_coefficient(c.k, c.s, l, c.N))) > 0) {
      return "coefficient d_" + std::to_string(l) + " exceeds its bound";
    }
  }
  return {};
}

}  // namespace

bool BoundChain::inner_holds() const { return inner_failure(*this).empty(); }

std::string BoundChain::failure() const {
  if (compare(outer_lower, inner_lower) >= 0) return link("outer_lower", "<", "inner_lower");
  if (std::string f = inner_failure(*this); !f.empty()) return f;
  if (compare(inner_upper, outer_upper) >= 0) return link("inner_upper", "<", "outer_upper");
  return {};
}

BoundChain lemma22_chain(const QMatrix& A, const QMatrix& B, const QElem& x, const Int& N) {
  if (N <= 1) throw DomainError("N must exceed 1");
  if (x.sign() <= 0) throw DomainError("x must be positive");
  if (!A.is_square() || !B.is_square() || A.rows() > B.rows()) {
    throw DimensionMismatch("need A k x k and B (k+s) x (k+s)");
  }
  require_bounded(A, N, "A");
  require_bounded(B, N, "B");

  BoundChain c;
  c.k = static_cast<unsigned>(A.rows());
  c.s = static_cast<unsigned>(B.rows() - A.rows());
  c.N = N;
  c.x = x;

  QMatrix m = B;
  for (std::size_t i = 0; i < c.k; ++i)
    for (std::size_t j = 0; j < c.k; ++j) m(i, j) += A(i, j) * x;
  c.det_value = det_exact(m);

  c.coefficients = perturbed_det_coefficients(A, B);
  QElem poly(0);
  for (unsigned l = 0; l <= c.k; ++l) poly += c.coefficients[l] * qpow(x, l);
  if (!(poly == c.det_value)) {
    throw std::logic_error("coefficient expansion disagrees with the direct determinant");
  }

  QElem det_b4(1);
  if (c.s > 0) {
    std::vector<std::size_t> tail;
    for (std::size_t i = c.k; i < B.rows(); ++i) tail.push_back(i);
    det_b4 = det_exact(B.principal(tail));
  }
  c.leading = det_exact(A) * det_b4;

  QElem inner(0);
  QElem geometric(0);
  for (unsigned l = 0; l < c.k; ++l) {
    const QElem xl = qpow(x, l);
    inner += QElem(lemma22_coefficient(c.k, c.s, l, N)) * xl;
    geometric += xl;
  }
  const QElem outer = QElem(lemma22_outer_coefficient(c.k, c.s, N)) * geometric;
  const QElem head = c.leading * qpow(x, c.k);
  c.outer_lower = head - outer;
  c.inner_lower = head - inner;
  c.inner_upper = head + inner;
  c.outer_upper = head + outer;
  return c;
}

Lemma22Instance random_lemma22_instance(Rng& rng) {
  Lemma22Instance in;
  const auto k = static_cast<std::size_t>(rng.range(1, 4));
  const auto s = static_cast<std::size_t>(rng.range(0, 4));
  const std::int64_t n = rng.range(2, 15);
  in.N = n;
  in.A = QMatrix(k, k);
  in.B = QMatrix(k + s, k + s);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) in.A(i, j) = QElem(rng.range(-n, n));
  for (std::size_t i = 0; i < k + s; ++i)
    for (std::size_t j = 0; j < k + s; ++j) in.B(i, j) = QElem(rng.range(-n, n));
  // Magnitudes spread over 10^0 .. 10^16 with denominators up to 1000.
  const std::int64_t den = rng.range(1, 1000);
  std::uint64_t scale = 1;
  for (std::int64_t e = rng.range(0, 16); e > 0; --e) scale *= 10;
  const std::uint64_t num = 1 + rng.below(scale * static_cast<std::uint64_t>(den));
  in.x = QElem(make_rat(Int(std::to_string(num)), Int(den)));
  return in;
}

Lemma22FuzzReport fuzz_lemma22(std::size_t iters, std::uint64_t seed) {
  Rng rng(seed);
  Lemma22FuzzReport r;
  for (std::size_t i = 0; i < iters; ++i) {
    const Lemma22Instance in = random_lemma22_instance(rng);
    const BoundChain c = lemma22_chain(in.A, in.B, in.x, in.N);
    const std::string fail = c.failure();
    if (fail.empty()) {
      ++r.passed;
    } else {
      ++r.failed;
      ++r.failed_by_k.at(c.k);
      if (c.inner_holds()) ++r.outer_only;
    }
    r.transcript.push_back(std::to_string(i) + " k=" + std::to_string(c.k) + " s=" + std::to_string(c.s) +
                           " N=" + in.N.get_str() + " x=" + in.x.str() + " det=" + c.det_value.str() +
                           (fail.empty() ? " ok" : " FAIL " + fail));
  }
  return r;
}

TraceBoundReport trace_bound_check(const FieldCtx& field, long box) {
  TraceBoundReport r;
  const Int delta(field.delta);
  for (long a = -box; a <= box; ++a) {
    for (long b = -box; b <= box; ++b) {
      if (b == 0) continue;
      const OInt x(field, a, b);
      ++r.betas_checked;
      const Int sq_trace = (x * x).trace();
      if (2 * sq_trace < delta) {
        r.violations.push_back("tr((" + x.str() + ")^2) = " + sq_trace.get_str() + " < Delta/2");
      }
      if (!r.min_beta_square_trace || sq_trace < *r.min_beta_square_trace) {
        r.min_beta_square_trace = sq_trace;
      }
      if (!x.is_totally_positive()) continue;
      ++r.alphas_checked;
      const Int t = x.trace();
      if (t * t < delta) {
        r.violations.push_back("tr(" + x.str() + ") = " + t.get_str() + " < sqrt(Delta)");
      }
      if (!r.min_alpha_trace || t < *r.min_alpha_trace) r.min_alpha_trace = t;
    }
  }
  return r;
}

Int threshold_quartic(const std::vector<Int>& c, const Int& x) {
  const Int x2 = x * x;
  return x2 * x2 - c[3] * x2 * x - c[2] * x2 - c[1] * x - c[0];
}

QElem threshold_quartic(const std::vector<Int>& c, const QElem& x) {
  const QElem x2 = x * x;
  return x2 * x2 - QElem(c[3]) * x2 * x - QElem(c[2]) * x2 - QElem(c[1]) * x - QElem(c[0]);
}

ThresholdReport threshold_polynomial(const Int& N) {
  if (N <= 1) throw DomainError("threshold needs N > 1");
  ThresholdReport r;
  r.N = N;
  for (unsigned l = 0; l < 4; ++l) r.coefficients.push_back(lemma22_coefficient(4, 4, l, N));
  const std::vector<Int>& c = r.coefficients;
  r.paper_threshold = c[3] + 5;
  const Int& t = r.paper_threshold;
  r.positive_at_threshold = threshold_quartic(c, t) > 0;
  // x^4 - c_3 x^3 >= 5 x^3 for x >= c_3 + 5, and 5 > c_2/x + c_1/x^2 + c_0/x^3
  // only improves as x grows.
  r.dominance_certified = 5 * t * t * t > c[2] * t * t + c[1] * t + c[0];
  r.negative_at_c3 = threshold_quartic(c, c[3]) < 0;

  // One sign change in the coefficients: a single positive root, so the
  // quartic is negative before it and positive after.
  Int lo = c[3];
  Int hi = t;
  while (threshold_quartic(c, hi) <= 0) hi *= 2;
  while (hi - lo > 1) {
    const Int mid = (lo + hi) / 2;
    if (threshold_quartic(c, mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  r.minimal_threshold = hi;
  return r;
}

bool discriminant_exceeds(const FieldCtx& field, const Int& threshold) {
  return Int(field.delta) > threshold * threshold;
}

}  // namespace uqf
