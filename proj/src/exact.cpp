#include "uqf/exact.hpp"

#include <algorithm>
#include <numeric>

#include "uqf/errors.hpp"

namespace uqf {

namespace {

bool is_zero(const QElem& x) { return x.is_zero(); }
bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Gaussian elimination over a field with first-nonzero pivoting.
template <class T>
T field_det(Matrix<T> m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(m(piv, c))) ++piv;
    if (piv == n) return T(0);
    if (piv != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    const T inv = T(1) / m(c, c);
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      const T f = m(r, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

void require_symmetric(const QMatrix& m) {
  if (!m.is_symmetric()) throw NotSymmetric("matrix is not symmetric");
}

bool psd_in_embedding(QMatrix m, Embedding e) {
  std::vector<std::size_t> active(m.rows());
  std::iota(active.begin(), active.end(), 0);
  while (!active.empty()) {
    std::size_t pivot = m.rows();
    for (std::size_t i : active) {
      const int s = sign_in(m(i, i), e);
      if (s < 0) return false;
      if (s > 0 && pivot == m.rows()) pivot = i;
    }
    if (pivot == m.rows()) {
      // Zero diagonal: any nonzero off-diagonal gives a negative 2x2 minor.
      for (std::size_t i : active)
        for (std::size_t j : active)
          if (!m(i, j).is_zero()) return false;
      return true;
    }
    active.erase(std::find(active.begin(), active.end(), pivot));
    const QElem inv = m(pivot, pivot).inverse();
    for (std::size_t j : active) {
      if (m(j, pivot).is_zero()) continue;
      const QElem f = m(j, pivot) * inv;
      for (std::size_t k : active) m(j, k) -= f * m(pivot, k);
    }
  }
  return true;
}

}  // namespace

int sign_in(const QElem& x, Embedding e) {
  return e == Embedding::Identity ? x.sign() : x.conj_sign();
}

QElem det_exact(const QMatrix& m) { return field_det(m); }

Rat det_exact(const RatMatrix& m) { return field_det(m); }

Int det_exact(const IntMatrix& in) {
  if (!in.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  IntMatrix m = in;
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank_exact(const QMatrix& in) {
  QMatrix m = in;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(piv, j));
    const QElem inv = m(rank, c).inverse();
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c).is_zero()) continue;
      const QElem f = m(r, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

bool is_pd_exact(const QMatrix& in) {
  require_symmetric(in);
  // Leading minors are running products of the elimination pivots.
  QMatrix m = in;
  const std::size_t n = m.rows();
  QElem minor(1);
  for (std::size_t c = 0; c < n; ++c) {
    minor *= m(c, c);
    if (!minor.is_totally_positive()) return false;
    const QElem inv = m(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const QElem f = m(r, c) * inv;
      for (std::size_t j = c + 1; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return true;
}

bool is_psd_by_minors(const QMatrix& m) {
  require_symmetric(m);
  const std::size_t n = m.rows();
  if (n > 20) throw DomainError("principal-minor enumeration is limited to small matrices");
  std::vector<std::size_t> idx;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    idx.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    if (!det_exact(m.principal(idx)).is_totally_nonnegative()) return false;
  }
  return true;
}

bool is_psd_by_elimination(const QMatrix& m) {
  require_symmetric(m);
  return psd_in_embedding(m, Embedding::Identity) && psd_in_embedding(m, Embedding::Conjugate);
}

bool is_psd_exact(const QMatrix& m) {
  return m.rows() <= 8 ? is_psd_by_minors(m) : is_psd_by_elimination(m);
}

RatMatrix RatCholesky::reconstruct() const {
  const std::size_t n = pivots.size();
  RatMatrix out(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += upper(k, i) * pivots[k] * upper(k, j);
      out(i, j) = s;
    }
  return out;
}

RatCholesky rational_cholesky(const RatMatrix& m) {
  if (!m.is_symmetric()) throw NotSymmetric("matrix is not symmetric");
  const std::size_t n = m.rows();
  RatCholesky out;
  out.pivots.resize(n);
  out.upper = RatMatrix::identity(n);
  RatMatrix work = m;
  for (std::size_t k = 0; k < n; ++k) {
    const Rat p = work(k, k);
    if (sgn(p) <= 0) {
      throw NotPositiveDefinite("pivot " + std::to_string(k) + " is " + p.get_str() +
                                ", matrix is not positive definite");
    }
    out.pivots[k] = p;
    for (std::size_t j = k + 1; j < n; ++j) out.upper(k, j) = work(k, j) / p;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) work(i, j) -= out.upper(k, i) * work(k, j);
  }
  return out;
}

QMatrix to_qmatrix(const RatMatrix& m) {
  return m.map([](const Rat& r) { return QElem(r); });
}

QMatrix to_qmatrix(const IntMatrix& m) {
  return m.map([](const Int& v) { return QElem(v); });
}

RatMatrix to_rational(const QMatrix& m) {
  return m.map([](const QElem& x) {
    if (!x.is_rational()) throw DomainError("matrix has an irrational entry " + x.str());
    return x.rational_value();
  });
}

}  // namespace uqf
