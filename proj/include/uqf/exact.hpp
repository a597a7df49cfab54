#pragma once

// Exact linear algebra over Q and Q(sqrt d).

#include <cstddef>
#include <vector>

#include "uqf/matrix.hpp"
#include "uqf/qfield.hpp"

namespace uqf {

using QMatrix = Matrix<QElem>;
using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

/// Which real embedding of Q(sqrt d) to evaluate in.
enum class Embedding { Identity, Conjugate };

int sign_in(const QElem& x, Embedding e);

QElem det_exact(const QMatrix& m);
Rat det_exact(const RatMatrix& m);
/// Fraction-free (Bareiss) elimination.
Int det_exact(const IntMatrix& m);

std::size_t rank_exact(const QMatrix& m);

/// Sylvester: every leading principal minor totally positive.
bool is_pd_exact(const QMatrix& m);
/// Positive semidefinite under both embeddings. Uses all principal minors for
/// n <= 8 and symmetric pivoted elimination above that.
bool is_psd_exact(const QMatrix& m);
bool is_psd_by_minors(const QMatrix& m);
bool is_psd_by_elimination(const QMatrix& m);

/// M = U^T diag(pivots) U with U unit upper triangular.
struct RatCholesky {
  std::vector<Rat> pivots;
  RatMatrix upper;

  RatMatrix reconstruct() const;
};

/// Throws NotPositiveDefinite when a pivot is <= 0.
RatCholesky rational_cholesky(const RatMatrix& m);

QMatrix to_qmatrix(const RatMatrix& m);
QMatrix to_qmatrix(const IntMatrix& m);
/// Throws DomainError if some entry is irrational.
RatMatrix to_rational(const QMatrix& m);

}  // namespace uqf
