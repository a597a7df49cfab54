#pragma once

// Free quadratic O_F-lattices given by a Gram matrix.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "uqf/exact.hpp"
#include "uqf/qfield.hpp"

namespace uqf {

/// Coordinates of a lattice vector, one O_F entry per basis vector.
using VectorOF = std::vector<OInt>;

/// A positive definite free quadratic O_F-lattice.
///
/// Classic lattices have every Gram entry in O_F. Non-classic ones allow
/// off-diagonal entries in (1/2) O_F; the diagonal always lies in O_F.
class LatticeDesc {
 public:
  const FieldCtx& field() const { return field_; }
  std::size_t rank() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  bool classic() const { return classic_; }

  /// G_ii as integers.
  const std::vector<OInt>& diagonal() const { return diag_; }
  /// 2 G_ij as integers (row-major, full matrix).
  const Matrix<OInt>& twice_gram() const { return twice_; }

 private:
  friend LatticeDesc make_lattice(const FieldCtx&, const QMatrix&, bool);

  FieldCtx field_;
  QMatrix gram_;
  bool classic_ = true;
  std::vector<OInt> diag_;
  Matrix<OInt> twice_;
};

/// Validates symmetry, classicality and positive definiteness, in that order.
LatticeDesc make_lattice(const FieldCtx& field, const QMatrix& gram, bool classic);

/// <a_1, ..., a_n>.
LatticeDesc diagonal_lattice(const FieldCtx& field, std::span<const OInt> diag);
/// The sum of n squares.
LatticeDesc identity_lattice(const FieldCtx& field, std::size_t n);

OInt quad_value(const LatticeDesc& lat, const VectorOF& x);
QElem bilinear(const LatticeDesc& lat, const VectorOF& x, const VectorOF& y);

QMatrix gram_of_vectors(const LatticeDesc& lat, std::span<const VectorOF> vs);

/// The integer form T on Z^{2n} with T(coords(x)) = tr(Q(x)).
RatMatrix trace_form(const LatticeDesc& lat);
/// T_lambda(coords(x)) = tr(lambda * Q(x)); positive definite for totally positive lambda.
RatMatrix trace_form(const LatticeDesc& lat, const OInt& twist);

/// (a_1, b_1, a_2, b_2, ...) for x_i = a_i + b_i omega.
std::vector<Int> coordinates(const VectorOF& x);
VectorOF from_coordinates(const FieldCtx& field, std::span<const Int> y);

VectorOF unit_vector(const FieldCtx& field, std::size_t n, std::size_t i);

/// Outcome of checking that a family of integer-norm vectors spans a Z-lattice.
struct SpanCheck {
  bool integral = true;
  /// First (i, j) with B(v_i, v_j) not a rational integer, and its value.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
  QElem counterexample_value;
  /// (B(v_i, v_j)) when integral.
  IntMatrix gram;
};

/// Throws NonIntegralNorm if some Q(v) is not a rational integer.
SpanCheck integral_span_check(const LatticeDesc& lat, std::span<const VectorOF> vs);

}  // namespace uqf
