#pragma once

// Determinant perturbation bounds for det(blockdiag(A, 0) x + B), trace lower
// bounds in O_F, and the quartic thresholds built from them.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uqf/exact.hpp"
#include "uqf/random.hpp"

namespace uqf {

/// Bound on |d_l|, the x^l coefficient of det(blockdiag(A, 0) x + B):
///   C(k, l) * k! (k+s-l)! / (k-l)! * N^(k+s).
/// Requires l <= k and N > 1.
Int lemma22_coefficient(unsigned k, unsigned s, unsigned l, const Int& N);

/// k! (k+s)! N^(k+s), the uniform coefficient of the outer bounds.
Int lemma22_outer_coefficient(unsigned k, unsigned s, const Int& N);

/// Coefficients d_0 .. d_k of x in det(blockdiag(A, 0) x + B), by expanding the
/// first k rows multilinearly.
std::vector<QElem> perturbed_det_coefficients(const QMatrix& A, const QMatrix& B);

/// The five-term chain
///   outer_lower < inner_lower <= det <= inner_upper < outer_upper.
struct BoundChain {
  unsigned k = 0;
  unsigned s = 0;
  Int N;
  QElem x;

  QElem det_value;
  QElem leading;  // det(A) det(B_4), with det(B_4) = 1 when s = 0
  std::vector<QElem> coefficients;
  QElem outer_lower, inner_lower, inner_upper, outer_upper;

  /// False for k = 1: the single coefficient bound (1+s)! N^(1+s) equals the
  /// outer one, so outer_lower = inner_lower and both strict links fail.
  bool outer_strict_expected() const { return k >= 2; }
  /// Every link as stated, strict outer links included.
  bool holds() const { return failure().empty(); }
  /// inner_lower <= det <= inner_upper and the coefficient bounds.
  bool inner_holds() const;
  /// Empty when every link holds, else a description of the first broken one.
  std::string failure() const;
};

/// Throws DomainError for entries exceeding N (in absolute value, first
/// embedding), N <= 1, x <= 0, or mismatched shapes.
BoundChain lemma22_chain(const QMatrix& A, const QMatrix& B, const QElem& x, const Int& N);

struct Lemma22Instance {
  QMatrix A;
  QMatrix B;
  QElem x;
  Int N;
};

/// k in 1..4, s in 0..4, N in 2..15, entries in [-N, N], rational x in (0, 10^16].
Lemma22Instance random_lemma22_instance(Rng& rng);

struct Lemma22FuzzReport {
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Failures indexed by k (entry 0 unused).
  std::array<std::size_t, 5> failed_by_k{};
  /// Failures whose inner links and coefficient bounds still hold.
  std::size_t outer_only = 0;
  /// One line per instance: index, k, s, N, x, det, verdict.
  std::vector<std::string> transcript;
};

Lemma22FuzzReport fuzz_lemma22(std::size_t iters, std::uint64_t seed);

struct TraceBoundReport {
  std::size_t alphas_checked = 0;
  std::size_t betas_checked = 0;
  std::vector<std::string> violations;
  std::optional<Int> min_alpha_trace;
  std::optional<Int> min_beta_square_trace;
};

/// For a + b omega with |a|, |b| <= box and b != 0: totally positive alpha
/// has tr(alpha)^2 >= Delta, and every beta has 2 tr(beta^2) >= Delta.
TraceBoundReport trace_bound_check(const FieldCtx& field, long box);

struct ThresholdReport {
  Int N;
  /// c_0 .. c_3 with c_l = lemma22_coefficient(4, 4, l, N).
  std::vector<Int> coefficients;
  /// c_3 + 5.
  Int paper_threshold;
  /// Least integer m with quartic(x) > 0 for all x >= m.
  Int minimal_threshold;
  bool positive_at_threshold = false;
  /// 5 x^3 > c_2 x^2 + c_1 x + c_0 at x = paper_threshold, which carries
  /// positivity to every larger x.
  bool dominance_certified = false;
  bool negative_at_c3 = false;
};

/// x^4 - c_3 x^3 - c_2 x^2 - c_1 x - c_0.
Int threshold_quartic(const std::vector<Int>& c, const Int& x);
QElem threshold_quartic(const std::vector<Int>& c, const QElem& x);

/// Throws DomainError for N <= 1.
ThresholdReport threshold_polynomial(const Int& N);

/// Delta_d > T^2 for the threshold T of criterion bound N.
bool discriminant_exceeds(const FieldCtx& field, const Int& threshold);

}  // namespace uqf
