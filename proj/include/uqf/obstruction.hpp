#pragma once

// The rank obstruction pipeline: vectors v_k with Q(v_k) = m_k + k omega,
// their Gram decomposition sqrt(Delta) a + eps, an independent quadruple,
// the cross block C, and the exact 8 x 8 determinant certificate.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uqf/bounds.hpp"
#include "uqf/errors.hpp"
#include "uqf/lattice.hpp"
#include "uqf/universal.hpp"

namespace uqf {

/// A stated hypothesis of the construction does not hold for the input.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// (4 * 4! * 4! * N^4), the square root of the discriminant bound under which
/// the canonical decomposition is guaranteed.
Int decomposition_bound(const Int& N);

struct KVectors {
  /// Entry k - 1 holds v_k, when m_k + k omega is represented.
  std::vector<std::optional<VectorOF>> vectors;
  std::vector<int> missing;

  bool complete() const { return missing.empty(); }
  std::vector<VectorOF> family() const;
};

/// Lexicographically first v_k with Q(v_k) = m_k + k omega for k = 1 .. count.
KVectors extract_kvectors(const LatticeDesc& lat, int count = 15);

/// G = sqrt(Delta) a + eps. Since G - conj(G) = b (omega - conj(omega)) for the
/// omega-coordinate b, a is that coordinate and eps_ij = conj(G_ij).
struct GramDecomposition {
  FieldCtx field;
  /// Integers when G has entries in O_F; halves for non-classic entries.
  RatMatrix a;
  QMatrix eps;

  QMatrix reconstruct() const;
  bool integral() const;
  /// Every |eps_ij| < 1.
  bool eps_bounded() const;
};

GramDecomposition decompose_gram(const QMatrix& gram, const FieldCtx& field);

/// Shape checks for a decomposition of the canonical family v_1 .. v_n:
/// a_kk = k, a_ij^2 <= i j, |eps_ij| < 1.
struct CanonicalCheck {
  bool diagonal_ok = true;
  bool a_bounded = true;
  bool eps_bounded = true;
  std::vector<std::string> violations;

  bool ok() const { return diagonal_ok && a_bounded && eps_bounded; }
};

CanonicalCheck check_canonical(const GramDecomposition& dec);

struct QuadrupleSelection {
  /// Zero-based indices into the family (index i is v_{i+1}).
  std::array<std::size_t, 4> indices{};
  bool fast_path = false;
  Rat minor_det;
  /// Principal patterns of size <= 4 of a with negative determinant.
  std::vector<std::string> minor_violations;
};

/// Four indices whose a-minor has positive determinant. Tries v_1, v_2, then
/// v_3 or v_6 by a_12, then a norm h the ternary minor misses; falls back to
/// the first qualifying 4-subset. Throws HypothesisViolation if none exists.
QuadrupleSelection select_quadruple(const GramDecomposition& dec);

/// Admissible range [-ceil(sqrt N), ceil(sqrt N) - 1] for cross entries;
/// [-4, 3] for N = 15.
std::pair<Int, Int> cij_range(const Int& N);

struct CijScan {
  QMatrix c;
  bool integral = true;
  bool in_range = true;
  Int range_lo, range_hi;
  std::optional<Rat> observed_min, observed_max;
  bool above_threshold = false;
  std::vector<std::string> diagnostics;

  bool ok() const { return integral && in_range; }
};

/// c_ij = B(v_i, w_j). Classic lattices need rational integers, non-classic
/// ones halves. A non-rational c_ij gets the exact check that
/// Q(v_i) Q(w_j) - c_ij^2 is negative in the first embedding.
CijScan cij_scan(const LatticeDesc& lat, std::span<const VectorOF> quad_vectors,
                 std::span<const VectorOF> int_vectors, const Int& N = 15);

/// The 8 x 8 Gram matrix sqrt(Delta) blockdiag(A, 0) + [[D, C], [C^T, B]].
struct EightBlock {
  FieldCtx field;
  Int N = 15;
  bool classic = true;
  RatMatrix A;  // 4 x 4, symmetric positive definite
  RatMatrix B;  // 4 x 4, symmetric positive definite
  RatMatrix C;  // 4 x 4, entries in cij_range(N)
  QMatrix D;    // 4 x 4, symmetric

  /// Throws DomainError / NotSymmetric / NotPositiveDefinite.
  void validate() const;
  /// [[D, C], [C^T, B]].
  QMatrix lower_block() const;
  QMatrix assemble() const;
};

enum class Verdict { Independent, Inconclusive };

struct RankCertificate {
  QElem determinant;
  BoundChain chain;
  Verdict verdict = Verdict::Inconclusive;
  bool totally_positive = false;
  bool lower_bound_positive = false;
  std::vector<std::string> diagnostics;
};

RankCertificate assemble_and_certify(const EightBlock& blk);

/// Recomputes the determinant from the stored blocks.
bool reverify(const EightBlock& blk, const QElem& determinant);

struct StageRecord {
  enum class Status { Ok, Failed, Skipped };
  std::string name;
  Status status = Status::Skipped;
  std::string detail;
};

struct ObstructionReport {
  FieldCtx field;
  bool classic = true;
  Int N;
  Int threshold;
  bool above_threshold = false;
  bool decomposition_hypothesis = false;
  bool integrality_hypothesis = false;

  std::vector<StageRecord> stages;
  std::optional<EscalationResult> escalation;
  std::optional<KVectors> kvectors;
  /// Gram matrix of v_1 .. v_N and whether the decomposition reproduces it.
  std::optional<QMatrix> family_gram;
  bool decomposition_round_trip = false;
  std::optional<GramDecomposition> decomposition;
  std::optional<CanonicalCheck> canonical;
  std::optional<QuadrupleSelection> quadruple;
  std::vector<VectorOF> quad_vectors;
  std::vector<VectorOF> int_vectors;
  std::optional<CijScan> cij;
  std::optional<EightBlock> block;
  std::optional<RankCertificate> certificate;

  bool success() const;
  /// Name of the first failed stage, empty on success.
  std::string failed_stage() const;
  std::string threshold_label() const;
};

/// Runs escalation, extraction, decomposition, quadruple selection, the cross
/// block scan and the determinant certificate. Never throws for lattice data;
/// failures are recorded per stage.
ObstructionReport certify_no_rank7(const LatticeDesc& lat);

const char* to_string(StageRecord::Status s);
const char* to_string(Verdict v);

}  // namespace uqf
