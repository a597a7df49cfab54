#pragma once

// Universality criteria: finite criterion sets over Z, truncated
// universality over O_F, escalation to four independent vectors, and a small
// candidate search.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uqf/errors.hpp"
#include "uqf/lattice.hpp"

namespace uqf {

enum class CriterionLabel { Classic15, NonClassic290 };

/// The integers whose representation decides universality of a Z-lattice.
struct CriterionSet {
  CriterionLabel label;
  std::vector<Int> targets;

  /// Largest target: 15 or 290.
  Int bound() const { return targets.back(); }
  std::string name() const { return label == CriterionLabel::Classic15 ? "classic15" : "nonclassic290"; }
};

CriterionSet classic15();
CriterionSet nonclassic290();
/// classic15 for classic lattices, nonclassic290 otherwise.
CriterionSet criterion_for(const LatticeDesc& lat);

/// Smallest target of `crit` not represented by the Z-lattice with Gram `gram`.
/// Throws NotPositiveDefinite for an indefinite Gram matrix.
std::optional<Int> z_first_failure(const RatMatrix& gram, const CriterionSet& crit);
bool z_universal(const RatMatrix& gram, const CriterionSet& crit);

struct UniversalityReport {
  bool pass = true;
  /// Least unrepresented element in (trace, b) order.
  std::optional<OInt> first_failure;
  std::size_t targets_checked = 0;
};

/// Checks every totally positive integer of trace <= tr_max.
UniversalityReport universal_up_to(const LatticeDesc& lat, const Int& tr_max);

struct EscalationResult {
  /// v_n with Q(v_n) = n, for n = 1 .. crit.bound(); entry n - 1 holds v_n.
  std::vector<VectorOF> vectors;
  /// (B(v_i, v_j)); integral for classic lattices, half-integral otherwise.
  RatMatrix gram;
  /// Norms n of the four chosen vectors, increasing.
  std::array<int, 4> norms{};
  RatMatrix quad_gram;
  bool used_fallback = false;
};

class EscalationError : public Error {
 public:
  enum class Kind { MissingNorm, IntegralityFailure, NoIndependentQuadruple };
  EscalationError(Kind kind, int norm, const std::string& what)
      : Error(what), kind_(kind), norm_(norm) {}
  Kind kind() const { return kind_; }
  /// The missing norm, or the first norm of an offending pair.
  int norm() const { return norm_; }

 private:
  Kind kind_;
  int norm_;
};

/// Picks v_n for each criterion target and four of them with a positive
/// definite Gram matrix. Throws EscalationError.
EscalationResult escalate_independent_quadruple(const LatticeDesc& lat);
EscalationResult escalate_independent_quadruple(const LatticeDesc& lat, const CriterionSet& crit);

/// Diagonal classic lattices <a_1, ..., a_rank> (a_i totally positive with
/// trace <= coeff_bound, listed without permutation duplicates) that pass
/// universal_up_to(., tr_max).
std::vector<LatticeDesc> search_candidates(const FieldCtx& field, int rank, const Int& coeff_bound,
                                           const Int& tr_max);

}  // namespace uqf
