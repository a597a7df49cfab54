#pragma once

// Representation of totally positive integers by positive definite lattices.

#include <optional>
#include <vector>

#include "uqf/lattice.hpp"

namespace uqf {

/// A vector x with Q(x) equal to the requested target.
struct RepWitness {
  VectorOF vector;
};

/// Lexicographic order on coordinates (a_1, b_1, a_2, b_2, ...).
bool lex_less(const VectorOF& x, const VectorOF& y);

/// The lexicographically first witness of Q(x) = t, negated if needed so its
/// first nonzero coordinate is positive; nothing if t is not represented.
/// Throws NotTotallyPositive for a target that is neither zero nor totally
/// positive.
std::optional<RepWitness> represents(const LatticeDesc& lat, const OInt& t);

/// Up to `cap` witnesses in lexicographic order.
std::vector<RepWitness> enumerate_representations(const LatticeDesc& lat, const OInt& t,
                                                  std::size_t cap);

/// Exhaustive scan over |a_i|, |b_i| <= box. Test oracle only.
std::optional<RepWitness> naive_represents(const LatticeDesc& lat, const OInt& t, long box);

/// A coordinate box large enough for naive_represents to be complete for
/// targets with trace <= tr_bound (derived from the inverse trace form).
long naive_box_for_trace(const LatticeDesc& lat, const Int& tr_bound);

/// Integer solutions of x^T G x = n for a positive definite rational G
/// (an integral or half-integral Z-lattice), lexicographically first.
std::optional<std::vector<Int>> z_represents(const RatMatrix& gram, const Int& n);

}  // namespace uqf
