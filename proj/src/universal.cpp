#include "uqf/universal.hpp"

#include <atomic>

#include "uqf/parallel.hpp"
#include "uqf/represent.hpp"

namespace uqf {

namespace {

CriterionSet make_criterion(CriterionLabel label, int bound) {
  CriterionSet c{label, {}};
  for (int n = 1; n <= bound; ++n) c.targets.emplace_back(n);
  return c;
}

Rat principal_det(const RatMatrix& g, std::span<const std::size_t> idx) {
  return det_exact(g.principal(idx));
}

}  // namespace

CriterionSet classic15() { return make_criterion(CriterionLabel::Classic15, 15); }

CriterionSet nonclassic290() { return make_criterion(CriterionLabel::NonClassic290, 290); }

CriterionSet criterion_for(const LatticeDesc& lat) {
  return lat.classic() ? classic15() : nonclassic290();
}

std::optional<Int> z_first_failure(const RatMatrix& gram, const CriterionSet& crit) {
  for (const Int& n : crit.targets) {
    if (!z_represents(gram, n)) return n;
  }
  return std::nullopt;
}

bool z_universal(const RatMatrix& gram, const CriterionSet& crit) {
  return !z_first_failure(gram, crit).has_value();
}

UniversalityReport universal_up_to(const LatticeDesc& lat, const Int& tr_max) {
  const std::vector<OInt> targets = enumerate_totally_positive(lat.field(), tr_max);
  // Index of the least failing target found so far; later targets are skipped.
  std::atomic<std::size_t> first_bad{targets.size()};
  parallel_for(targets.size(), [&](std::size_t i) {
    if (i > first_bad.load()) return;
    if (represents(lat, targets[i])) return;
    std::size_t cur = first_bad.load();
    while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
    }
  });
  UniversalityReport r;
  const std::size_t bad = first_bad.load();
  r.targets_checked = bad == targets.size() ? targets.size() : bad + 1;
  if (bad != targets.size()) {
    r.pass = false;
    r.first_failure = targets[bad];
  }
  return r;
}

EscalationResult escalate_independent_quadruple(const LatticeDesc& lat) {
  return escalate_independent_quadruple(lat, criterion_for(lat));
}

EscalationResult escalate_independent_quadruple(const LatticeDesc& lat, const CriterionSet& crit) {
  using Kind = EscalationError::Kind;
  const int count = static_cast<int>(crit.targets.size());
  EscalationResult out;
  out.vectors.resize(count);
  std::vector<std::optional<RepWitness>> found(count);
  parallel_for(count, [&](std::size_t i) {
    found[i] = represents(lat, OInt(lat.field(), crit.targets[i]));
  });
  for (int i = 0; i < count; ++i) {
    if (!found[i]) {
      throw EscalationError(Kind::MissingNorm, i + 1,
                            "norm " + std::to_string(i + 1) + " is not represented");
    }
    out.vectors[i] = std::move(found[i]->vector);
  }

  // Integrality: B(v_i, v_j) in Z (classic) or (1/2) Z.
  const Int max_den = lat.classic() ? 1 : 2;
  const bool hypothesis = Int(lat.field().delta) > 4 * crit.bound() * crit.bound();
  out.gram = RatMatrix(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i; j < count; ++j) {
      const QElem b = bilinear(lat, out.vectors[i], out.vectors[j]);
      if (!b.is_rational() || b.den() > max_den) {
        throw EscalationError(
            Kind::IntegralityFailure, i + 1,
            "B(v_" + std::to_string(i + 1) + ", v_" + std::to_string(j + 1) + ") = " + b.str() +
                (hypothesis ? " violates integrality although the discriminant bound holds"
                            : " is not integral (discriminant too small for the integrality bound)"));
      }
      out.gram(i, j) = b.rational_value();
      out.gram(j, i) = out.gram(i, j);
    }
  }

  // Greedy rank extension, then exhaustive 4-subsets of the first 15.
  std::vector<std::size_t> chosen;
  for (int i = 0; i < count && chosen.size() < 4; ++i) {
    chosen.push_back(i);
    if (sgn(principal_det(out.gram, chosen)) <= 0) chosen.pop_back();
  }
  if (chosen.size() < 4) {
    out.used_fallback = true;
    chosen.clear();
    const std::size_t m = std::min(count, 15);
    for (std::size_t a = 0; a < m && chosen.empty(); ++a)
      for (std::size_t b = a + 1; b < m && chosen.empty(); ++b)
        for (std::size_t c = b + 1; c < m && chosen.empty(); ++c)
          for (std::size_t d = c + 1; d < m && chosen.empty(); ++d) {
            const std::array<std::size_t, 4> idx{a, b, c, d};
            if (sgn(principal_det(out.gram, idx)) > 0) chosen.assign(idx.begin(), idx.end());
          }
  }
  if (chosen.size() < 4) {
    throw EscalationError(Kind::NoIndependentQuadruple, 0,
                          "no four of v_1..v_" + std::to_string(count) +
                              " are linearly independent (hypotheses of the escalation fail)");
  }
  for (int i = 0; i < 4; ++i) out.norms[i] = static_cast<int>(chosen[i]) + 1;
  out.quad_gram = out.gram.principal(chosen);
  return out;
}

std::vector<LatticeDesc> search_candidates(const FieldCtx& field, int rank, const Int& coeff_bound,
                                           const Int& tr_max) {
  if (rank < 1 || rank > 4) throw DomainError("rank must be in 1..4");
  if (coeff_bound > 10) throw DomainError("coeff_bound must be at most 10");
  const std::vector<OInt> coeffs = enumerate_totally_positive(field, coeff_bound);
  std::vector<LatticeDesc> out;
  if (coeffs.empty()) return out;
  // Non-decreasing index tuples.
  std::vector<std::size_t> idx(rank, 0);
  while (true) {
    std::vector<OInt> diag;
    for (std::size_t i : idx) diag.push_back(coeffs[i]);
    LatticeDesc lat = diagonal_lattice(field, diag);
    if (universal_up_to(lat, tr_max).pass) out.push_back(std::move(lat));
    int pos = rank - 1;
    while (pos >= 0 && idx[pos] + 1 == coeffs.size()) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < rank; ++j) idx[j] = idx[pos];
  }
  return out;
}

}  // namespace uqf
