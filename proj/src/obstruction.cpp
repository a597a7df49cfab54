#include "uqf/obstruction.hpp"

#include "uqf/parallel.hpp"
#include "uqf/represent.hpp"

namespace uqf {

namespace {

std::string idx_name(const char* m, std::size_t i, std::size_t j) {
  return std::string(m) + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

bool rat_pd(const RatMatrix& m) {
  try {
    rational_cholesky(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Int decomposition_bound(const Int& N) {
  return 4 * factorial(4) * factorial(4) * N * N * N * N;
}

std::vector<VectorOF> KVectors::family() const {
  std::vector<VectorOF> out;
  for (const auto& v : vectors)
    if (v) out.push_back(*v);
  return out;
}

KVectors extract_kvectors(const LatticeDesc& lat, int count) {
  KVectors out;
  out.vectors.resize(count);
  parallel_for(count, [&](std::size_t i) {
    const OInt target = kth_target(Int(static_cast<long>(i) + 1), lat.field());
    if (auto w = represents(lat, target)) out.vectors[i] = std::move(w->vector);
  });
  for (int k = 1; k <= count; ++k)
    if (!out.vectors[k - 1]) out.missing.push_back(k);
  return out;
}

// ---------------------------------------------------------------- decomposition

QMatrix GramDecomposition::reconstruct() const {
  const QElem root = sqrt_discriminant(field);
  QMatrix g(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) g(i, j) = root * QElem(a(i, j)) + eps(i, j);
  return g;
}

bool GramDecomposition::integral() const {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_integer(a(i, j))) return false;
  return true;
}

bool GramDecomposition::eps_bounded() const {
  for (std::size_t i = 0; i < eps.rows(); ++i)
    for (std::size_t j = 0; j < eps.cols(); ++j)
      if (compare(abs_first(eps(i, j)), QElem(1)) >= 0) return false;
  return true;
}

GramDecomposition decompose_gram(const QMatrix& gram, const FieldCtx& field) {
  const QElem root = sqrt_discriminant(field);
  GramDecomposition dec;
  dec.field = field;
  dec.a = RatMatrix(gram.rows(), gram.cols());
  dec.eps = QMatrix(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      const QElem& g = gram(i, j);
      if (!g.is_rational() && g.radicand() != field.d) {
        throw DomainError(idx_name("G", i, j) + " lies outside the field");
      }
      const QElem coeff = (g - g.conj()) / root;
      dec.a(i, j) = coeff.rational_value();
      dec.eps(i, j) = g.conj();
    }
  }
  return dec;
}

CanonicalCheck check_canonical(const GramDecomposition& dec) {
  CanonicalCheck c;
  const std::size_t n = dec.a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (dec.a(i, i) != Rat(static_cast<long>(i) + 1)) {
      c.diagonal_ok = false;
      c.violations.push_back(idx_name("a", i, i) + " = " + dec.a(i, i).get_str() + ", expected " +
                             std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& v = dec.a(i, j);
      if (v * v > Rat(static_cast<long>((i + 1) * (j + 1)))) {
        c.a_bounded = false;
        c.violations.push_back(idx_name("a", i, j) + " = " + v.get_str() + " exceeds sqrt(ij)");
      }
      if (compare(abs_first(dec.eps(i, j)), QElem(1)) >= 0) {
        c.eps_bounded = false;
        c.violations.push_back(idx_name("eps", i, j) + " = " + dec.eps(i, j).str() +
                               " has absolute value >= 1");
      }
    }
  }
  return c;
}

QuadrupleSelection select_quadruple(const GramDecomposition& dec) {
  const RatMatrix& a = dec.a;
  const std::size_t n = a.rows();
  if (n < 4) throw HypothesisViolation("need at least four vectors to select a quadruple");
  QuadrupleSelection sel;

  // Every principal pattern of size <= 4 must be positive semidefinite.
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) > 4) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    const Rat det = det_exact(a.principal(idx));
    if (sgn(det) < 0) {
      std::string name = "{";
      for (std::size_t i : idx) name += (name.size() > 1 ? "," : "") + std::to_string(i + 1);
      sel.minor_violations.push_back("minor " + name + "} of a has determinant " + det.get_str());
    }
  }

  auto try_fast = [&]() -> bool {
    if (n < 6) return false;
    const Rat& a12 = a(0, 1);
    std::size_t third;
    if (a12 == 1 || a12 == -1) {
      third = 2;
    } else if (a12 == 0) {
      third = 5;
    } else {
      return false;
    }
    const std::array<std::size_t, 3> tri{0, 1, third};
    const RatMatrix ternary = a.principal(tri);
    if (!rat_pd(ternary)) return false;
    for (std::size_t h = 1; h <= std::min<std::size_t>(n, 15); ++h) {
      if (z_represents(ternary, Int(static_cast<long>(h)))) continue;
      std::array<std::size_t, 4> quad{0, 1, third, h - 1};
      std::sort(quad.begin(), quad.end());
      const Rat det = det_exact(a.principal(quad));
      if (sgn(det) <= 0) return false;
      sel.indices = quad;
      sel.minor_det = det;
      return true;
    }
    return false;
  };

  if (try_fast()) {
    sel.fast_path = true;
    return sel;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const std::array<std::size_t, 4> quad{i, j, k, l};
          const Rat det = det_exact(a.principal(quad));
          if (sgn(det) > 0) {
            sel.indices = quad;
            sel.minor_det = det;
            return sel;
          }
        }
  throw HypothesisViolation("no 4 x 4 principal minor of a is positive");
}

// ---------------------------------------------------------------- cross block

std::pair<Int, Int> cij_range(const Int& N) {
  Int r = isqrt(N);
  if (r * r < N) r += 1;
  return {-r, r - 1};
}

CijScan cij_scan(const LatticeDesc& lat, std::span<const VectorOF> quad_vectors,
                 std::span<const VectorOF> int_vectors, const Int& N) {
  CijScan s;
  std::tie(s.range_lo, s.range_hi) = cij_range(N);
  s.above_threshold = discriminant_exceeds(lat.field(), threshold_polynomial(N).paper_threshold);
  s.c = QMatrix(quad_vectors.size(), int_vectors.size());
  const Int max_den = lat.classic() ? 1 : 2;
  for (std::size_t i = 0; i < quad_vectors.size(); ++i) {
    for (std::size_t j = 0; j < int_vectors.size(); ++j) {
      const QElem c = bilinear(lat, quad_vectors[i], int_vectors[j]);
      s.c(i, j) = c;
      if (!c.is_rational()) {
        s.integral = false;
        const QElem q_i = quad_value(lat, quad_vectors[i]).to_qelem();
        const QElem q_j = quad_value(lat, int_vectors[j]).to_qelem();
        const int sign = (q_i * q_j - c * c).sign();
        s.diagnostics.push_back(idx_name("c", i, j) + " = " + c.str() +
                                " is irrational; Q(v)Q(w) - c^2 has sign " + std::to_string(sign) +
                                " in the first embedding");
        continue;
      }
      const Rat v = c.rational_value();
      if (!s.observed_min || v < *s.observed_min) s.observed_min = v;
      if (!s.observed_max || v > *s.observed_max) s.observed_max = v;
      if (v.get_den() > max_den) {
        s.integral = false;
        s.diagnostics.push_back(idx_name("c", i, j) + " = " + v.get_str() + " is not integral");
      }
      if (v < s.range_lo || v > s.range_hi) {
        s.in_range = false;
        s.diagnostics.push_back(idx_name("c", i, j) + " = " + v.get_str() + " is outside [" +
                                s.range_lo.get_str() + ", " + s.range_hi.get_str() + "]");
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------- eight block

void EightBlock::validate() const {
  auto shape = [](const auto& m, const char* name) {
    if (m.rows() != 4 || m.cols() != 4) throw DimensionMismatch(std::string(name) + " must be 4 x 4");
  };
  shape(A, "A");
  shape(B, "B");
  shape(C, "C");
  shape(D, "D");
  if (!A.is_symmetric()) throw NotSymmetric("A is not symmetric");
  if (!B.is_symmetric()) throw NotSymmetric("B is not symmetric");
  if (!D.is_symmetric()) throw NotSymmetric("D is not symmetric");
  if (!rat_pd(A)) throw NotPositiveDefinite("A is not positive definite");
  if (!rat_pd(B)) throw NotPositiveDefinite("B is not positive definite");
  const auto [lo, hi] = cij_range(N);
  const Rat bound(N);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (abs(A(i, j)) > bound) throw DomainError(idx_name("A", i, j) + " exceeds N");
      if (abs(B(i, j)) > bound) throw DomainError(idx_name("B", i, j) + " exceeds N");
      if (compare(abs_first(D(i, j)), QElem(N)) > 0) throw DomainError(idx_name("D", i, j) + " exceeds N");
      const Rat& c = C(i, j);
      if (classic && !is_integer(c)) throw DomainError(idx_name("C", i, j) + " is not an integer");
      if (c < lo || c > hi) {
        throw DomainError(idx_name("C", i, j) + " = " + c.get_str() + " is outside [" + lo.get_str() +
                          ", " + hi.get_str() + "]");
      }
    }
  }
}

QMatrix EightBlock::lower_block() const {
  QMatrix m(8, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      m(i, j) = D(i, j);
      m(i, j + 4) = QElem(C(i, j));
      m(j + 4, i) = QElem(C(i, j));
      m(i + 4, j + 4) = QElem(B(i, j));
    }
  }
  return m;
}

QMatrix EightBlock::assemble() const {
  QMatrix m = lower_block();
  const QElem root = sqrt_discriminant(field);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) += root * QElem(A(i, j));
  return m;
}

RankCertificate assemble_and_certify(const EightBlock& blk) {
  blk.validate();
  RankCertificate cert;
  cert.determinant = det_exact(blk.assemble());
  cert.chain = lemma22_chain(to_qmatrix(blk.A), blk.lower_block(), sqrt_discriminant(blk.field), blk.N);
  if (!(cert.chain.det_value == cert.determinant)) {
    cert.diagnostics.push_back("bound chain determinant disagrees with the assembled determinant");
  }
  if (const std::string f = cert.chain.failure(); !f.empty()) {
    cert.diagnostics.push_back("bound chain: " + f);
  }
  cert.lower_bound_positive = cert.chain.inner_lower.sign() > 0;
  cert.totally_positive = cert.determinant.is_totally_positive();
  cert.verdict = cert.determinant.sign() > 0 ? Verdict::Independent : Verdict::Inconclusive;
  return cert;
}

bool reverify(const EightBlock& blk, const QElem& determinant) {
  blk.validate();
  return det_exact(blk.assemble()) == determinant;
}

// ---------------------------------------------------------------- pipeline

bool ObstructionReport::success() const {
  return failed_stage().empty() && certificate && certificate->verdict == Verdict::Independent;
}

std::string ObstructionReport::failed_stage() const {
  for (const auto& s : stages)
    if (s.status == StageRecord::Status::Failed) return s.name;
  return {};
}

std::string ObstructionReport::threshold_label() const {
  if (above_threshold) return "above-threshold";
  return "below-threshold: certificate not implied by the rank-7 obstruction bound";
}

ObstructionReport certify_no_rank7(const LatticeDesc& lat) {
  ObstructionReport r;
  r.field = lat.field();
  r.classic = lat.classic();
  const CriterionSet crit = criterion_for(lat);
  r.N = crit.bound();
  r.threshold = threshold_polynomial(r.N).paper_threshold;
  r.above_threshold = discriminant_exceeds(lat.field(), r.threshold);
  r.decomposition_hypothesis = discriminant_exceeds(lat.field(), decomposition_bound(r.N));
  r.integrality_hypothesis = Int(lat.field().delta) > 4 * r.N * r.N;

  const char* names[] = {"escalate", "extract_kvectors", "decompose_gram", "select_quadruple",
                         "cij_scan", "assemble_and_certify"};
  for (const char* n : names) r.stages.push_back({n, StageRecord::Status::Skipped, ""});
  auto finish = [&](std::size_t stage, bool ok, std::string detail) {
    r.stages[stage].status = ok ? StageRecord::Status::Ok : StageRecord::Status::Failed;
    r.stages[stage].detail = std::move(detail);
    return ok;
  };

  try {
    r.escalation = escalate_independent_quadruple(lat, crit);
  } catch (const EscalationError& e) {
    finish(0, false, e.what());
    return r;
  }
  for (int n : r.escalation->norms) r.int_vectors.push_back(r.escalation->vectors[n - 1]);
  finish(0, true, r.escalation->used_fallback ? "fallback subset search" : "greedy");

  const int count = static_cast<int>(r.N.get_si());
  r.kvectors = extract_kvectors(lat, count);
  if (!r.kvectors->complete()) {
    std::string miss;
    for (int k : r.kvectors->missing) miss += (miss.empty() ? "" : ",") + std::to_string(k);
    finish(1, false, "m_k + k*omega not represented for k in {" + miss + "}");
    return r;
  }
  finish(1, true, "");

  const std::vector<VectorOF> family = r.kvectors->family();
  r.family_gram = gram_of_vectors(lat, family);
  r.decomposition = decompose_gram(*r.family_gram, lat.field());
  r.decomposition_round_trip = r.decomposition->reconstruct() == *r.family_gram;
  if (!r.decomposition_round_trip) {
    finish(2, false, "decomposition does not reproduce the Gram matrix");
    return r;
  }
  r.canonical = check_canonical(*r.decomposition);
  if (!r.canonical->ok()) {
    std::string first = r.canonical->violations.front();
    if (r.decomposition_hypothesis) {
      finish(2, false, "hypothesis violated: " + first);
      return r;
    }
    finish(2, true, "flagged (discriminant below the decomposition bound): " + first);
  } else {
    finish(2, true, "");
  }

  try {
    r.quadruple = select_quadruple(*r.decomposition);
  } catch (const HypothesisViolation& e) {
    finish(3, false, e.what());
    return r;
  }
  if (!r.quadruple->minor_violations.empty() && r.decomposition_hypothesis) {
    finish(3, false, "hypothesis violated: " + r.quadruple->minor_violations.front());
    return r;
  }
  finish(3, true, r.quadruple->fast_path ? "fast path" : "subset search");
  for (std::size_t i : r.quadruple->indices) r.quad_vectors.push_back(family[i]);

  r.cij = cij_scan(lat, r.quad_vectors, r.int_vectors, r.N);
  if (!r.cij->ok()) {
    finish(4, false, r.cij->diagnostics.front());
    return r;
  }
  finish(4, true, "");

  EightBlock blk;
  blk.field = lat.field();
  blk.N = r.N;
  blk.classic = lat.classic();
  blk.A = r.decomposition->a.principal(r.quadruple->indices);
  blk.D = r.decomposition->eps.principal(r.quadruple->indices);
  blk.B = r.escalation->quad_gram;
  blk.C = r.cij->c.map([](const QElem& x) { return x.rational_value(); });
  r.block = blk;
  try {
    r.certificate = assemble_and_certify(blk);
  } catch (const Error& e) {
    finish(5, false, e.what());
    return r;
  }
  std::vector<VectorOF> eight = r.quad_vectors;
  eight.insert(eight.end(), r.int_vectors.begin(), r.int_vectors.end());
  if (!(gram_of_vectors(lat, eight) == blk.assemble())) {
    finish(5, false, "assembled blocks do not reproduce the Gram matrix of the eight vectors");
    return r;
  }
  const bool independent = r.certificate->verdict == Verdict::Independent;
  finish(5, independent, independent ? "determinant positive" : "determinant not positive");
  return r;
}

const char* to_string(StageRecord::Status s) {
  switch (s) {
    case StageRecord::Status::Ok:
      return "ok";
    case StageRecord::Status::Failed:
      return "failed";
    case StageRecord::Status::Skipped:
      return "skipped";
  }
  return "?";
}

const char* to_string(Verdict v) { return v == Verdict::Independent ? "independent" : "inconclusive"; }

}  // namespace uqf
