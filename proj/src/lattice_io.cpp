#include "uqf/lattice_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace uqf {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::string at(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing key \"") + key + "\"");
  return *it;
}

Json qmatrix_to_json(const QMatrix& m, const FieldCtx& f) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(triple_to_json(m(i, j), f));
    out.push_back(std::move(row));
  }
  return out;
}

Json ratmatrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class T, class F>
Matrix<T> matrix_from_json(const Json& j, const std::string& where, F&& entry) {
  if (!j.is_array() || j.empty()) throw ParseError(where, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix<T> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != n) {
      throw ParseError(at(where, r), "expected a row of length " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = entry(row[c], at(at(where, r), c));
  }
  return m;
}

Json rank_certificate_json(const RankCertificate& c, const FieldCtx& f) {
  Json chain;
  chain["k"] = c.chain.k;
  chain["s"] = c.chain.s;
  chain["x"] = triple_to_json(c.chain.x, f);
  chain["outer_lower"] = triple_to_json(c.chain.outer_lower, f);
  chain["inner_lower"] = triple_to_json(c.chain.inner_lower, f);
  chain["inner_upper"] = triple_to_json(c.chain.inner_upper, f);
  chain["outer_upper"] = triple_to_json(c.chain.outer_upper, f);
  chain["holds"] = c.chain.holds();
  Json out;
  out["determinant"] = triple_to_json(c.determinant, f);
  out["verdict"] = to_string(c.verdict);
  out["totally_positive"] = c.totally_positive;
  out["lower_bound_positive"] = c.lower_bound_positive;
  out["chain"] = std::move(chain);
  out["diagnostics"] = c.diagnostics;
  return out;
}

}  // namespace

OmegaTriple to_omega_triple(const QElem& x, const FieldCtx& field) {
  if (!x.is_rational() && x.radicand() != field.d) throw DomainError(x.str() + " lies outside the field");
  // x = (P + Q sqrt d) / D; sqrt d = omega (d = 2, 3 mod 4) or 2 omega - 1.
  Int p = x.p();
  Int q = x.q();
  if (field.branch == Branch::OneMod4) {
    p -= q;
    q *= 2;
  }
  Int den = x.den();
  const Int g = gcd3(p, q, den);
  if (g > 1) {
    p /= g;
    q /= g;
    den /= g;
  }
  return {p, q, den};
}

QElem from_omega_triple(const OmegaTriple& t, const FieldCtx& field) {
  if (t.den <= 0) throw DomainError("denominator must be positive");
  const QElem w = OInt::omega(field).to_qelem();
  return (QElem(t.p) + QElem(t.q) * w) / QElem(t.den);
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!is_decimal(s)) throw ParseError(where, "\"" + s + "\" is not a decimal integer");
    return Int(s);
  }
  if (j.is_number_float()) {
    throw ParseError(where, "not an exact integer; write integers beyond 64 bits as strings");
  }
  throw ParseError(where, "expected an integer, found " + std::string(j.type_name()));
}

Json rat_to_json(const Rat& r) { return Json::array({int_to_json(r.get_num()), int_to_json(r.get_den())}); }

Rat rat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where, "expected [num, den]");
  const Int den = int_from_json(j[1], at(where, 1));
  if (den <= 0) throw ParseError(at(where, 1), "denominator must be positive");
  Rat r(int_from_json(j[0], at(where, 0)), den);
  r.canonicalize();
  return r;
}

Json triple_to_json(const QElem& x, const FieldCtx& field) {
  const OmegaTriple t = to_omega_triple(x, field);
  return Json::array({int_to_json(t.p), int_to_json(t.q), int_to_json(t.den)});
}

QElem triple_from_json(const Json& j, const FieldCtx& field, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where, "expected a triple [p, q, den]");
  const OmegaTriple t{int_from_json(j[0], at(where, 0)), int_from_json(j[1], at(where, 1)),
                      int_from_json(j[2], at(where, 2))};
  if (t.den <= 0) throw ParseError(at(where, 2), "denominator must be positive");
  return from_omega_triple(t, field);
}

LatticeDesc parse_lattice(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError("$", "expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "d" && it.key() != "classic" && it.key() != "gram") {
      throw ParseError("$." + it.key(), "unknown key");
    }
  }
  const Int d = int_from_json(member(doc, "d", "$"), "$.d");
  if (!d.fits_slong_p()) throw ParseError("$.d", "radicand out of range");
  FieldCtx field;
  try {
    field = make_field(d.get_si());
  } catch (const InvalidField& e) {
    throw ParseError("$.d", e.what());
  }
  const Json& classic = member(doc, "classic", "$");
  if (!classic.is_boolean()) throw ParseError("$.classic", "expected true or false");
  const QMatrix gram = matrix_from_json<QElem>(
      member(doc, "gram", "$"), "$.gram", [&](const Json& e, const std::string& where) {
        if (e.is_array() && e.size() == 3) {
          const Int den = int_from_json(e[2], at(where, 2));
          if (den != 1 && den != 2) throw ParseError(at(where, 2), "den must be 1 or 2");
        }
        return triple_from_json(e, field, where);
      });
  return make_lattice(field, gram, classic.get<bool>());
}

LatticeDesc read_lattice_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str());
}

std::string serialize_lattice(const LatticeDesc& lat) {
  Json doc;
  doc["d"] = lat.field().d;
  doc["classic"] = lat.classic();
  doc["gram"] = qmatrix_to_json(lat.gram(), lat.field());
  return doc.dump() + "\n";
}

Json vector_to_json(const VectorOF& v) {
  Json out = Json::array();
  for (const OInt& x : v) out.push_back(Json::array({int_to_json(x.a()), int_to_json(x.b())}));
  return out;
}

Json certificate_to_json(const ObstructionReport& r) {
  const FieldCtx& f = r.field;
  Json doc;
  doc["d"] = f.d;
  doc["delta"] = f.delta;
  doc["classic"] = r.classic;
  doc["N"] = int_to_json(r.N);
  doc["threshold"] = int_to_json(r.threshold);
  doc["above_threshold"] = r.above_threshold;
  doc["label"] = r.threshold_label();
  doc["hypotheses"] = {{"integrality", r.integrality_hypothesis},
                       {"decomposition", r.decomposition_hypothesis}};

  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"status", to_string(s.status)}, {"detail", s.detail}});
  }
  doc["stages"] = std::move(stages);
  doc["failed_stage"] = r.failed_stage();

  if (r.escalation) {
    doc["escalation"] = {{"norms", r.escalation->norms},
                         {"used_fallback", r.escalation->used_fallback},
                         {"vectors", Json::array()},
                         {"quad_gram", ratmatrix_to_json(r.escalation->quad_gram)}};
    for (const VectorOF& v : r.int_vectors) doc["escalation"]["vectors"].push_back(vector_to_json(v));
  }
  if (r.kvectors) {
    Json kv = Json::array();
    for (std::size_t k = 0; k < r.kvectors->vectors.size(); ++k) {
      const auto& v = r.kvectors->vectors[k];
      kv.push_back({{"k", k + 1}, {"vector", v ? vector_to_json(*v) : Json(nullptr)}});
    }
    doc["kvectors"] = {{"vectors", std::move(kv)}, {"missing", r.kvectors->missing}};
  }
  if (r.decomposition) {
    Json dec{{"gram", qmatrix_to_json(*r.family_gram, f)},
             {"a", ratmatrix_to_json(r.decomposition->a)},
             {"eps", qmatrix_to_json(r.decomposition->eps, f)},
             {"round_trip", r.decomposition_round_trip}};
    if (r.canonical) {
      dec["canonical"] = r.canonical->ok();
      dec["violations"] = r.canonical->violations;
    }
    doc["decomposition"] = std::move(dec);
  }
  if (r.quadruple) {
    Json idx = Json::array();
    for (std::size_t i : r.quadruple->indices) idx.push_back(i + 1);
    doc["quadruple"] = {{"k", std::move(idx)},
                        {"fast_path", r.quadruple->fast_path},
                        {"minor_det", rat_to_json(r.quadruple->minor_det)},
                        {"minor_violations", r.quadruple->minor_violations}};
  }
  if (r.cij) {
    Json cij{{"c", qmatrix_to_json(r.cij->c, f)},
             {"range", Json::array({int_to_json(r.cij->range_lo), int_to_json(r.cij->range_hi)})},
             {"integral", r.cij->integral},
             {"in_range", r.cij->in_range},
             {"diagnostics", r.cij->diagnostics}};
    if (r.cij->observed_min) cij["observed_min"] = rat_to_json(*r.cij->observed_min);
    if (r.cij->observed_max) cij["observed_max"] = rat_to_json(*r.cij->observed_max);
    doc["cij"] = std::move(cij);
  }
  if (r.block) {
    doc["block"] = {{"N", int_to_json(r.block->N)},
                    {"classic", r.block->classic},
                    {"A", ratmatrix_to_json(r.block->A)},
                    {"B", ratmatrix_to_json(r.block->B)},
                    {"C", ratmatrix_to_json(r.block->C)},
                    {"D", qmatrix_to_json(r.block->D, f)}};
  }
  if (r.certificate) doc["certificate"] = rank_certificate_json(*r.certificate, f);
  doc["verdict"] = r.success() ? "certificate" : "hypothesis failure";
  return doc;
}

EightBlock block_from_certificate(const Json& doc) {
  const Int d = int_from_json(member(doc, "d", "$"), "$.d");
  if (!d.fits_slong_p()) throw ParseError("$.d", "radicand out of range");
  EightBlock blk;
  try {
    blk.field = make_field(d.get_si());
  } catch (const InvalidField& e) {
    throw ParseError("$.d", e.what());
  }
  const Json& b = member(doc, "block", "$");
  blk.N = int_from_json(member(b, "N", "$.block"), "$.block.N");
  const Json& classic = member(b, "classic", "$.block");
  if (!classic.is_boolean()) throw ParseError("$.block.classic", "expected true or false");
  blk.classic = classic.get<bool>();
  auto rat_entry = [](const Json& e, const std::string& w) { return rat_from_json(e, w); };
  blk.A = matrix_from_json<Rat>(member(b, "A", "$.block"), "$.block.A", rat_entry);
  blk.B = matrix_from_json<Rat>(member(b, "B", "$.block"), "$.block.B", rat_entry);
  blk.C = matrix_from_json<Rat>(member(b, "C", "$.block"), "$.block.C", rat_entry);
  blk.D = matrix_from_json<QElem>(member(b, "D", "$.block"), "$.block.D",
                                  [&](const Json& e, const std::string& w) {
                                    return triple_from_json(e, blk.field, w);
                                  });
  return blk;
}

VerifyResult verify_certificate(const Json& doc) {
  const EightBlock blk = block_from_certificate(doc);
  const Json& cert = member(doc, "certificate", "$");
  const QElem claimed = triple_from_json(member(cert, "determinant", "$.certificate"), blk.field,
                                         "$.certificate.determinant");
  VerifyResult v;
  try {
    if (!reverify(blk, claimed)) {
      v.detail = "recomputed determinant differs from the stored value";
      return v;
    }
  } catch (const Error& e) {
    v.detail = std::string("stored blocks are invalid: ") + e.what();
    return v;
  }
  if (claimed.sign() <= 0) {
    v.detail = "determinant matches but is not positive";
    return v;
  }
  v.ok = true;
  v.detail = "determinant " + claimed.str() + " recomputed and positive";
  return v;
}

}  // namespace uqf
