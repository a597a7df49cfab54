#pragma once

// Lattice files and certificate documents.
//
// Lattice file: {"d": 5, "classic": true, "gram": [[[p, q, den], ...], ...]}
// where [p, q, den] is (p + q omega) / den with den in {1, 2}. Integers that
// do not fit in 64 bits are written as decimal strings; both spellings parse.

#include <string>
#include <utility>

#include <json.hpp>

#include "uqf/lattice.hpp"
#include "uqf/obstruction.hpp"

namespace uqf {

using Json = nlohmann::ordered_json;

/// (p, q, den) with x = (p + q omega) / den, den > 0, gcd(p, q, den) = 1.
struct OmegaTriple {
  Int p, q, den;
  bool operator==(const OmegaTriple&) const = default;
};

OmegaTriple to_omega_triple(const QElem& x, const FieldCtx& field);
QElem from_omega_triple(const OmegaTriple& t, const FieldCtx& field);

/// Exact integer as a JSON number when it fits in int64, else a string.
Json int_to_json(const Int& v);
/// Accepts JSON integers and decimal strings. `where` names the location.
Int int_from_json(const Json& j, const std::string& where);

Json rat_to_json(const Rat& r);  // [num, den]
Rat rat_from_json(const Json& j, const std::string& where);

Json triple_to_json(const QElem& x, const FieldCtx& field);
QElem triple_from_json(const Json& j, const FieldCtx& field, const std::string& where);

/// Throws ParseError with a byte offset or a JSON path, and the lattice
/// validation errors from make_lattice.
LatticeDesc parse_lattice(const std::string& text);
LatticeDesc read_lattice_file(const std::string& path);

/// Canonical compact form followed by a newline.
std::string serialize_lattice(const LatticeDesc& lat);

Json vector_to_json(const VectorOF& v);

/// The full certificate document, including the blocks needed to re-check
/// the determinant without enumeration.
Json certificate_to_json(const ObstructionReport& report);

/// Rebuilds the EightBlock stored in a certificate document.
EightBlock block_from_certificate(const Json& doc);

struct VerifyResult {
  bool ok = false;
  std::string detail;
};

/// Recomputes the determinant and the sign of the certificate from its blocks.
VerifyResult verify_certificate(const Json& doc);

}  // namespace uqf
