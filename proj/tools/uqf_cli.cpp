// uqf: command-line front end.
//
// Output is a single JSON document on stdout (indented with --pretty).
// Exit codes: 0 success, 1 negative verdict, 2 invalid input.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uqf/bounds.hpp"
#include "uqf/lattice_io.hpp"
#include "uqf/obstruction.hpp"
#include "uqf/parallel.hpp"
#include "uqf/represent.hpp"
#include "uqf/universal.hpp"

namespace {

using uqf::Int;
using uqf::Json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInput = 2;

struct Output {
  bool pretty = false;

  void emit(const Json& doc) const {
    const std::string text = (pretty ? doc.dump(2) : doc.dump()) + "\n";
    std::cout << text << std::flush;
  }
};

int input_error(const std::string& what, const std::string& where = {}) {
  Json err{{"error", what}};
  if (!where.empty()) err["where"] = where;
  std::cerr << err.dump() << "\n";
  return kInput;
}

Json dec(const Int& v) { return Json(v.get_str()); }

Int parse_int_arg(const std::string& s, const char* name) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw uqf::ParseError(name, "\"" + s + "\" is not an integer");
  return v;
}

uqf::OInt parse_target(const std::string& spec, const uqf::FieldCtx& field) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 3) throw uqf::ParseError("--target", "expected p,q,den");
  const uqf::OmegaTriple t{parse_int_arg(parts[0], "--target"), parse_int_arg(parts[1], "--target"),
                           parse_int_arg(parts[2], "--target")};
  if (t.den <= 0) throw uqf::ParseError("--target", "den must be positive");
  const auto x = uqf::OInt::from_qelem(field, uqf::from_omega_triple(t, field));
  if (!x) throw uqf::DomainError("target " + spec + " is not an algebraic integer");
  return *x;
}

Json oint_json(const uqf::OInt& x) {
  return uqf::triple_to_json(x.to_qelem(), x.field());
}

int cmd_field_info(const Output& out, std::int64_t d) {
  const uqf::FieldCtx f = uqf::make_field(d);
  const bool one = f.branch == uqf::Branch::OneMod4;
  Json doc;
  doc["d"] = f.d;
  doc["delta"] = f.delta;
  doc["branch"] = one ? "1 mod 4" : "2,3 mod 4";
  doc["omega"] = one ? "(1+sqrt(d))/2" : "sqrt(d)";
  doc["omega_conjugate"] = one ? "(1-sqrt(d))/2" : "-sqrt(d)";
  doc["omega_trace"] = f.omega_trace();
  doc["omega_norm"] = f.omega_norm();
  out.emit(doc);
  return kOk;
}

int cmd_represent(const Output& out, const std::string& file, const std::string& target, bool all,
                  std::size_t cap) {
  const uqf::LatticeDesc lat = uqf::read_lattice_file(file);
  const uqf::OInt t = parse_target(target, lat.field());
  Json doc;
  doc["target"] = oint_json(t);
  if (all) {
    const auto reps = uqf::enumerate_representations(lat, t, cap);
    Json ws = Json::array();
    for (const auto& w : reps) ws.push_back(uqf::vector_to_json(w.vector));
    doc["found"] = !reps.empty();
    doc["count"] = reps.size();
    doc["cap"] = cap;
    doc["witnesses"] = std::move(ws);
    if (reps.empty()) doc["result"] = "NONE";
    out.emit(doc);
    return reps.empty() ? kNegative : kOk;
  }
  const auto w = uqf::represents(lat, t);
  doc["found"] = w.has_value();
  if (w) {
    doc["witness"] = uqf::vector_to_json(w->vector);
  } else {
    doc["result"] = "NONE";
  }
  out.emit(doc);
  return w ? kOk : kNegative;
}

int cmd_universal(const Output& out, const std::string& file, const std::string& tr_max) {
  const uqf::LatticeDesc lat = uqf::read_lattice_file(file);
  const Int t = parse_int_arg(tr_max, "--trace-max");
  const uqf::UniversalityReport r = uqf::universal_up_to(lat, t);
  Json doc;
  doc["trace_max"] = dec(t);
  doc["result"] = r.pass ? "PASS" : "FAIL";
  doc["targets_checked"] = r.targets_checked;
  if (r.first_failure) doc["first_failure"] = oint_json(*r.first_failure);
  out.emit(doc);
  return r.pass ? kOk : kNegative;
}

int cmd_threshold(const Output& out, const std::string& n) {
  const uqf::ThresholdReport r = uqf::threshold_polynomial(parse_int_arg(n, "--n"));
  Json coeffs = Json::array();
  for (const Int& c : r.coefficients) coeffs.push_back(dec(c));
  Json doc;
  doc["N"] = dec(r.N);
  doc["coefficients"] = std::move(coeffs);
  doc["threshold"] = dec(r.paper_threshold);
  doc["minimal_threshold"] = dec(r.minimal_threshold);
  doc["positive_at_threshold"] = r.positive_at_threshold;
  doc["dominance_certified"] = r.dominance_certified;
  doc["discriminant_bound"] = dec(r.paper_threshold * r.paper_threshold);
  out.emit(doc);
  return r.positive_at_threshold && r.dominance_certified ? kOk : kNegative;
}

int cmd_fuzz(const Output& out, std::size_t iters, std::uint64_t seed, bool transcript) {
  const uqf::Lemma22FuzzReport r = uqf::fuzz_lemma22(iters, seed);
  Json doc;
  doc["iters"] = iters;
  doc["seed"] = seed;
  doc["passed"] = r.passed;
  doc["failed"] = r.failed;
  doc["failed_by_k"] = Json::object();
  for (std::size_t k = 1; k < r.failed_by_k.size(); ++k) doc["failed_by_k"][std::to_string(k)] = r.failed_by_k[k];
  doc["outer_link_only"] = r.outer_only;
  if (transcript) doc["transcript"] = r.transcript;
  out.emit(doc);
  return r.failed == 0 ? kOk : kNegative;
}

int cmd_search(const Output& out, std::int64_t d, int rank, const std::string& coeff_bound,
               const std::string& tr_max) {
  const uqf::FieldCtx f = uqf::make_field(d);
  const auto found = uqf::search_candidates(f, rank, parse_int_arg(coeff_bound, "--coeff-bound"),
                                            parse_int_arg(tr_max, "--trace-max"));
  Json list = Json::array();
  for (const auto& lat : found) {
    Json diag = Json::array();
    for (const auto& a : lat.diagonal()) diag.push_back(oint_json(a));
    list.push_back(std::move(diag));
  }
  Json doc;
  doc["d"] = d;
  doc["rank"] = rank;
  doc["count"] = found.size();
  doc["candidates"] = std::move(list);
  out.emit(doc);
  return kOk;
}

int cmd_certify(const Output& out, const std::string& file, const std::string& out_file) {
  const uqf::LatticeDesc lat = uqf::read_lattice_file(file);
  const uqf::ObstructionReport r = uqf::certify_no_rank7(lat);
  const Json doc = uqf::certificate_to_json(r);
  if (!out_file.empty()) {
    std::ofstream os(out_file, std::ios::binary);
    if (!os) return input_error("cannot write " + out_file);
    os << doc.dump(2) << "\n";
  }
  out.emit(doc);
  return r.success() ? kOk : kNegative;
}

int cmd_verify(const Output& out, const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw uqf::ParseError(file, "cannot open file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw uqf::ParseError("byte " + std::to_string(e.byte), e.what());
  }
  const uqf::VerifyResult v = uqf::verify_certificate(doc);
  out.emit(Json{{"verified", v.ok}, {"detail", v.detail}});
  return v.ok ? kOk : kNegative;
}

void apply_thread_env() {
  if (const char* s = std::getenv("UQF_THREADS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0') uqf::set_thread_count(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Exact arithmetic and universality tools for quadratic forms over real quadratic fields"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--pretty", out.pretty, "Indent JSON output");

  std::int64_t d = 0;
  auto* field_info = app.add_subcommand("field-info", "Describe Q(sqrt d) and its ring of integers");
  field_info->add_option("--d", d, "Squarefree d > 1")->required();

  std::string lattice, target, trace_max, n_arg, out_file, cert_file, coeff_bound;
  bool all = false;
  std::size_t cap = 100;
  auto* represent = app.add_subcommand("represent", "Decide whether a lattice represents a target");
  represent->add_option("--lattice", lattice, "Lattice file")->required();
  represent->add_option("--target", target, "Target (p + q*omega)/den as p,q,den")->required();
  represent->add_flag("--all", all, "List representations up to --cap");
  represent->add_option("--cap", cap, "Maximum number of representations with --all");

  auto* universal = app.add_subcommand("universal-check", "Check every totally positive target up to a trace");
  universal->add_option("--lattice", lattice, "Lattice file")->required();
  universal->add_option("--trace-max", trace_max, "Largest trace checked")->required();

  auto* threshold = app.add_subcommand("threshold", "Discriminant threshold for criterion bound N");
  threshold->add_option("--n", n_arg, "Criterion bound (15 or 290)")->required();

  std::size_t iters = 1000;
  std::uint64_t seed = 1;
  bool transcript = false;
  auto* fuzz = app.add_subcommand("fuzz-lemma22", "Seeded property run of the determinant bound chain");
  fuzz->add_option("--iters", iters, "Number of instances");
  fuzz->add_option("--seed", seed, "Seed");
  fuzz->add_flag("--transcript", transcript, "Include one line per instance");

  int rank = 3;
  auto* search = app.add_subcommand("search", "Diagonal candidates universal up to a trace bound");
  search->add_option("--d", d, "Squarefree d > 1")->required();
  search->add_option("--rank", rank, "Rank 1..4")->required();
  search->add_option("--coeff-bound", coeff_bound, "Largest trace of a diagonal coefficient")->required();
  search->add_option("--trace-max", trace_max, "Largest target trace")->required();

  auto* certify = app.add_subcommand("certify", "Run the rank obstruction pipeline on a lattice");
  certify->add_option("--lattice", lattice, "Lattice file")->required();
  certify->add_option("--out", out_file, "Also write the certificate document here");

  auto* verify = app.add_subcommand("verify", "Recompute the determinant stored in a certificate");
  verify->add_option("--certificate", cert_file, "Certificate document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*field_info) return cmd_field_info(out, d);
    if (*represent) return cmd_represent(out, lattice, target, all, cap);
    if (*universal) return cmd_universal(out, lattice, trace_max);
    if (*threshold) return cmd_threshold(out, n_arg);
    if (*fuzz) return cmd_fuzz(out, iters, seed, transcript);
    if (*search) return cmd_search(out, d, rank, coeff_bound, trace_max);
    if (*certify) return cmd_certify(out, lattice, out_file);
    if (*verify) return cmd_verify(out, cert_file);
  } catch (const uqf::ParseError& e) {
    return input_error(e.what(), e.where());
  } catch (const uqf::Error& e) {
    return input_error(e.what());
  }
  return kInput;
}
