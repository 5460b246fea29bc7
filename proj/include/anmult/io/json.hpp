#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "anmult/formulas/calibrate.hpp"
#include "anmult/formulas/solve.hpp"

namespace anmult::io {

using Json = nlohmann::ordered_json;

// Rationals are always strings; integers that fit in 64 bits are plain numbers.

inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw DomainError("expected an integer, got " + j.dump());
}

inline Json rational_json(const Rational& r) { return Json(to_string(r)); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (!j.is_string()) throw DomainError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline Partition partition_from_json(const Json& j) {
  if (!j.is_string()) throw DomainError("expected a label string, got " + j.dump());
  return Partition::parse(j.get<std::string>());
}

/// coefficients lowest power first
inline Json poly_json(const PolyN& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational_json(c));
  return out;
}

inline PolyN poly_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected a coefficient array");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return PolyN(std::move(c));
}

inline Json ratfunc_json(const RatFuncN& f) {
  Json out;
  out["num"] = poly_json(f.numerator());
  out["den"] = poly_json(f.denominator());
  out["text"] = f.to_string();
  return out;
}

inline RatFuncN ratfunc_from_json(const Json& j) { return RatFuncN(poly_from_json(j.at("num")), poly_from_json(j.at("den"))); }

inline Json table_json(const MultiplicityTable& t, int rank) {
  Json out;
  out["top"] = t.top().to_string();
  out["rank"] = rank;
  Json m = Json::object();
  for (const auto& [label, v] : t.entries()) m[label.to_string()] = integer_json(v);
  out["multiplicities"] = std::move(m);
  return out;
}

struct RankedTable {
  MultiplicityTable table;
  int rank = 0;
};

inline RankedTable table_from_json(const Json& j) {
  RankedTable out;
  const auto top = partition_from_json(j.at("top"));
  out.rank = j.value("rank", 0);
  if (top.empty()) {
    if (!j.at("multiplicities").empty()) throw DomainError("multiplicities without a top label");
    return out;
  }
  out.table = MultiplicityTable::for_top(top);
  for (const auto& [label, v] : j.at("multiplicities").items()) out.table.set(Partition::parse(label), integer_from_json(v));
  return out;
}

inline Json witness_json(const ResidualWitness& w) {
  Json out;
  out["top"] = w.top.to_string();
  out["rank"] = w.rank;
  out["residual"] = rational_json(w.residual);
  return out;
}

inline ResidualWitness witness_from_json(const Json& j) {
  return {partition_from_json(j.at("top")), j.at("rank").get<int>(), rational_from_json(j.at("residual"))};
}

inline Json diagnosis_json(const FormulaDiagnosis& d) {
  Json out;
  out["summary"] = d.summary;
  out["checked_pairs"] = d.checked_pairs;
  if (d.witness) out["first_failure"] = witness_json(*d.witness);
  if (d.first_failing_term) out["first_failing_term"] = *d.first_failing_term;
  if (d.failing_ratio) out["failing_ratio"] = *d.failing_ratio;
  if (!d.hints.empty()) out["hints"] = d.hints;
  return out;
}

inline FormulaDiagnosis diagnosis_from_json(const Json& j, bool valid) {
  FormulaDiagnosis d;
  d.valid = valid;
  d.summary = j.at("summary").get<std::string>();
  d.checked_pairs = j.value("checked_pairs", std::size_t{0});
  if (j.contains("first_failure")) d.witness = witness_from_json(j.at("first_failure"));
  if (j.contains("first_failing_term")) d.first_failing_term = j.at("first_failing_term").get<std::string>();
  if (j.contains("failing_ratio")) d.failing_ratio = j.at("failing_ratio").get<std::string>();
  if (j.contains("hints")) d.hints = j.at("hints").get<std::vector<std::string>>();
  return d;
}

inline Json calibration_json(const Calibration& cal) {
  Json out;
  Json symbols = Json::object();
  for (GSymbol s : all_symbols)
    if (cal.symbols.count(s)) symbols[symbol_name(s)] = ratfunc_json(cal.symbols.at(s));
  out["symbols"] = std::move(symbols);
  Json status = Json::object();
  Json diagnostics = Json::object();
  for (const auto& [id, d] : cal.status) {
    status[id.compact()] = d.valid ? "valid" : "suspect";
    diagnostics[id.compact()] = diagnosis_json(d);
  }
  out["status"] = std::move(status);
  out["diagnostics"] = std::move(diagnostics);
  Json prov;
  prov["calibration_corpus"] = cal.provenance.calibration_corpus;
  prov["validation_corpus"] = cal.provenance.validation_corpus;
  prov["ranks"] = cal.provenance.ranks;
  prov["validation_ranks"] = cal.provenance.validation_ranks;
  prov["pairs_with_empty_orbits"] = cal.provenance.pairs_with_empty_orbits;
  out["provenance"] = std::move(prov);
  return out;
}

inline Calibration calibration_from_json(const Json& j) {
  Calibration cal;
  for (const auto& [name, f] : j.at("symbols").items()) cal.symbols.emplace(parse_symbol(name), ratfunc_from_json(f));
  const auto& diagnostics = j.at("diagnostics");
  for (const auto& [id, s] : j.at("status").items()) {
    const std::string state = s.get<std::string>();
    if (state != "valid" && state != "suspect") throw DomainError("unknown formula status '" + state + "'");
    cal.status.emplace_back(Partition::parse_compact(id), diagnosis_from_json(diagnostics.at(id), state == "valid"));
  }
  const auto& prov = j.at("provenance");
  cal.provenance.calibration_corpus = prov.at("calibration_corpus").get<std::string>();
  cal.provenance.validation_corpus = prov.at("validation_corpus").get<std::string>();
  cal.provenance.ranks = prov.at("ranks").get<std::vector<int>>();
  cal.provenance.validation_ranks = prov.at("validation_ranks").get<std::vector<int>>();
  cal.provenance.pairs_with_empty_orbits = prov.at("pairs_with_empty_orbits").get<std::size_t>();
  return cal;
}

inline Json solve_report_json(const SolveReport& r) {
  Json out;
  out["top"] = r.top.to_string();
  out["ranks"] = r.ranks;
  out["formulas"] = r.formulas;
  out["unknowns"] = r.unknowns;
  out["rows"] = r.rows;
  out["system_rank"] = r.rank;
  out["nullity"] = r.nullity;
  const int rank = r.ranks.empty() ? 0 : r.ranks.front();
  out["solution"] = r.solution ? table_json(*r.solution, rank) : Json();
  if (r.oracle_agrees) {
    out["oracle_agrees"] = *r.oracle_agrees;
    out["oracle_rank"] = r.oracle_rank;
  }
  out["warnings"] = r.warnings;
  return out;
}

inline Json derived_json(const DerivedFormula& f) {
  Json out;
  out["id"] = f.id.compact();
  Json coefs = Json::array();
  // highest degree first, then by gradation, as in the ansatz basis
  for (const auto& q : ansatz_basis(f.id)) {
    auto it = f.coefficients.find(q);
    if (it == f.coefficients.end()) continue;
    Json c;
    c["monomial"] = q.to_string();
    c["value"] = ratfunc_json(it->second);
    coefs.push_back(std::move(c));
  }
  out["coefficients"] = std::move(coefs);
  out["min_rank"] = f.min_rank;
  out["fit_ranks"] = f.fit_ranks;
  out["validation_ranks"] = f.validation_ranks;
  out["validated_pairs"] = f.validated_pairs;
  return out;
}

inline DerivedFormula derived_from_json(const Json& j) {
  DerivedFormula f;
  f.id = Partition::parse_compact(j.at("id").get<std::string>());
  for (const auto& c : j.at("coefficients")) f.coefficients.emplace(partition_from_json(c.at("monomial")), ratfunc_from_json(c.at("value")));
  f.min_rank = j.at("min_rank").get<int>();
  f.fit_ranks = j.at("fit_ranks").get<std::vector<int>>();
  f.validation_ranks = j.at("validation_ranks").get<std::vector<int>>();
  f.validated_pairs = j.at("validated_pairs").get<std::size_t>();
  return f;
}

inline Json expansion_json(const OrbitLabel& q, const PowerSumExpansion& e) {
  Json out;
  out["orbit"] = q.to_string();
  out["degree"] = e.degree();
  Json terms = Json::object();
  for (const auto& [mu, p] : e.terms()) {
    Json t;
    t["coefficients"] = poly_json(p);
    t["text"] = p.to_string();
    terms[mu.to_string()] = std::move(t);
  }
  out["terms"] = std::move(terms);
  return out;
}

}  // namespace anmult::io
