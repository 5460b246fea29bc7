#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anmult/anmult.hpp"
#include "anmult/io/json.hpp"

namespace anmult::cli {

using io::Json;

constexpr int exit_ok = 0;
constexpr int exit_domain = 2;
constexpr int exit_validation = 3;

inline const char* cache_env = "ANMULT_CALIBRATION";
inline const char* default_cache = "anmult_calibration.json";

struct Weight {
  OrbitLabel label;
  std::optional<int> rank;  // fixed by r: syntax
};

/// "q:3,2,1" (orbit label) or "r:1,0,1" (Dynkin labels, rank = length)
inline Weight parse_weight(const std::string& text) {
  if (text.size() < 2 || text[1] != ':' || (text[0] != 'q' && text[0] != 'r'))
    throw DomainError("malformed weight '" + text + "': expected q:... or r:...");
  const std::string body = text.substr(2);
  std::vector<int> v;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("malformed weight '" + text + "'");
    v.push_back(std::stoi(item));
  }
  if (v.empty()) throw DomainError("malformed weight '" + text + "'");
  if (text[0] == 'r') {
    DynkinLabels d(v);
    return {to_orbit_label(d), d.rank()};
  }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) throw DomainError("orbit label '" + body + "' must be non-increasing");
  if (v.back() == 0) throw DomainError("orbit label '" + body + "' must have positive parts");
  return {Partition(std::move(v)), std::nullopt};
}

/// smallest rank at which every orbit below the label exists
inline int natural_rank(const OrbitLabel& q) { return std::max({1, static_cast<int>(q.size()), q.weight() - 1}); }

inline int resolve_rank(const Weight& w, std::optional<int> flag) {
  if (w.rank && flag && *flag != *w.rank) throw DomainError("--rank conflicts with the length of the Dynkin labels");
  if (w.rank) return *w.rank;
  if (flag) {
    if (*flag < 1) throw DomainError("rank must be at least 1");
    return *flag;
  }
  return natural_rank(w.label);
}

/// "8..12", "8,9,10" or "8"
inline std::vector<int> parse_ranks(const std::string& text) {
  std::vector<int> out;
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw DomainError("malformed rank list '" + text + "'");
    return std::stoi(s);
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo > hi) throw DomainError("empty rank range '" + text + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(number(item));
  if (out.empty()) throw DomainError("empty rank list");
  return out;
}

inline std::vector<Partition> parse_formula_ids(const std::string& text) {
  std::vector<Partition> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto id = Partition::parse_compact(item);
    builtin_formula(id);  // rejects unknown ids
    out.push_back(std::move(id));
  }
  return out;
}

inline std::string cache_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(cache_env); env && *env) return env;
  return default_cache;
}

inline void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw DomainError("cannot write " + tmp);
    f << content;
    if (!f) throw DomainError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline Calibration load_calibration(const std::string& path) {
  if (!std::filesystem::exists(path)) throw DomainError("missing calibration cache " + path + " (run `anmult calibrate` first)");
  return io::calibration_from_json(read_json_file(path));
}

/// Plain aligned columns.
inline void print_table(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out << "  ";
      if (c + 1 == r.size()) out << r[c];
      else out << std::left << std::setw(static_cast<int>(width[c])) << r[c];
    }
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

struct Options {
  std::string format = "json";
  std::string cache;
};

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline void emit_multiplicities(std::ostream& out, const Options& o, const MultiplicityTable& t, int rank) {
  if (o.format == "json") return emit(out, io::table_json(t, rank));
  std::vector<std::vector<std::string>> rows;
  for (const auto& [label, m] : t.entries())
    rows.push_back({label.to_string(), std::to_string(grade(label)), to_string(m), to_string(orbit_dimension(label, rank))});
  out << "top " << t.top().to_string() << ", N=" << rank << "\n";
  print_table(out, {"orbit", "grade", "mult", "orbit dim"}, rows);
}

inline int cmd_dim(std::ostream& out, const Options& o, const std::string& weight, std::optional<int> rank_flag) {
  const auto w = parse_weight(weight);
  const int rank = resolve_rank(w, rank_flag);
  const auto d = to_dynkin(w.label, rank);
  const Integer dim = weyl_dimension(d);
  if (o.format == "json") {
    Json j;
    j["dynkin"] = d.to_string();
    j["label"] = w.label.to_string();
    j["rank"] = rank;
    j["dimension"] = io::integer_json(dim);
    emit(out, j);
  } else {
    out << to_string(dim) << "\n";
  }
  return exit_ok;
}

inline int cmd_orbits(std::ostream& out, const Options& o, const std::string& weight, std::optional<int> rank_flag) {
  const auto w = parse_weight(weight);
  const int rank = resolve_rank(w, rank_flag);
  const auto labels = sub_dominants(w.label);
  if (o.format == "json") {
    Json j;
    j["top"] = w.label.to_string();
    j["rank"] = rank;
    Json list = Json::array();
    for (const auto& q : labels) {
      Json e;
      e["label"] = q.to_string();
      e["grade"] = grade(q);
      e["orbit_dimension"] = io::integer_json(orbit_dimension(q, rank));
      list.push_back(std::move(e));
    }
    j["orbits"] = std::move(list);
    emit(out, j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& q : labels) rows.push_back({q.to_string(), std::to_string(grade(q)), to_string(orbit_dimension(q, rank))});
    out << "top " << w.label.to_string() << ", N=" << rank << "\n";
    print_table(out, {"orbit", "grade", "orbit dim"}, rows);
  }
  return exit_ok;
}

inline int cmd_theta(std::ostream& out, const Options& o, const std::string& weight, std::optional<int> rank_flag, const std::string& degrees,
                     bool closed_form) {
  const auto w = parse_weight(weight);
  const auto ss = parse_ranks(degrees);
  Json j;
  j["top"] = w.label.to_string();
  std::vector<std::vector<std::string>> rows;
  Json values = Json::object();
  if (closed_form) {
    if (w.rank) throw DomainError("closed forms need an orbit label (q:...), not fixed Dynkin labels");
    for (int s : ss) {
      const auto f = theta_closed_form(w.label, s);
      values[std::to_string(s)] = io::ratfunc_json(f);
      rows.push_back({std::to_string(s), f.to_string()});
    }
  } else {
    const int rank = resolve_rank(w, rank_flag);
    j["rank"] = rank;
    const auto d = to_dynkin(w.label, rank);
    for (int s : ss) {
      const auto v = theta_power(s, d);
      values[std::to_string(s)] = io::rational_json(v);
      rows.push_back({std::to_string(s), to_string(v)});
    }
  }
  j["theta"] = std::move(values);
  if (o.format == "json") emit(out, j);
  else print_table(out, {"s", closed_form ? "Theta(s) as a function of N" : "Theta(s)"}, rows);
  return exit_ok;
}

inline int cmd_cof(std::ostream& out, const Options& o, const std::string& label_text, int s, std::optional<int> rank) {
  const auto w = parse_weight(label_text.rfind("q:", 0) == 0 || label_text.rfind("r:", 0) == 0 ? label_text : "q:" + label_text);
  if (w.label.weight() > s) throw DomainError("orbit height exceeds the character degree");
  const auto e = orbit_character_expansion(w.label, s);
  if (o.format == "json") {
    Json j = io::expansion_json(w.label, *e);
    if (rank) {
      Json v = Json::object();
      for (const auto& [mu, p] : e->terms())
        if (!mu.contains_one()) v[mu.to_string()] = io::rational_json(p(*rank));
      j["rank"] = *rank;
      j["observable_values"] = std::move(v);
    }
    emit(out, j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [mu, p] : e->terms()) {
      std::vector<std::string> r{mu.to_string(), p.to_string()};
      if (rank) r.push_back(to_string(p(*rank)));
      rows.push_back(std::move(r));
    }
    std::vector<std::string> header{"power sums", "coefficient"};
    if (rank) header.push_back("at N=" + std::to_string(*rank));
    print_table(out, header, rows);
  }
  return exit_ok;
}

inline int cmd_freudenthal(std::ostream& out, const Options& o, const std::string& weight, std::optional<int> rank_flag) {
  const auto w = parse_weight(weight);
  const int rank = resolve_rank(w, rank_flag);
  const auto t = freudenthal(to_dynkin(w.label, rank));
  emit_multiplicities(out, o, t, rank);
  return exit_ok;
}

inline int cmd_calibrate(std::ostream& out, const Options& o, int height) {
  if (height < 1) throw DomainError("corpus height must be positive");
  const Calibration cal = calibrate_builtin(height, height + 2);
  const Json j = io::calibration_json(cal);
  const std::string path = cache_path(o.cache);
  write_atomically(path, j.dump(2) + "\n");
  if (o.format == "json") {
    emit(out, j);
  } else {
    out << "calibration written to " << path << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [id, d] : cal.status) {
      std::string detail = d.valid ? "" : d.summary;
      if (d.first_failing_term) detail += "; first failing term " + *d.first_failing_term + " (ratio " + d.failing_ratio.value_or("?") + ")";
      for (const auto& h : d.hints) detail += "; " + h;
      rows.push_back({id.compact(), d.valid ? "valid" : "suspect", std::to_string(d.checked_pairs), detail});
    }
    print_table(out, {"formula", "status", "pairs", "detail"}, rows);
  }
  return cal.valid_ids().empty() ? exit_validation : exit_ok;
}

inline std::vector<MultiplicityIdentity> chosen_identities(const Calibration& cal, const std::string& formulas,
                                                           const std::vector<std::string>& derived_files, std::vector<std::string>& warnings) {
  std::vector<FormulaSpec> specs;
  if (!formulas.empty())
    for (const auto& id : parse_formula_ids(formulas)) specs.push_back(builtin_formula(id));
  else if (derived_files.empty())
    specs = builtin_formulas();
  auto ids = valid_identities(specs, cal, &warnings);
  for (const auto& path : derived_files) ids.push_back(identity_of(io::derived_from_json(read_json_file(path))));
  if (ids.empty()) throw DomainError("none of the requested formulas is valid");
  return ids;
}

inline int cmd_solve(std::ostream& out, const Options& o, const std::string& weight, const std::string& ranks, const std::string& formulas,
                     const std::vector<std::string>& derived_files, bool cross_check) {
  const auto w = parse_weight(weight);
  const Calibration cal = load_calibration(cache_path(o.cache));
  std::vector<std::string> warnings;
  const auto ids = chosen_identities(cal, formulas, derived_files, warnings);
  SolveOptions opts;
  if (!ranks.empty()) opts.ranks = parse_ranks(ranks);
  opts.cross_check = cross_check;
  SolveReport r = solve_multiplicities(w.label, ids, opts);
  r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
  if (o.format == "json") {
    emit(out, io::solve_report_json(r));
  } else {
    emit_multiplicities(out, o, *r.solution, r.ranks.empty() ? natural_rank(w.label) : r.ranks.front());
    out << "system: " << r.rows << " rows, " << r.unknowns << " unknowns, rank " << r.rank << ", nullity " << r.nullity << "\n";
    if (r.oracle_agrees) out << "freudenthal at N=" << r.oracle_rank << ": " << (*r.oracle_agrees ? "agrees" : "DISAGREES") << "\n";
    for (const auto& msg : r.warnings) out << "warning: " << msg << "\n";
  }
  if (r.oracle_agrees && !*r.oracle_agrees) return exit_validation;
  return exit_ok;
}

inline int cmd_derive(std::ostream& out, const Options& o, const std::string& id_text, const std::string& out_path) {
  const auto id = Partition::parse_compact(id_text);
  const auto f = derive_formula(id, default_fit_corpus(), default_holdout_corpus());
  const Json j = io::derived_json(f);
  if (!out_path.empty()) write_atomically(out_path, j.dump(2) + "\n");
  if (o.format == "json") {
    emit(out, j);
  } else {
    out << "rep_cof(" << id.compact() << ")/dim =\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& q : ansatz_basis(id))
      if (f.coefficients.count(q)) {
        std::string mono;
        for (int d : q.parts()) mono += "Theta(" + std::to_string(d) + ")";
        rows.push_back({mono.empty() ? "1" : mono, f.coefficients.at(q).to_string()});
      }
    print_table(out, {"monomial", "coefficient"}, rows);
    out << "fitted on N=" << f.fit_ranks.front() << ".." << f.fit_ranks.back() << ", " << f.validated_pairs << " validated pairs\n";
  }
  return exit_ok;
}

inline int cmd_verify(std::ostream& out, const Options& o, const std::string& path, const std::string& ranks, const std::string& formulas,
                      const std::vector<std::string>& derived_files) {
  Json j = read_json_file(path);
  if (j.contains("solution")) j = j.at("solution");
  const auto [table, stored_rank] = io::table_from_json(j);
  if (table.empty()) throw DomainError("empty multiplicity table");
  const Calibration cal = load_calibration(cache_path(o.cache));
  std::vector<std::string> warnings;
  const auto ids = chosen_identities(cal, formulas, derived_files, warnings);
  std::vector<int> ns;
  if (!ranks.empty()) ns = parse_ranks(ranks);
  else if (stored_rank > 0) ns = {stored_rank};
  else ns = {natural_rank(table.top()) + 1};

  bool all_zero = true;
  Json residuals = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& id : ids)
    for (int n : ns) {
      if (n <= static_cast<int>(table.top().size())) throw DomainError("rank must exceed the number of parts of the top label");
      const auto r = phi_residual(id, table, n);
      Json e;
      e["formula"] = id.name;
      e["rank"] = n;
      e["residual"] = r ? io::rational_json(*r) : Json();
      residuals.push_back(std::move(e));
      rows.push_back({id.name, std::to_string(n), r ? to_string(*r) : "undefined"});
      if (r && *r != 0) all_zero = false;
    }
  if (o.format == "json") {
    Json rep;
    rep["top"] = table.top().to_string();
    rep["residuals"] = std::move(residuals);
    rep["all_zero"] = all_zero;
    rep["warnings"] = warnings;
    emit(out, rep);
  } else {
    print_table(out, {"formula", "N", "residual"}, rows);
    for (const auto& msg : warnings) out << "warning: " << msg << "\n";
  }
  return all_zero ? exit_ok : exit_validation;
}

/// Entry point shared by main() and the tests. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact A_N weight multiplicities from closed-form identities", "anmult"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--cache", o.cache, std::string("calibration cache (default $") + cache_env + " or " + default_cache + ")");

  std::string weight, ranks, formulas, degrees = "1..7", id_text, path, out_path;
  std::optional<int> rank;
  int s = 0, height = 4;
  bool closed_form = false, cross_check = false;
  std::vector<std::string> derived_files;

  auto* dim = app.add_subcommand("dim", "Weyl dimension");
  dim->add_option("weight", weight, "q:LABEL or r:DYNKIN")->required();
  dim->add_option("--rank", rank);

  auto* orbits = app.add_subcommand("orbits", "sub-dominant orbits with grades and sizes");
  orbits->add_option("weight", weight)->required();
  orbits->add_option("--rank", rank);

  auto* theta = app.add_subcommand("theta", "power sums Theta(s)");
  theta->add_option("weight", weight)->required();
  theta->add_option("--rank", rank);
  theta->add_option("--degrees", degrees, "e.g. 2..7");
  theta->add_flag("--closed-form", closed_form, "as functions of N");

  auto* cof = app.add_subcommand("cof", "orbit character in power sums");
  cof->add_option("label", weight)->required();
  cof->add_option("--degree,-s", s)->required();
  cof->add_option("--rank", rank);

  auto* fr = app.add_subcommand("freudenthal", "multiplicities by recursion");
  fr->add_option("weight", weight)->required();
  fr->add_option("--rank", rank);

  auto* cal = app.add_subcommand("calibrate", "fit and validate the undetermined factors, write the cache");
  cal->add_option("--corpus-height", height, "largest top height used for fitting");

  auto* solve = app.add_subcommand("solve", "multiplicities from the identities");
  solve->add_option("weight", weight)->required();
  solve->add_option("--ranks", ranks);
  solve->add_option("--formulas", formulas, "e.g. 7,52,43");
  solve->add_option("--derived", derived_files, "derived formula JSON files");
  solve->add_flag("--cross-check", cross_check);

  auto* derive = app.add_subcommand("derive", "fit and validate a new identity");
  derive->add_option("id", id_text)->required();
  derive->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "residuals of a multiplicity table");
  verify->add_option("table", path, "JSON table or solve report")->required();
  verify->add_option("--ranks", ranks);
  verify->add_option("--formulas", formulas);
  verify->add_option("--derived", derived_files);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }

  try {
    if (*dim) return cmd_dim(out, o, weight, rank);
    if (*orbits) return cmd_orbits(out, o, weight, rank);
    if (*theta) return cmd_theta(out, o, weight, rank, degrees, closed_form);
    if (*cof) return cmd_cof(out, o, weight, s, rank);
    if (*fr) return cmd_freudenthal(out, o, weight, rank);
    if (*cal) return cmd_calibrate(out, o, height);
    if (*solve) return cmd_solve(out, o, weight, ranks, formulas, derived_files, cross_check);
    if (*derive) return cmd_derive(out, o, id_text, out_path);
    if (*verify) return cmd_verify(out, o, path, ranks, formulas, derived_files);
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  }
  return exit_domain;
}

}  // namespace anmult::cli
