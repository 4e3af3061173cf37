#pragma once

// Versioned JSON reports. Keys keep insertion order and no field depends on
// wall-clock time unless timing output is requested, so a fixed config gives
// byte-identical output.

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhecke/harness/experiments.hpp"
#include "qhecke/lfun/lcache.hpp"
#include "qhecke/series_probe.hpp"

namespace qhecke::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "qhecke-report/1";

inline json cjson(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json report_header(const std::string& command) {
  return json{{"schema", kReportSchema}, {"command", command}};
}

inline json to_json(const experiment_report& r, bool timing) {
  json j;
  j["theorem"] = r.theorem;
  j["variant"] = r.variant;
  j["scale"] = r.scale;
  j["lhs"] = cjson(r.lhs);
  j["lhs_error_bound"] = r.lhs_error;
  j["rhs"] = cjson(r.rhs);
  j["rhs_error"] = "closed form";
  j["ratio"] = cjson(r.ratio);
  if (r.rhs_general) j["rhs_general"] = *r.rhs_general;
  if (r.lhs_tail_corrected) j["lhs_tail_corrected"] = *r.lhs_tail_corrected;
  if (r.family_size) j["family_size"] = *r.family_size;
  if (r.variant == "density") {
    j["zeros"] = r.zeros;
    j["zeros_certified"] = r.zeros_certified;
  }
  j["primes"] = r.primes;
  j["terms"] = r.terms;
  j["order"] = r.order_tag;
  j["warnings"] = r.warnings;
  if (timing) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

inline json to_json(const vaughan_decomposition& v) {
  json j;
  j["Z"] = v.Z;
  j["u"] = v.u;
  j["r"] = to_string(v.r);
  j["psi"] = v.psi;
  j["sigma0"] = cjson(v.sigma0);
  j["sigma1"] = cjson(v.sigma1);
  j["sigma2p"] = cjson(v.sigma2p);
  j["sigma2pp"] = cjson(v.sigma2pp);
  j["sigma3"] = cjson(v.sigma3);
  j["sigma4"] = cjson(v.sigma4);
  j["sigma4_as_printed"] = cjson(v.sigma4_as_printed);
  j["identity_residual"] = v.identity_residual();
  j["terms"] = v.terms;
  return j;
}

inline json to_json(const zero_list& z) {
  json j;
  j["conductor"] = z.conductor;
  j["search_height"] = z.search_height;
  j["count"] = z.ordinates.size();
  j["expected_count"] = z.expected_count;
  j["missed_zero_warning"] = z.missed_zero_warning;
  j["max_imag_residual"] = z.max_imag_residual;
  json zs = json::array();
  for (const auto& b : z.brackets) zs.push_back(json{{"gamma", b.mid()}, {"lo", b.lo}, {"hi", b.hi}});
  j["zeros"] = zs;
  return j;
}

inline json to_json(const bound_fit& f) {
  return json{{"slope", f.slope},         {"intercept", f.intercept},
              {"reference", f.reference}, {"points", f.points},
              {"degenerate", f.degenerate}, {"within_reference", f.within_reference},
              {"residuals", f.residuals}};
}

inline json to_json(const series_sample& s) {
  json values = json::array();
  for (const auto& v : s.values) values.push_back(cjson(v));
  return json{{"context", s.context}, {"grid", s.grid}, {"values", values}, {"running_max", s.running_max},
              {"terms", s.terms}};
}

inline json to_json(const h_relations_report& r) {
  json rel = json::array();
  for (const auto& c : r.relations)
    rel.push_back(json{{"name", c.name},
                       {"lhs", cjson(c.lhs)},
                       {"rhs", cjson(c.rhs)},
                       {"discrepancy", c.discrepancy},
                       {"tail_bound", c.bound},
                       {"pass", c.pass}});
  return json{{"r1", to_string(r.r1)}, {"r2", to_string(r.r2)}, {"r3", to_string(r.r3)},
              {"psi", r.psi},          {"s", cjson(r.s)},       {"norm_cap", r.norm_cap},
              {"relations", rel},      {"pass", r.pass()}};
}

inline json error_json(const std::string& kind, const std::string& message, int code) {
  return json{{"schema", kReportSchema}, {"error", kind}, {"message", message}, {"exit_code", code}};
}

}  // namespace qhecke::cli
