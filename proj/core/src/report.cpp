#include "sqc/report.hpp"

#include <nlohmann/json.hpp>

#include "sqc/version.hpp"

namespace sqc::report {

using json = nlohmann::json;

namespace {

json vec_json(const Vec& v) { return json(v); }

const char* status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::Vacuous: return "vacuous";
  }
  return "?";
}

json query_obj(const SegmentQuery& q) {
  return json{{"x", vec_json(q.x)}, {"y", vec_json(q.y)}, {"t", q.t}, {"z", vec_json(q.z)}};
}

/// Infinity is the vacuous-margin sentinel; JSON has no literal for it.
json margin_value(double m) {
  if (std::isinf(m)) return json(m > 0 ? "inf" : "-inf");
  return json(m);
}

json summary_obj(const ConditionSummary& s) {
  json j{{"condition", condition_name(s.condition)},
         {"pass", s.passed},
         {"fail", s.failed},
         {"vacuous", s.vacuous},
         {"skipped", s.skipped}};
  if (s.worst_query) {
    j["worst_margin"] = margin_value(s.worst_margin);
    j["worst_query"] = query_obj(*s.worst_query);
  }
  return j;
}

}  // namespace

std::string query_json(const SegmentQuery& q) { return query_obj(q).dump(); }

std::string verdict_json(const ConditionVerdict& v) {
  json j{{"condition", condition_name(v.condition)},
         {"gamma", v.gamma},
         {"status", status_name(v.status)},
         {"margin", margin_value(v.margin)},
         {"tolerance", v.tolerance},
         {"query", query_obj(v.query)}};
  return j.dump();
}

std::string summary_json(const ConditionSummary& s, const FunctionSpec&, const SuiteResult&) {
  return summary_obj(s).dump();
}

std::string suite_json(const SuiteResult& suite, const FunctionSpec&) {
  json summaries = json::array();
  for (const auto& s : suite.summaries) summaries.push_back(summary_obj(s));
  json j{{"gamma", suite.gamma},
         {"tolerance", suite.tolerance},
         {"n_pairs", suite.pairs.size()},
         {"n_t_values", suite.ts.size()},
         {"total_failed", suite.total_failed()},
         {"conditions", summaries}};
  return j.dump();
}

std::string estimate_json(const ModulusEstimate& est) {
  json j{{"condition", condition_name(est.condition)},
         {"gamma_hat", est.gamma_hat},
         {"raw_infimum", est.raw_infimum},
         {"not_quasiconvex", est.not_quasiconvex},
         {"n_effective", est.n_effective},
         {"empirical", true},
         {"witness", query_obj(est.witness)}};
  return j.dump();
}

std::string trace_json(const PartitionTrace& trace, const PartitionVerdict& verdict) {
  json j{{"n", trace.n},
         {"gamma", trace.gamma},
         {"query", query_obj(trace.query)},
         {"partial_sum", trace.partial_sum},
         {"limit", trace.limit},
         {"closed_form_sum", trace.closed_form_sum},
         {"error_law", trace.error_law},
         {"collinearity_deviation", trace.collinearity_deviation},
         {"closed_form_deviation", trace.closed_form_deviation},
         {"error_law_deviation", trace.error_law_deviation},
         {"chain_monotone", verdict.chain_monotone},
         {"steps_pass", verdict.steps_pass},
         {"aggregate_pass", verdict.aggregate_pass},
         {"identities_ok", verdict.identities_ok},
         {"worst_step_margin", verdict.worst_step_margin},
         {"aggregate_margin", verdict.aggregate_margin}};
  return j.dump();
}

std::string saks_json(const SaksCheck& check) {
  json j{{"t", check.t},
         {"lhs", check.lhs},
         {"rhs", check.rhs},
         {"margin", check.margin},
         {"pass", check.pass}};
  return j.dump();
}

std::string audit_json(const AuditReport& audit) {
  json hyps = json::array();
  for (const auto& h : audit.hypotheses)
    hyps.push_back(json{
        {"name", h.name}, {"pass", h.pass}, {"margin", h.margin}, {"detail", h.detail}});
  auto viol = [](const Violation& v) {
    return json{{"u1", v.u1}, {"u2", v.u2}, {"mid", v.mid}, {"violation", v.violation}};
  };
  json j{{"hypotheses", hyps},
         {"violation_known", viol(audit.violation.known)},
         {"violation_searched", viol(audit.violation.searched)},
         {"conclusion",
          json{{"integral_kappa", audit.conclusion.integral_kappa},
               {"holds", audit.conclusion.holds},
               {"max_g", audit.conclusion.max_g},
               {"argmax_lambda", audit.conclusion.argmax_lambda},
               {"note", audit.conclusion.note}}},
         {"reproduced", audit.reproduced}};
  return j.dump();
}

std::string bracket_json(const BracketResult& res) {
  json growth = json::array();
  for (const auto& g : res.growth)
    growth.push_back(json{{"s", g.s},
                          {"value", g.value},
                          {"ambient_distance", g.ambient_distance},
                          {"implied_radius", g.implied_radius},
                          {"consistent", g.consistent}});
  json j{{"lower", res.lower},
         {"upper", res.upper},
         {"candidate", res.candidate},
         {"value", res.value},
         {"evaluations", res.evaluations},
         {"certificate_radius", res.certificate_radius},
         {"budget_exhausted", res.budget_exhausted},
         {"growth_all_consistent", res.growth_all_consistent},
         {"gamma_too_large", res.gamma_too_large},
         {"growth", growth}};
  return j.dump();
}

std::string trace_csv(const PartitionTrace& trace) {
  std::string out = "i";
  const std::size_t dim = trace.query.x.size();
  for (std::size_t d = 0; d < dim; ++d) out += ",w" + std::to_string(d + 1);
  out += ",h_w,b\n";
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    out += std::to_string(i);
    for (double c : trace.points[i]) out += "," + json(c).dump();
    out += "," + json(trace.values[i]).dump();
    out += ",";
    if (i < trace.step_bounds.size()) out += json(trace.step_bounds[i]).dump();
    out += "\n";
  }
  return out;
}

std::string document(const std::map<std::string, std::string>& config_fields,
                     const std::map<std::string, std::string>& sections,
                     const std::string& timestamp) {
  json config = json::object();
  for (const auto& [k, v] : config_fields) config[k] = v;
  json doc{{"schema", kReportSchema},
           {"version", kVersion},
           {"timestamp", timestamp},
           {"config", config}};
  for (const auto& [name, payload] : sections) doc[name] = json::parse(payload);
  return doc.dump(2) + "\n";
}

}  // namespace sqc::report
