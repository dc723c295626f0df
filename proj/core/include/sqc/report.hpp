#pragma once

#include <map>
#include <string>

#include "sqc/checks.hpp"
#include "sqc/constructions.hpp"
#include "sqc/counterexample.hpp"
#include "sqc/minimize.hpp"
#include "sqc/modulus.hpp"

namespace sqc {

/// JSON fragments of the sqc-report/1 schema, serialized with sorted
/// keys so identical inputs produce byte-identical documents. Only the
/// top-level document (assembled by the CLI) carries the timestamp.
namespace report {

std::string query_json(const SegmentQuery& q);
std::string verdict_json(const ConditionVerdict& v);
std::string summary_json(const ConditionSummary& s, const FunctionSpec& f,
                         const SuiteResult& suite);
std::string suite_json(const SuiteResult& suite, const FunctionSpec& f);
std::string estimate_json(const ModulusEstimate& est);
std::string trace_json(const PartitionTrace& trace, const PartitionVerdict& verdict);
std::string saks_json(const SaksCheck& check);
std::string audit_json(const AuditReport& audit);
std::string bracket_json(const BracketResult& res);

/// CSV dump of a partition trace: i, w_i..., h(w_i), b_i.
std::string trace_csv(const PartitionTrace& trace);

/// Wraps pre-rendered JSON sections into the top-level document:
/// {"schema":..., "version":..., "timestamp":..., "config": {...}, ...}.
/// `sections` maps section name to an already-serialized JSON value.
std::string document(const std::map<std::string, std::string>& config_fields,
                     const std::map<std::string, std::string>& sections,
                     const std::string& timestamp);

}  // namespace report
}  // namespace sqc
