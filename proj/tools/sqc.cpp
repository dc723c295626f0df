// sqc: numerical verification toolkit for strong quasiconvexity.
//
// Subcommands: check, estimate, counterexample, construction, minimize,
// catalog. Reports are printed as fixed-width text on stdout by default;
// --format json emits the machine-readable sqc-report/1 document, and
// --out writes that document to a file regardless of the stdout format.
// Exit codes: 0 all checks passed, 1 falsified / not unimodal, 2 usage
// or evaluation error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "sqc/checks.hpp"
#include "sqc/constructions.hpp"
#include "sqc/counterexample.hpp"
#include "sqc/errors.hpp"
#include "sqc/function_model.hpp"
#include "sqc/minimize.hpp"
#include "sqc/modulus.hpp"
#include "sqc/report.hpp"
#include "sqc/version.hpp"

namespace {

using namespace sqc;

constexpr int kExitPass = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitError = 2;

struct CommonOpts {
  std::string catalog_id;
  std::string expr;
  int dim = 1;
  std::vector<double> box;
  std::string gamma = "0";
  std::string conditions = "definition,implication_form,no_integral,dini,gradient";
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  int n_random = 2000;
  int grid = 0;
  int t_grid = 31;
  double sep_min = 1e-8;
  double dini_t0 = StepSchedule{}.t0;
  double dini_rho = StepSchedule{}.rho;
  int dini_k = StepSchedule{}.steps;
  int dini_tail = StepSchedule{}.tail;
  int jobs = 1;
  std::string out;
  std::string format = "text";
  std::string config_path;
};

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "RNG seed for query sampling")
      ->envname("SQC_SEED")
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "pass/premise tolerance")->capture_default_str();
  cmd->add_option("--out", o.out, "write the JSON report to this path");
  cmd->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "worker threads for suite/estimate runs")
      ->capture_default_str();
  cmd->add_option("--config", o.config_path,
                  "flat key=value file mirroring the flags (flags override it)");
}

void add_function_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--catalog", o.catalog_id, "catalog entry id");
  cmd->add_option("--expr", o.expr, "expression in x1..xn");
  cmd->add_option("--dim", o.dim, "dimension for --expr")->capture_default_str();
  cmd->add_option("--box", o.box,
                  "domain bounds: lo hi (all axes) or lo1 hi1 lo2 hi2 ...");
}

void add_sampling_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n-random", o.n_random, "seeded random query pairs")->capture_default_str();
  cmd->add_option("--grid", o.grid, "grid points per axis (0 = auto)")->capture_default_str();
  cmd->add_option("--t-grid", o.t_grid, "interior t values (plus t=1)")->capture_default_str();
  cmd->add_option("--sep-min", o.sep_min, "minimum |y-x| for a query")->capture_default_str();
  cmd->add_option("--dini-t0", o.dini_t0, "largest Dini step")->capture_default_str();
  cmd->add_option("--dini-rho", o.dini_rho, "Dini step decay")->capture_default_str();
  cmd->add_option("--dini-k", o.dini_k, "Dini step count")->capture_default_str();
  cmd->add_option("--dini-tail", o.dini_tail, "Dini sup/inf window")->capture_default_str();
}

FunctionSpec resolve_function(const CommonOpts& o) {
  if (!o.catalog_id.empty() && !o.expr.empty())
    throw UsageError("give either --catalog or --expr, not both");
  if (!o.catalog_id.empty()) {
    int dim = o.dim;
    // --dim only re-dimensions entries that generalize; 1 is the default
    // everywhere so pass 0 (native) unless the user overrode it.
    return catalog_entry(o.catalog_id, dim == 1 ? 0 : dim);
  }
  if (o.expr.empty()) throw UsageError("a function source is required: --catalog or --expr");
  DomainBox box;
  box.dimension = o.dim;
  if (o.box.size() == 2) {
    box.lower.assign(static_cast<std::size_t>(o.dim), o.box[0]);
    box.upper.assign(static_cast<std::size_t>(o.dim), o.box[1]);
  } else if (o.box.size() == 2 * static_cast<std::size_t>(o.dim)) {
    for (int d = 0; d < o.dim; ++d) {
      box.lower.push_back(o.box[2 * static_cast<std::size_t>(d)]);
      box.upper.push_back(o.box[2 * static_cast<std::size_t>(d) + 1]);
    }
  } else {
    throw UsageError("--box needs 2 or 2*dim values");
  }
  return from_expression("expr", o.expr, o.dim, box);
}

SampleSpec resolve_sample_spec(const CommonOpts& o) {
  SampleSpec spec;
  spec.seed = o.seed;
  spec.n_random = o.n_random;
  spec.grid_per_axis = o.grid;
  spec.t_grid = o.t_grid;
  spec.sep_min = o.sep_min;
  spec.validate();
  return spec;
}

StepSchedule resolve_schedule(const CommonOpts& o) {
  StepSchedule s;
  s.t0 = o.dini_t0;
  s.rho = o.dini_rho;
  s.steps = o.dini_k;
  s.tail = o.dini_tail;
  s.validate();
  return s;
}

std::set<Condition> resolve_conditions(const std::string& csv, const FunctionSpec& f,
                                       bool explicit_set) {
  std::set<Condition> conds;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Condition c = condition_from_name(item);
    if (c == Condition::Gradient && !f.has_gradient()) {
      // the default set adapts to gradient-less functions; an explicit
      // request is an error
      if (explicit_set)
        throw UsageError(f.id + " carries no gradient; drop 'gradient' from --conditions");
      continue;
    }
    conds.insert(c);
  }
  return conds;
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::map<std::string, std::string> config_fields(const CommonOpts& o, const std::string& command) {
  std::map<std::string, std::string> c;
  c["command"] = command;
  if (!o.catalog_id.empty()) c["catalog"] = o.catalog_id;
  if (!o.expr.empty()) {
    c["expr"] = o.expr;
    c["dim"] = std::to_string(o.dim);
  }
  c["gamma"] = o.gamma;
  c["conditions"] = o.conditions;
  c["seed"] = std::to_string(o.seed);
  c["tol"] = fmt::format("{}", o.tol);
  c["n_random"] = std::to_string(o.n_random);
  c["grid_per_axis"] = std::to_string(o.grid);
  c["t_grid"] = std::to_string(o.t_grid);
  c["sep_min"] = fmt::format("{}", o.sep_min);
  c["dini_t0"] = fmt::format("{}", o.dini_t0);
  c["dini_rho"] = fmt::format("{}", o.dini_rho);
  c["dini_k"] = std::to_string(o.dini_k);
  c["dini_tail"] = std::to_string(o.dini_tail);
  c["jobs"] = std::to_string(o.jobs);
  return c;
}

void emit(const CommonOpts& o, const std::map<std::string, std::string>& config,
          const std::map<std::string, std::string>& sections, const std::string& text,
          const std::string& csv = "") {
  std::string doc = report::document(config, sections, timestamp_utc());
  if (o.format == "json") {
    fmt::print("{}", doc);
  } else if (o.format == "csv") {
    fmt::print("{}", csv.empty() ? text : csv);
  } else {
    fmt::print("{}", text);
  }
  if (!o.out.empty()) {
    std::ofstream out(o.out);
    if (!out) throw UsageError("cannot write " + o.out);
    out << doc;
  }
}

/// Segment commands accept endpoints outside the catalog box (the
/// built-in bodies are total); the sampling box stays authoritative for
/// suite and estimate runs.
FunctionSpec extend_domain_to(FunctionSpec f, const std::vector<const Vec*>& points) {
  for (const Vec* p : points) {
    if (p->size() != static_cast<std::size_t>(f.dimension))
      throw DimensionMismatch("--x/--y must have " + std::to_string(f.dimension) +
                              " coordinates");
    for (std::size_t d = 0; d < p->size(); ++d) {
      f.domain.lower[d] = std::min(f.domain.lower[d], (*p)[d]);
      f.domain.upper[d] = std::max(f.domain.upper[d], (*p)[d]);
    }
  }
  return f;
}

double parse_gamma(const CommonOpts& o, const FunctionSpec& f, const SampleSpec& spec) {
  if (o.gamma == "estimate") return modulus_definition(f, spec, o.tol).gamma_hat;
  try {
    std::size_t pos = 0;
    double g = std::stod(o.gamma, &pos);
    if (pos != o.gamma.size()) throw std::invalid_argument("trailing");
    if (g < 0.0) throw UsageError("gamma must be nonnegative");
    return g;
  } catch (const std::invalid_argument&) {
    throw UsageError("--gamma expects a number or 'estimate'");
  }
}

std::string format_margin(double m) {
  if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
  return fmt::format("{:.6g}", m);
}

std::string query_text(const SegmentQuery& q) {
  auto vec = [](const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt::format("{:.6g}", v[i]);
    return s + ")";
  };
  return fmt::format("x={} y={} t={:.6g}", vec(q.x), vec(q.y), q.t);
}

// ---- check ----

int cmd_check(const CommonOpts& o, bool conditions_explicit) {
  FunctionSpec f = resolve_function(o);
  SampleSpec spec = resolve_sample_spec(o);
  double gamma = parse_gamma(o, f, spec);
  auto conds = resolve_conditions(o.conditions, f, conditions_explicit);
  SuiteOptions so;
  so.jobs = o.jobs;
  so.schedule = resolve_schedule(o);
  SuiteResult suite = run_suite(f, conds, gamma, spec, o.tol, so);

  std::string text = fmt::format("sqc check: {} at gamma = {:.6g}\n", f.id, gamma);
  text += fmt::format("{:<18} {:>9} {:>9} {:>9} {:>9} {:>14}\n", "condition", "pass", "fail",
                      "vacuous", "skipped", "worst margin");
  for (const auto& s : suite.summaries) {
    text += fmt::format("{:<18} {:>9} {:>9} {:>9} {:>9} {:>14}\n", condition_name(s.condition),
                        s.passed, s.failed, s.vacuous, s.skipped,
                        s.worst_query ? format_margin(s.worst_margin) : "-");
  }
  bool falsified = suite.total_failed() > 0;
  if (falsified) {
    const ConditionSummary* worst = nullptr;
    for (const auto& s : suite.summaries)
      if (s.failed > 0 && (!worst || s.worst_margin < worst->worst_margin)) worst = &s;
    text += fmt::format("FALSIFIED: {} margin {} at {}\n", condition_name(worst->condition),
                        format_margin(worst->worst_margin), query_text(*worst->worst_query));
  } else {
    text += "all conditions passed\n";
  }

  auto cfg = config_fields(o, "check");
  cfg["resolved_gamma"] = fmt::format("{}", gamma);
  emit(o, cfg, {{"check", report::suite_json(suite, f)}}, text);
  return falsified ? kExitFalsified : kExitPass;
}

// ---- estimate ----

int cmd_estimate(const CommonOpts& o, bool conditions_explicit) {
  FunctionSpec f = resolve_function(o);
  SampleSpec spec = resolve_sample_spec(o);
  StepSchedule schedule = resolve_schedule(o);
  std::set<Condition> wanted;
  if (conditions_explicit) {
    wanted = resolve_conditions(o.conditions, f, true);
  } else {
    wanted = {Condition::Definition, Condition::NoIntegral, Condition::Dini,
              Condition::QuadraticGrowth};
  }

  std::vector<ModulusEstimate> estimates;
  if (wanted.count(Condition::Definition))
    estimates.push_back(modulus_definition(f, spec, o.tol));
  if (wanted.count(Condition::NoIntegral))
    estimates.push_back(modulus_no_integral(f, spec, o.tol));
  if (wanted.count(Condition::Dini))
    estimates.push_back(modulus_dini(f, spec, schedule, o.tol));
  if (wanted.count(Condition::QuadraticGrowth) && f.ground_truth &&
      f.ground_truth->known_minimizer)
    estimates.push_back(modulus_growth(f, *f.ground_truth->known_minimizer, spec, o.tol));
  if (estimates.empty())
    throw UsageError("no estimable condition requested (definition, no_integral, dini, "
                     "quadratic_growth)");

  std::string text = fmt::format("sqc estimate: {} (empirical, upper bounds on the true modulus)\n",
                                 f.id);
  text += fmt::format("{:<18} {:>12} {:>14} {:>12} {:>16}\n", "condition", "gamma_hat",
                      "raw infimum", "n_effective", "not_quasiconvex");
  std::string sections = "[";
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& e = estimates[i];
    text += fmt::format("{:<18} {:>12.6g} {:>14.6g} {:>12} {:>16}\n",
                        condition_name(e.condition), e.gamma_hat, e.raw_infimum, e.n_effective,
                        e.not_quasiconvex ? "yes" : "no");
    if (e.not_quasiconvex)
      text += fmt::format("  witness: {} ratio {:.6g}\n", query_text(e.witness), e.raw_infimum);
    sections += (i ? "," : "") + report::estimate_json(e);
  }
  sections += "]";

  emit(o, config_fields(o, "estimate"), {{"estimate", sections}}, text);
  return kExitPass;
}

// ---- counterexample ----

int cmd_counterexample(const CommonOpts& o, int v_grid, int lambda_grid) {
  AuditReport audit = run_audit(v_grid, lambda_grid);

  std::string text = "sqc counterexample: audit of the published lemma instance\n";
  text += fmt::format("{:<44} {:>6} {:>14}\n", "hypothesis", "pass", "margin");
  for (const auto& h : audit.hypotheses)
    text += fmt::format("{:<44} {:>6} {:>14.6g}\n", h.name, h.pass ? "yes" : "NO", h.margin);
  text += fmt::format("quasiconvexity violation (known (1,3,2)): {:.12g}\n",
                      audit.violation.known.violation);
  text += fmt::format("quasiconvexity violation (grid search): {:.12g} at ({:.6g},{:.6g},{:.6g})\n",
                      audit.violation.searched.violation, audit.violation.searched.u1,
                      audit.violation.searched.mid, audit.violation.searched.u2);
  text += fmt::format("lemma conclusion on this instance: {} (max g = {:.6g})\n",
                      audit.conclusion.holds ? "holds" : "violated", audit.conclusion.max_g);
  text += fmt::format("refutation reproduced: {}\n", audit.reproduced ? "yes" : "NO");

  auto cfg = config_fields(o, "counterexample");
  cfg["v_grid"] = std::to_string(v_grid);
  cfg["lambda_grid"] = std::to_string(lambda_grid);
  emit(o, cfg, {{"counterexample", report::audit_json(audit)}}, text);
  return audit.reproduced ? kExitPass : kExitFalsified;
}

// ---- construction ----

int cmd_construction(const CommonOpts& o, const std::vector<double>& xv,
                     const std::vector<double>& yv, double t, const std::string& n_list) {
  FunctionSpec f = extend_domain_to(resolve_function(o), {&xv, &yv});
  SampleSpec spec = resolve_sample_spec(o);
  double gamma = parse_gamma(o, f, spec);

  std::vector<int> ns;
  std::stringstream ss(n_list);
  std::string item;
  while (std::getline(ss, item, ',')) if (!item.empty()) ns.push_back(std::stoi(item));
  if (ns.empty()) throw UsageError("--n-list needs at least one partition size");

  SegmentQuery q = make_query(f, xv, yv, t, o.sep_min);

  std::string text = fmt::format("sqc construction: {} gamma = {:.6g} t = {:.6g}\n", f.id, gamma, t);
  text += fmt::format("{:>6} {:>14} {:>14} {:>14} {:>16} {:>7}\n", "n", "S_n", "L",
                      "L - S_n", "g|y-z|^2/(4n)", "pass");
  std::string sections = "[";
  std::string csv;
  bool all_pass = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto [trace, verdict] = partition_chain(f, q, gamma, ns[i], o.tol);
    all_pass = all_pass && verdict.pass();
    text += fmt::format("{:>6} {:>14.10g} {:>14.10g} {:>14.10g} {:>16.10g} {:>7}\n", trace.n,
                        trace.partial_sum, trace.limit, trace.limit - trace.partial_sum,
                        trace.error_law, verdict.pass() ? "yes" : "NO");
    sections += (i ? "," : "") + report::trace_json(trace, verdict);
    csv += report::trace_csv(trace);
    if (i + 1 < ns.size()) csv += "\n";
  }
  auto saks = saks_inequality_check(f, xv, yv, t, gamma, o.tol);
  all_pass = all_pass && saks.pass;
  text += fmt::format("segment integral bound: lhs {:.10g} >= rhs {:.10g}: {}\n", saks.lhs,
                      saks.rhs, saks.pass ? "yes" : "NO");
  sections += "]";

  auto cfg = config_fields(o, "construction");
  cfg["t"] = fmt::format("{}", t);
  cfg["n_list"] = n_list;
  emit(o, cfg, {{"construction", sections}, {"saks", report::saks_json(saks)}}, text, csv);
  return all_pass ? kExitPass : kExitFalsified;
}

// ---- minimize ----

int cmd_minimize(const CommonOpts& o, const std::vector<double>& xv, const std::vector<double>& yv,
                 double target_width, long max_eval, bool validate, int probes) {
  FunctionSpec f = extend_domain_to(resolve_function(o), {&xv, &yv});
  SegmentRestriction seg = restrict_to_segment(f, xv, yv);

  std::map<std::string, std::string> sections;
  if (validate) {
    UnimodalVerdict v = validate_unimodal(seg, probes, o.tol);
    if (!v.unimodal) {
      std::string text =
          fmt::format("NOT UNIMODAL: probe s = {:.6g} exceeds flanking minima at s = {:.6g} "
                      "and s = {:.6g} by {:.6g}\n",
                      v.s_peak, v.s_left, v.s_right, v.excess);
      auto cfg = config_fields(o, "minimize");
      sections["minimize"] = fmt::format(
          "{{\"not_unimodal\":true,\"s_left\":{},\"s_peak\":{},\"s_right\":{},\"excess\":{}}}",
          v.s_left, v.s_peak, v.s_right, v.excess);
      emit(o, cfg, sections, text);
      return kExitFalsified;
    }
  }

  BracketResult res = minimize_segment(seg, target_width, max_eval);
  SampleSpec spec = resolve_sample_spec(o);
  double gamma = parse_gamma(o, f, spec);
  if (gamma > 0.0) res = growth_diagnostics(res, gamma);

  std::string text = fmt::format("sqc minimize: {} segment, target width {:.3g}\n", f.id,
                                 target_width);
  text += fmt::format("bracket [{:.9g}, {:.9g}] candidate s = {:.9g} value = {:.9g}\n", res.lower,
                      res.upper, res.candidate, res.value);
  text += fmt::format("evaluations {} certificate radius {:.3g}{}\n", res.evaluations,
                      res.certificate_radius, res.budget_exhausted ? " BUDGET EXHAUSTED" : "");
  if (gamma > 0.0)
    text += fmt::format("growth diagnostics at gamma {:.6g}: {}\n", gamma,
                        res.growth_all_consistent ? "consistent"
                                                  : "INCONSISTENT (gamma too large?)");

  auto cfg = config_fields(o, "minimize");
  cfg["target_width"] = fmt::format("{}", target_width);
  sections["minimize"] = report::bracket_json(res);
  emit(o, cfg, sections, text);
  if (res.budget_exhausted) return kExitFalsified;
  if (gamma > 0.0 && !res.growth_all_consistent) return kExitFalsified;
  return kExitPass;
}

// ---- catalog ----

int cmd_catalog(const CommonOpts& o) {
  std::string text = fmt::format("{:<12} {:>4} {:<14} {:>10} {:<24}\n", "id", "dim", "domain",
                                 "gamma_true", "flags");
  std::string sections = "[";
  auto entries = catalog();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& f = entries[i];
    std::string domain = fmt::format("[{:.6g},{:.6g}]", f.domain.lower[0], f.domain.upper[0]);
    if (f.dimension > 1) domain += fmt::format("^{}", f.dimension);
    std::string flags;
    std::string gamma = "-";
    if (f.ground_truth) {
      if (f.ground_truth->known_modulus)
        gamma = fmt::format("{:.6g}", *f.ground_truth->known_modulus);
      for (TruthFlag fl : f.ground_truth->flags) {
        if (!flags.empty()) flags += ",";
        flags += fl == TruthFlag::StronglyQuasiconvex ? "strongly_quasiconvex"
                 : fl == TruthFlag::Quasiconvex       ? "quasiconvex"
                                                      : "not_quasiconvex";
      }
    }
    text += fmt::format("{:<12} {:>4} {:<14} {:>10} {:<24}\n", f.id, f.dimension, domain, gamma,
                        flags);
    sections += fmt::format("{}{{\"id\":\"{}\",\"dimension\":{},\"gamma_true\":{},\"flags\":\"{}\"}}",
                            i ? "," : "", f.id, f.dimension,
                            gamma == "-" ? "null" : gamma, flags);
  }
  sections += "]";
  emit(o, config_fields(o, "catalog"), {{"catalog", sections}}, text);
  return kExitPass;
}

}  // namespace

// Flat key=value config support: file values are injected as flags right
// after the subcommand token, so later (real) flags override them.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty() || args.empty() || args[0].rfind("-", 0) == 0) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    injected.push_back("--" + key);
    if (key == "box" || key == "x" || key == "y") {
      // multi-valued flags take whitespace-separated numbers
      std::istringstream vs(value);
      std::string tok;
      while (vs >> tok) injected.push_back(tok);
    } else {
      injected.push_back(value);
    }
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

int main(int argc, char** argv) {
  CLI::App app{"numerical checks, falsification and modulus estimation for strongly "
               "quasiconvex functions"};
  app.set_version_flag("--version", sqc::kVersion);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CommonOpts o;

  auto* check = app.add_subcommand("check", "run the characterization suite at a fixed gamma");
  add_function_opts(check, o);
  add_sampling_opts(check, o);
  add_output_opts(check, o);
  check->add_option("--gamma", o.gamma, "modulus to test, or 'estimate'")->capture_default_str();
  check->add_option("--conditions", o.conditions, "comma list of conditions")
      ->capture_default_str();

  auto* estimate = app.add_subcommand("estimate", "estimate the largest consistent modulus");
  add_function_opts(estimate, o);
  add_sampling_opts(estimate, o);
  add_output_opts(estimate, o);
  estimate->add_option("--conditions", o.conditions, "comma list of conditions to estimate");

  int v_grid = 401, lambda_grid = 401;
  auto* counterexample =
      app.add_subcommand("counterexample", "reproduce the published counterexample audit");
  counterexample->add_option("--v-grid", v_grid, "grid points for hypothesis checks")
      ->capture_default_str();
  counterexample->add_option("--lambda-grid", lambda_grid, "grid for the conclusion scan")
      ->capture_default_str();
  add_output_opts(counterexample, o);

  std::vector<double> xv, yv;
  double t = 0.5;
  std::string n_list = "1,4,16,64";
  auto* construction =
      app.add_subcommand("construction", "replay the partition-chain construction");
  add_function_opts(construction, o);
  add_output_opts(construction, o);
  construction->add_option("--gamma", o.gamma, "modulus")->capture_default_str();
  construction->add_option("--x", xv, "segment start")->required();
  construction->add_option("--y", yv, "segment end")->required();
  construction->add_option("--t", t, "interpolation parameter in (0,1)")->capture_default_str();
  construction->add_option("--n-list", n_list, "comma list of partition sizes")
      ->capture_default_str();
  construction->add_option("--sep-min", o.sep_min, "minimum |y-x|")->capture_default_str();

  double target_width = 1e-6;
  long max_eval = 100000;
  bool validate = false;
  int probes = 33;
  auto* minimize = app.add_subcommand("minimize", "bracket the minimizer of a segment");
  add_function_opts(minimize, o);
  add_output_opts(minimize, o);
  minimize->add_option("--gamma", o.gamma, "modulus for growth diagnostics (0 = skip)")
      ->capture_default_str();
  minimize->add_option("--x", xv, "segment start")->required();
  minimize->add_option("--y", yv, "segment end")->required();
  minimize->add_option("--target-width", target_width, "bracket width to reach")
      ->capture_default_str();
  minimize->add_option("--max-eval", max_eval, "evaluation budget")->capture_default_str();
  minimize->add_flag("--validate", validate, "screen for unimodality first");
  minimize->add_option("--probes", probes, "probes for --validate")->capture_default_str();

  auto* catalog_cmd = app.add_subcommand("catalog", "list built-in functions and ground truth");
  add_output_opts(catalog_cmd, o);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = inject_config(std::move(args));
    // CLI11 parses reversed argument lists
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const sqc::Error& e) {
    fmt::print(stderr, "sqc: error: {}\n", e.what());
    return kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(o, check->count("--conditions") > 0);
    if (estimate->parsed()) return cmd_estimate(o, estimate->count("--conditions") > 0);
    if (counterexample->parsed()) return cmd_counterexample(o, v_grid, lambda_grid);
    if (construction->parsed()) return cmd_construction(o, xv, yv, t, n_list);
    if (minimize->parsed()) return cmd_minimize(o, xv, yv, target_width, max_eval, validate, probes);
    if (catalog_cmd->parsed()) return cmd_catalog(o);
  } catch (const sqc::Error& e) {
    fmt::print(stderr, "sqc: error: {}\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "sqc: internal error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}
