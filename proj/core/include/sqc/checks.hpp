#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqc/dini.hpp"
#include "sqc/function_model.hpp"
#include "sqc/sampling.hpp"

namespace sqc {

constexpr double kDefaultTol = 1e-9;

/// Pass threshold for the dini condition. Its margin carries the step
/// estimator's truncation error (~1e-6 on the catalog), so holding it to
/// machine tolerance would misclassify tight smooth cases.
constexpr double kDiniTol = 1e-5;

enum class Condition {
  Definition,       // h(z) <= max{h(x),h(y)} - (g/2) t(1-t) |y-x|^2
  ImplicationForm,  // h(x)<=h(y) => h(y) >= h(z) + (g/2) |z-x||y-z|
  NoIntegral,       // h(x)<=h(z) => h(z) <= h(y) - (g/4)(1-t^2)|y-x|^2
  Dini,             // h(x)<=h(y) => h'_-(y;y-x) >= (g/2)|y-x|^2
  Gradient,         // h(x)<=h(y) => <grad h(y), y-x> >= (g/2)|y-x|^2
  QuadraticGrowth,  // h(y) >= h(xbar) + (g/4)|y-xbar|^2
};

const char* condition_name(Condition c);
Condition condition_from_name(const std::string& name);

enum class VerdictStatus { Pass, Fail, Vacuous };

/// z = x + t(y-x) with 0 < t <= 1, the universal test point.
struct SegmentQuery {
  Vec x;
  Vec y;
  double t = 1.0;
  Vec z;
};

/// Builds the query and derives z. Degenerate pairs (separation below
/// sep_min) are rejected unless allow_degenerate.
SegmentQuery make_query(const FunctionSpec& f, const Vec& x, const Vec& y, double t,
                        double sep_min = 1e-8, bool allow_degenerate = false);

/// Outcome of one characterization at one query. margin is the signed
/// slack of the condition's inequality; pass iff margin >= -tolerance.
/// A vacuous verdict means the condition's premise failed at the query,
/// so the inequality imposes nothing there (margin = +infinity).
struct ConditionVerdict {
  Condition condition = Condition::Definition;
  double gamma = 0.0;
  VerdictStatus status = VerdictStatus::Pass;
  double margin = 0.0;
  SegmentQuery query;
  double tolerance = kDefaultTol;
};

ConditionVerdict check_definition(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                  double tol = kDefaultTol);
ConditionVerdict check_implication_form(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                        double tol = kDefaultTol);
ConditionVerdict check_no_integral(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                   double tol = kDefaultTol);
ConditionVerdict check_dini(const FunctionSpec& f, const Vec& x, const Vec& y, double gamma,
                            double tol = kDiniTol, const StepSchedule& schedule = {});
/// With gamma = 0 this is exactly the Arrow-Enthoven quasiconvexity test.
ConditionVerdict check_gradient(const FunctionSpec& f, const Vec& x, const Vec& y, double gamma,
                                double tol = kDefaultTol);
ConditionVerdict check_quadratic_growth(const FunctionSpec& f, const Vec& xbar, const Vec& y,
                                        double gamma, double tol = kDefaultTol);

struct ConditionSummary {
  Condition condition = Condition::Definition;
  long passed = 0;
  long failed = 0;
  long vacuous = 0;
  long skipped = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<SegmentQuery> worst_query;
};

/// Compact per-query record; queries live once in SuiteResult::pairs.
struct SuiteVerdict {
  std::uint32_t pair_index = 0;
  std::int32_t t_index = -1;  // -1 for pair-level conditions
  Condition condition = Condition::Definition;
  VerdictStatus status = VerdictStatus::Pass;
  double margin = 0.0;
};

struct SuiteOptions {
  int jobs = 1;
  /// Growth checks need a reference minimizer; defaults to the catalog
  /// ground truth when present, else growth queries are skipped.
  std::optional<Vec> xbar;
  StepSchedule schedule;
};

struct SuiteResult {
  std::vector<QueryPair> pairs;
  std::vector<double> ts;
  std::vector<SuiteVerdict> verdicts;
  std::vector<ConditionSummary> summaries;
  double gamma = 0.0;
  double tolerance = kDefaultTol;

  SegmentQuery resolve(const FunctionSpec& f, const SuiteVerdict& v) const;
  const ConditionSummary& summary(Condition c) const;
  long total_failed() const;
};

/// Runs every requested condition on the deterministic query set of
/// `spec` (grid pairs then seeded-random pairs; t from the t-grid).
/// Inadmissible queries are skipped and counted. Worst-margin ties break
/// by lexicographic query order, so results do not depend on `jobs`.
SuiteResult run_suite(const FunctionSpec& f, const std::set<Condition>& conditions, double gamma,
                      const SampleSpec& spec, double tol = kDefaultTol,
                      const SuiteOptions& options = {});

}  // namespace sqc
