#include "sqc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

constexpr double kVacuousMargin = std::numeric_limits<double>::infinity();

double seg_nsq(const SegmentQuery& q) { return norm_sq(sub(q.y, q.x)); }

ConditionVerdict finish(Condition c, double gamma, double margin, const SegmentQuery& q,
                        double tol) {
  ConditionVerdict v;
  v.condition = c;
  v.gamma = gamma;
  v.margin = margin;
  v.query = q;
  v.tolerance = tol;
  v.status = margin >= -tol ? VerdictStatus::Pass : VerdictStatus::Fail;
  return v;
}

ConditionVerdict vacuous(Condition c, double gamma, const SegmentQuery& q, double tol) {
  ConditionVerdict v;
  v.condition = c;
  v.gamma = gamma;
  v.margin = kVacuousMargin;
  v.query = q;
  v.tolerance = tol;
  v.status = VerdictStatus::Vacuous;
  return v;
}

std::string describe(const SegmentQuery& q) {
  std::ostringstream os;
  os << "(x=[";
  for (std::size_t i = 0; i < q.x.size(); ++i) os << (i ? "," : "") << q.x[i];
  os << "], y=[";
  for (std::size_t i = 0; i < q.y.size(); ++i) os << (i ? "," : "") << q.y[i];
  os << "], t=" << q.t << ")";
  return os.str();
}

/// margin first, then lexicographic (x, y, t): a total order making the
/// worst-witness reduction independent of evaluation order.
bool worse(double margin_a, const SegmentQuery& qa, double margin_b, const SegmentQuery& qb) {
  if (margin_a != margin_b) return margin_a < margin_b;
  int c = lex_compare(qa.x, qb.x);
  if (c != 0) return c < 0;
  c = lex_compare(qa.y, qb.y);
  if (c != 0) return c < 0;
  return qa.t < qb.t;
}

}  // namespace

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::Definition: return "definition";
    case Condition::ImplicationForm: return "implication_form";
    case Condition::NoIntegral: return "no_integral";
    case Condition::Dini: return "dini";
    case Condition::Gradient: return "gradient";
    case Condition::QuadraticGrowth: return "quadratic_growth";
  }
  return "?";
}

Condition condition_from_name(const std::string& name) {
  for (Condition c : {Condition::Definition, Condition::ImplicationForm, Condition::NoIntegral,
                      Condition::Dini, Condition::Gradient, Condition::QuadraticGrowth})
    if (name == condition_name(c)) return c;
  throw UsageError("unknown condition '" + name + "'");
}

SegmentQuery make_query(const FunctionSpec& f, const Vec& x, const Vec& y, double t,
                        double sep_min, bool allow_degenerate) {
  if (!(t > 0.0 && t <= 1.0)) throw UsageError("t must lie in (0, 1]");
  if (!f.domain.contains(x) || !f.domain.contains(y))
    throw OutOfDomain("query endpoint outside domain of " + f.id);
  if (!allow_degenerate && dist(x, y) < sep_min)
    throw UsageError("query separation below sep_min; flag degenerate to allow");
  SegmentQuery q;
  q.x = x;
  q.y = y;
  q.t = t;
  q.z = SegmentRestriction{f, x, y}.point_at(t);
  return q;
}

ConditionVerdict check_definition(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                  double tol) {
  double hx = evaluate(f, q.x);
  double hy = evaluate(f, q.y);
  double hz = evaluate(f, q.z);
  double margin = std::max(hx, hy) - 0.5 * gamma * q.t * (1.0 - q.t) * seg_nsq(q) - hz;
  return finish(Condition::Definition, gamma, margin, q, tol);
}

ConditionVerdict check_implication_form(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                        double tol) {
  double hx = evaluate(f, q.x);
  double hy = evaluate(f, q.y);
  if (hx > hy + tol) return vacuous(Condition::ImplicationForm, gamma, q, tol);
  double hz = evaluate(f, q.z);
  double margin = hy - hz - 0.5 * gamma * dist(q.z, q.x) * dist(q.y, q.z);
  return finish(Condition::ImplicationForm, gamma, margin, q, tol);
}

ConditionVerdict check_no_integral(const FunctionSpec& f, const SegmentQuery& q, double gamma,
                                   double tol) {
  double nsq = seg_nsq(q);
  // (1-t^2)|y-x|^2 = |y-x|^2 - |z-x|^2 when z sits on the segment; a
  // violation means the query is inconsistent, not that the check fails.
  double lhs_id = (1.0 - q.t * q.t) * nsq;
  double rhs_id = nsq - norm_sq(sub(q.z, q.x));
  if (std::fabs(lhs_id - rhs_id) > 1e-12 * std::max(1.0, nsq))
    throw UsageError("query point z is not on the segment: identity violated at " + describe(q));

  double hx = evaluate(f, q.x);
  double hz = evaluate(f, q.z);
  if (hx > hz + tol) return vacuous(Condition::NoIntegral, gamma, q, tol);
  double hy = evaluate(f, q.y);
  double margin = hy - 0.25 * gamma * lhs_id - hz;
  return finish(Condition::NoIntegral, gamma, margin, q, tol);
}

ConditionVerdict check_dini(const FunctionSpec& f, const Vec& x, const Vec& y, double gamma,
                            double tol, const StepSchedule& schedule) {
  SegmentQuery q;
  q.x = x;
  q.y = y;
  q.t = 1.0;
  q.z = y;
  double hx = evaluate(f, x);
  double hy = evaluate(f, y);
  if (hx > hy + tol) return vacuous(Condition::Dini, gamma, q, tol);
  Vec dir = sub(y, x);
  double lower = dini(f, y, dir, schedule).lower;
  double margin = lower - 0.5 * gamma * norm_sq(dir);
  return finish(Condition::Dini, gamma, margin, q, tol);
}

ConditionVerdict check_gradient(const FunctionSpec& f, const Vec& x, const Vec& y, double gamma,
                                double tol) {
  if (!f.has_gradient()) throw NoGradient(f.id + " carries no gradient");
  SegmentQuery q;
  q.x = x;
  q.y = y;
  q.t = 1.0;
  q.z = y;
  double hx = evaluate(f, x);
  double hy = evaluate(f, y);
  if (hx > hy + tol) return vacuous(Condition::Gradient, gamma, q, tol);
  Vec dir = sub(y, x);
  double margin = dot(evaluate_gradient(f, y), dir) - 0.5 * gamma * norm_sq(dir);
  return finish(Condition::Gradient, gamma, margin, q, tol);
}

ConditionVerdict check_quadratic_growth(const FunctionSpec& f, const Vec& xbar, const Vec& y,
                                        double gamma, double tol) {
  SegmentQuery q;
  q.x = xbar;
  q.y = y;
  q.t = 1.0;
  q.z = y;
  double margin = evaluate(f, y) - evaluate(f, xbar) - 0.25 * gamma * norm_sq(sub(y, xbar));
  return finish(Condition::QuadraticGrowth, gamma, margin, q, tol);
}

SegmentQuery SuiteResult::resolve(const FunctionSpec& f, const SuiteVerdict& v) const {
  const QueryPair& p = pairs[v.pair_index];
  SegmentQuery q;
  q.x = p.x;
  q.y = p.y;
  q.t = v.t_index >= 0 ? ts[static_cast<std::size_t>(v.t_index)] : 1.0;
  q.z = v.t_index >= 0 ? SegmentRestriction{f, p.x, p.y}.point_at(q.t) : p.y;
  return q;
}

const ConditionSummary& SuiteResult::summary(Condition c) const {
  for (const auto& s : summaries)
    if (s.condition == c) return s;
  throw UsageError(std::string("condition ") + condition_name(c) + " was not part of the run");
}

long SuiteResult::total_failed() const {
  long n = 0;
  for (const auto& s : summaries) n += s.failed;
  return n;
}

namespace {

struct ChunkAccumulator {
  std::vector<SuiteVerdict> verdicts;
  std::vector<ConditionSummary> summaries;

  ChunkAccumulator(const std::vector<Condition>& order) {
    summaries.reserve(order.size());
    for (Condition c : order) {
      ConditionSummary s;
      s.condition = c;
      summaries.push_back(s);
    }
  }

  ConditionSummary& of(Condition c) {
    for (auto& s : summaries)
      if (s.condition == c) return s;
    throw Error("internal: unknown condition in accumulator");
  }

  void record(Condition c, const ConditionVerdict& v, std::uint32_t pair_idx,
              std::int32_t t_idx) {
    SuiteVerdict sv;
    sv.pair_index = pair_idx;
    sv.t_index = t_idx;
    sv.condition = c;
    sv.status = v.status;
    sv.margin = v.margin;
    verdicts.push_back(sv);
    ConditionSummary& s = of(c);
    switch (v.status) {
      case VerdictStatus::Pass: ++s.passed; break;
      case VerdictStatus::Fail: ++s.failed; break;
      case VerdictStatus::Vacuous: ++s.vacuous; break;
    }
    if (v.status != VerdictStatus::Vacuous &&
        (!s.worst_query || worse(v.margin, v.query, s.worst_margin, *s.worst_query))) {
      s.worst_margin = v.margin;
      s.worst_query = v.query;
    }
  }

  void skip(Condition c, long count) { of(c).skipped += count; }
};

}  // namespace

SuiteResult run_suite(const FunctionSpec& f, const std::set<Condition>& conditions, double gamma,
                      const SampleSpec& spec, double tol, const SuiteOptions& options) {
  spec.validate();
  if (gamma < 0.0) throw UsageError("gamma must be nonnegative");

  SuiteResult result;
  result.gamma = gamma;
  result.tolerance = tol;
  result.pairs = query_pairs(f.domain, spec);
  result.ts = t_values(spec);

  std::vector<Condition> order;
  for (Condition c : {Condition::Definition, Condition::ImplicationForm, Condition::NoIntegral,
                      Condition::Dini, Condition::Gradient, Condition::QuadraticGrowth})
    if (conditions.count(c)) order.push_back(c);

  std::optional<Vec> xbar = options.xbar;
  if (!xbar && f.ground_truth && f.ground_truth->known_minimizer)
    xbar = f.ground_truth->known_minimizer;

  std::vector<Condition> segment_conds, pair_conds;
  for (Condition c : order) {
    if (c == Condition::Definition || c == Condition::ImplicationForm ||
        c == Condition::NoIntegral)
      segment_conds.push_back(c);
    else
      pair_conds.push_back(c);
  }

  auto process_pair = [&](std::uint32_t pi, ChunkAccumulator& acc) {
    const QueryPair& pr = result.pairs[pi];
    bool degenerate = dist(pr.x, pr.y) < spec.sep_min;
    if (degenerate) {
      for (Condition c : segment_conds) acc.skip(c, static_cast<long>(result.ts.size()));
      for (Condition c : pair_conds) acc.skip(c, 1);
      return;
    }
    if (!segment_conds.empty()) {
      SegmentRestriction seg{f, pr.x, pr.y};
      for (std::size_t ti = 0; ti < result.ts.size(); ++ti) {
        SegmentQuery q;
        q.x = pr.x;
        q.y = pr.y;
        q.t = result.ts[ti];
        q.z = seg.point_at(q.t);
        for (Condition c : segment_conds) {
          ConditionVerdict v = c == Condition::Definition ? check_definition(f, q, gamma, tol)
                               : c == Condition::ImplicationForm
                                   ? check_implication_form(f, q, gamma, tol)
                                   : check_no_integral(f, q, gamma, tol);
          acc.record(c, v, pi, static_cast<std::int32_t>(ti));
        }
      }
    }
    for (Condition c : pair_conds) {
      if (c == Condition::Dini) {
        acc.record(c, check_dini(f, pr.x, pr.y, gamma, std::max(tol, kDiniTol), options.schedule),
                   pi, -1);
      } else if (c == Condition::Gradient) {
        if (!f.has_gradient())
          acc.skip(c, 1);
        else
          acc.record(c, check_gradient(f, pr.x, pr.y, gamma, tol), pi, -1);
      } else {  // QuadraticGrowth
        if (!xbar)
          acc.skip(c, 1);
        else
          acc.record(c, check_quadratic_growth(f, *xbar, pr.y, gamma, tol), pi, -1);
      }
    }
  };

  const std::uint32_t n_pairs = static_cast<std::uint32_t>(result.pairs.size());
  int jobs = std::max(1, options.jobs);
  std::vector<ChunkAccumulator> accs;
  if (jobs == 1 || n_pairs < 64) {
    accs.emplace_back(order);
    for (std::uint32_t pi = 0; pi < n_pairs; ++pi) process_pair(pi, accs[0]);
  } else {
    std::uint32_t chunk = (n_pairs + static_cast<std::uint32_t>(jobs) - 1) /
                          static_cast<std::uint32_t>(jobs);
    for (int j = 0; j < jobs; ++j) accs.emplace_back(order);
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) {
      std::uint32_t lo = static_cast<std::uint32_t>(j) * chunk;
      std::uint32_t hi = std::min(n_pairs, lo + chunk);
      workers.emplace_back([&, j, lo, hi] {
        try {
          for (std::uint32_t pi = lo; pi < hi; ++pi) process_pair(pi, accs[static_cast<std::size_t>(j)]);
        } catch (...) {
          errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Merge chunks in pair order; the worst-witness reduction uses a total
  // order, so the outcome matches a sequential run.
  std::size_t total = 0;
  for (const auto& a : accs) total += a.verdicts.size();
  result.verdicts.reserve(total);
  for (Condition c : order) {
    ConditionSummary s;
    s.condition = c;
    result.summaries.push_back(s);
  }
  for (auto& a : accs) {
    result.verdicts.insert(result.verdicts.end(), a.verdicts.begin(), a.verdicts.end());
    for (std::size_t i = 0; i < order.size(); ++i) {
      ConditionSummary& dst = result.summaries[i];
      const ConditionSummary& src = a.summaries[i];
      dst.passed += src.passed;
      dst.failed += src.failed;
      dst.vacuous += src.vacuous;
      dst.skipped += src.skipped;
      if (src.worst_query &&
          (!dst.worst_query ||
           worse(src.worst_margin, *src.worst_query, dst.worst_margin, *dst.worst_query))) {
        dst.worst_margin = src.worst_margin;
        dst.worst_query = src.worst_query;
      }
    }
  }
  return result;
}

}  // namespace sqc
