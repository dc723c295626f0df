#include "sqc/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

bool query_before(const SegmentQuery& a, const SegmentQuery& b) {
  int c = lex_compare(a.x, b.x);
  if (c != 0) return c < 0;
  c = lex_compare(a.y, b.y);
  if (c != 0) return c < 0;
  return a.t < b.t;
}

struct InfTracker {
  double inf = std::numeric_limits<double>::infinity();
  SegmentQuery witness;
  long n_effective = 0;

  void feed(double ratio, const SegmentQuery& q) {
    ++n_effective;
    if (ratio < inf || (ratio == inf && query_before(q, witness))) {
      inf = ratio;
      witness = q;
    }
  }
};

ModulusEstimate finish(Condition c, const InfTracker& tr, const SampleSpec& spec, double tol) {
  if (tr.n_effective == 0)
    throw NoEffectiveQueries(std::string("no effective queries for ") + condition_name(c));
  ModulusEstimate est;
  est.condition = c;
  est.raw_infimum = tr.inf;
  est.gamma_hat = std::max(0.0, tr.inf);
  est.not_quasiconvex = tr.inf < -tol;
  est.witness = tr.witness;
  est.n_effective = tr.n_effective;
  est.spec = spec;
  return est;
}

double definition_ratio(const FunctionSpec& f, const SegmentQuery& q) {
  double hx = evaluate(f, q.x);
  double hy = evaluate(f, q.y);
  double hz = evaluate(f, q.z);
  double nsq = norm_sq(sub(q.y, q.x));
  return 2.0 * (std::max(hx, hy) - hz) / (q.t * (1.0 - q.t) * nsq);
}

double no_integral_ratio(const FunctionSpec& f, const SegmentQuery& q) {
  double hy = evaluate(f, q.y);
  double hz = evaluate(f, q.z);
  double nsq = norm_sq(sub(q.y, q.x));
  return 4.0 * (hy - hz) / ((1.0 - q.t * q.t) * nsq);
}

double dini_ratio(const FunctionSpec& f, const SegmentQuery& q, const StepSchedule& schedule) {
  Vec dir = sub(q.y, q.x);
  return 2.0 * dini(f, q.y, dir, schedule).lower / norm_sq(dir);
}

double growth_ratio(const FunctionSpec& f, const SegmentQuery& q) {
  // q.x holds xbar, q.y the sample.
  return 4.0 * (evaluate(f, q.y) - evaluate(f, q.x)) / norm_sq(sub(q.y, q.x));
}

}  // namespace

ModulusEstimate modulus_definition(const FunctionSpec& f, const SampleSpec& spec, double tol) {
  spec.validate();
  InfTracker tr;
  auto pairs = query_pairs(f.domain, spec);
  auto ts = t_values(spec);
  for (const auto& pr : pairs) {
    if (dist(pr.x, pr.y) < spec.sep_min) continue;
    SegmentRestriction seg{f, pr.x, pr.y};
    for (double t : ts) {
      if (!(t > 0.0 && t < 1.0)) continue;
      SegmentQuery q{pr.x, pr.y, t, seg.point_at(t)};
      tr.feed(definition_ratio(f, q), q);
    }
  }
  return finish(Condition::Definition, tr, spec, tol);
}

ModulusEstimate modulus_no_integral(const FunctionSpec& f, const SampleSpec& spec, double tol) {
  spec.validate();
  InfTracker tr;
  auto pairs = query_pairs(f.domain, spec);
  auto ts = t_values(spec);
  for (const auto& pr : pairs) {
    if (dist(pr.x, pr.y) < spec.sep_min) continue;
    double hx = evaluate(f, pr.x);
    SegmentRestriction seg{f, pr.x, pr.y};
    for (double t : ts) {
      if (!(t > 0.0 && t < 1.0)) continue;
      SegmentQuery q{pr.x, pr.y, t, seg.point_at(t)};
      if (hx > evaluate(f, q.z) + tol) continue;  // premise fails: no constraint
      tr.feed(no_integral_ratio(f, q), q);
    }
  }
  return finish(Condition::NoIntegral, tr, spec, tol);
}

ModulusEstimate modulus_dini(const FunctionSpec& f, const SampleSpec& spec,
                             const StepSchedule& schedule, double tol) {
  spec.validate();
  schedule.validate();
  InfTracker tr;
  for (const auto& pr : query_pairs(f.domain, spec)) {
    if (dist(pr.x, pr.y) < spec.sep_min) continue;
    if (evaluate(f, pr.x) > evaluate(f, pr.y) + tol) continue;
    SegmentQuery q{pr.x, pr.y, 1.0, pr.y};
    tr.feed(dini_ratio(f, q, schedule), q);
  }
  ModulusEstimate est = finish(Condition::Dini, tr, spec, tol);
  return est;
}

ModulusEstimate modulus_growth(const FunctionSpec& f, const Vec& xbar, const SampleSpec& spec,
                               double tol) {
  spec.validate();
  if (!f.domain.contains(xbar)) throw OutOfDomain("xbar outside domain of " + f.id);
  InfTracker tr;
  for (const auto& y : query_points(f.domain, spec)) {
    if (dist(xbar, y) < spec.sep_min) continue;
    SegmentQuery q{xbar, y, 1.0, y};
    tr.feed(growth_ratio(f, q), q);
  }
  return finish(Condition::QuadraticGrowth, tr, spec, tol);
}

double replay_witness_ratio(const FunctionSpec& f, const ModulusEstimate& est,
                            const StepSchedule& schedule) {
  switch (est.condition) {
    case Condition::Definition: return definition_ratio(f, est.witness);
    case Condition::NoIntegral: return no_integral_ratio(f, est.witness);
    case Condition::Dini: return dini_ratio(f, est.witness, schedule);
    case Condition::QuadraticGrowth: return growth_ratio(f, est.witness);
    default: throw UsageError("no ratio defined for this condition");
  }
}

}  // namespace sqc
