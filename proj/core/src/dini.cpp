#include "sqc/dini.hpp"

#include <algorithm>
#include <cmath>

#include "sqc/errors.hpp"

namespace sqc {

namespace {
constexpr double kMinStep = 1e-12;

Vec step_point(const Vec& x, double t, const Vec& a) {
  Vec p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + t * a[i];
  return p;
}

/// Largest admissible scaling of t0 (halving) with x + t*a inside the box,
/// or 0 when none above the step floor exists.
double admissible_t0(const DomainBox& box, const Vec& x, const Vec& a, double t0) {
  double t = t0;
  while (t > kMinStep) {
    if (box.contains(step_point(x, t, a))) return t;
    t *= 0.5;
  }
  return 0.0;
}

DiniEstimate raw_estimate(const FunctionSpec& f, const Vec& x, const Vec& a, double t0,
                          const StepSchedule& schedule) {
  DiniEstimate est;
  est.point = x;
  est.direction = a;
  est.schedule = schedule;
  est.quotients.reserve(static_cast<std::size_t>(schedule.steps));
  const double hx = evaluate(f, x);
  double t = t0;
  for (int k = 0; k < schedule.steps; ++k) {
    if (t <= kMinStep) break;  // a shrunk t0 must not descend into cancellation noise
    est.quotients.push_back((evaluate(f, step_point(x, t, a)) - hx) / t);
    t *= schedule.rho;
  }
  int tail = std::min<int>(schedule.tail, static_cast<int>(est.quotients.size()));
  auto first = est.quotients.end() - tail;
  est.upper = *std::max_element(first, est.quotients.end());
  est.lower = *std::min_element(first, est.quotients.end());
  return est;
}

}  // namespace

void StepSchedule::validate() const {
  if (!(t0 > 0.0)) throw UsageError("schedule t0 must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw UsageError("schedule rho must lie in (0,1)");
  if (steps < 1) throw UsageError("schedule needs at least one step");
  if (tail < 1 || tail > steps) throw UsageError("schedule tail must lie in [1, steps]");
  if (!(t0 * std::pow(rho, steps - 1) > kMinStep))
    throw UsageError("schedule descends below the 1e-12 noise floor");
}

DiniEstimate dini(const FunctionSpec& f, const Vec& x, const Vec& a,
                  const StepSchedule& schedule) {
  schedule.validate();
  if (x.size() != a.size()) throw DimensionMismatch("point/direction dimension mismatch");
  if (!f.domain.contains(x)) throw OutOfDomain("dini base point outside domain");

  double t0 = admissible_t0(f.domain, x, a, schedule.t0);
  if (t0 > 0.0) return raw_estimate(f, x, a, t0, schedule);

  // Boundary point with an outward direction: estimate through -a and
  // negate, swapping upper and lower.
  Vec neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  double t0r = admissible_t0(f.domain, x, neg, schedule.t0);
  if (t0r <= 0.0) throw OutOfDomain("no admissible step above 1e-12 in either direction");
  DiniEstimate r = raw_estimate(f, x, neg, t0r, schedule);
  DiniEstimate est;
  est.point = x;
  est.direction = a;
  est.schedule = schedule;
  est.reflected = true;
  est.quotients.resize(r.quotients.size());
  for (std::size_t i = 0; i < r.quotients.size(); ++i) est.quotients[i] = -r.quotients[i];
  est.upper = -r.lower;
  est.lower = -r.upper;
  return est;
}

std::pair<double, double> dini_pair_identity_check(const FunctionSpec& f, const Vec& x,
                                                   const Vec& y, double s,
                                                   const StepSchedule& schedule) {
  if (!(s > 0.0 && s <= 1.0)) throw UsageError("s must lie in (0, 1]");
  if (x == y) throw UsageError("identity check needs x != y");
  auto seg = restrict_to_segment(f, x, y);
  Vec xs = seg.point_at(s);
  Vec dir = sub(xs, x);
  double lhs = dini(f, xs, dir, schedule).upper;
  FunctionSpec g = seg.as_function();
  double rhs = s * dini(g, Vec{s}, Vec{1.0}, schedule).upper;
  return {lhs, rhs};
}

}  // namespace sqc
