#pragma once

#include <utility>
#include <vector>

#include "sqc/function_model.hpp"
#include "sqc/geometry.hpp"

namespace sqc {

/// Geometric step schedule t_k = t0 * rho^k, k = 0..steps-1, discretizing
/// the one-sided limit. upper/lower are taken over the last `tail` steps,
/// so pre-asymptotic quotients at large t do not leak into the estimate.
struct StepSchedule {
  double t0 = 1e-2;
  double rho = 0.45;
  int steps = 21;
  int tail = 8;

  void validate() const;
};

/// Finite-sample surrogate for the upper/lower Dini derivatives of h at
/// `point` in `direction`. Exact (to the documented tolerances) on smooth
/// functions and on the validated kink/oscillation classes; a heuristic
/// elsewhere -- limsup/liminf are not computable from finitely many
/// samples.
struct DiniEstimate {
  Vec point;
  Vec direction;
  double upper = 0.0;
  double lower = 0.0;
  std::vector<double> quotients;
  StepSchedule schedule;
  /// True when the direction left the box at every admissible step and
  /// the estimate was taken through the reflected direction instead.
  bool reflected = false;
};

/// Difference quotients (h(x + t_k a) - h(x)) / t_k over the schedule.
/// If x + t0*a leaves the box, t0 is halved until the step fits; when no
/// step above 1e-12 fits (x on the boundary, a pointing outward), the
/// quotients are taken in direction -a and negated, which recovers the
/// one-sided derivative exactly on the smooth class.
DiniEstimate dini(const FunctionSpec& f, const Vec& x, const Vec& a,
                  const StepSchedule& schedule = {});

/// Both sides of the chain-rule identity relating the Dini derivative of
/// h at x_s = x + s(y-x) in direction x_s - x to the derivative of the
/// segment restriction: returns (upper Dini of h at x_s along x_s - x,
/// s * upper Dini of g at s). The two agree at smooth points.
std::pair<double, double> dini_pair_identity_check(const FunctionSpec& f, const Vec& x,
                                                   const Vec& y, double s,
                                                   const StepSchedule& schedule = {});

}  // namespace sqc
