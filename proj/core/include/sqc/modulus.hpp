#pragma once

#include <optional>

#include "sqc/checks.hpp"
#include "sqc/dini.hpp"
#include "sqc/function_model.hpp"
#include "sqc/sampling.hpp"

namespace sqc {

/// Largest modulus consistent with every sampled query under one
/// characterization. The estimate is an infimum over a finite sample and
/// therefore an upper bound on the true modulus; it is empirical, not a
/// certificate. gamma_hat clamps at 0; a raw infimum below -tol means
/// quasiconvexity itself failed and sets not_quasiconvex with a witness.
struct ModulusEstimate {
  Condition condition = Condition::Definition;
  double gamma_hat = 0.0;
  double raw_infimum = 0.0;
  bool not_quasiconvex = false;
  SegmentQuery witness;
  long n_effective = 0;
  SampleSpec spec;
};

/// r(x,y,t) = 2 (max{h(x),h(y)} - h(z)) / (t(1-t)|y-x|^2), t in (0,1).
ModulusEstimate modulus_definition(const FunctionSpec& f, const SampleSpec& spec,
                                   double tol = kDefaultTol);

/// Over queries with h(x) <= h(z)+tol and t in (0,1):
/// r = 4 (h(y) - h(z)) / ((1-t^2)|y-x|^2).
ModulusEstimate modulus_no_integral(const FunctionSpec& f, const SampleSpec& spec,
                                    double tol = kDefaultTol);

/// Over pairs with h(x) <= h(y)+tol: r = 2 h'_-(y;y-x) / |y-x|^2.
ModulusEstimate modulus_dini(const FunctionSpec& f, const SampleSpec& spec,
                             const StepSchedule& schedule = {}, double tol = kDefaultTol);

/// Over sampled y != xbar: r = 4 (h(y) - h(xbar)) / |y-xbar|^2.
ModulusEstimate modulus_growth(const FunctionSpec& f, const Vec& xbar, const SampleSpec& spec,
                               double tol = kDefaultTol);

/// Recomputes the per-query ratio at the stored witness; reproduces
/// raw_infimum to 1e-12 by construction (same evaluation path). Pass the
/// schedule the estimate was computed with for the dini condition.
double replay_witness_ratio(const FunctionSpec& f, const ModulusEstimate& est,
                            const StepSchedule& schedule = {});

}  // namespace sqc
