#pragma once

#include <optional>
#include <vector>

#include "sqc/checks.hpp"
#include "sqc/function_model.hpp"
#include "sqc/sampling.hpp"

namespace sqc {

/// The partition chain w_i = z + (i/n)(y-z), i = 0..n, together with the
/// per-step lower bounds b_i, their partial sum S_n and the exact limit
/// L = (gamma/4)(1-t^2)|y-x|^2. Closed forms:
///   S_n     = (gamma/2)|y-z| (|z-x| + |y-z|(1/2 - 1/(2n)))
///   L - S_n = (gamma/4)|y-z|^2 / n
struct PartitionTrace {
  int n = 0;
  double gamma = 0.0;
  SegmentQuery query;
  std::vector<Vec> points;       // w_0..w_n
  std::vector<double> values;    // h(w_i)
  std::vector<double> step_bounds;  // b_i, i = 0..n-1
  double partial_sum = 0.0;      // S_n, summed term by term
  double limit = 0.0;            // L
  double closed_form_sum = 0.0;  // S_n via the closed form
  double error_law = 0.0;        // (gamma/4)|y-z|^2 / n

  double collinearity_deviation = 0.0;   // max_i | |w_i-x| - (|z-x| + (i/n)|y-z|) |
  double closed_form_deviation = 0.0;    // |partial_sum - closed_form_sum|
  double error_law_deviation = 0.0;      // |(limit - partial_sum) - error_law|
};

struct PartitionVerdict {
  bool chain_monotone = false;   // h(x) <= h(w_0) <= ... <= h(w_n)
  bool steps_pass = false;       // h(w_{i+1}) >= h(w_i) + b_i
  bool aggregate_pass = false;   // h(y) - h(z) >= S_n
  bool identities_ok = false;    // collinearity 1e-10, closed form / error law 1e-12
  double worst_step_margin = 0.0;
  double aggregate_margin = 0.0;
  bool pass() const { return chain_monotone && steps_pass && aggregate_pass && identities_ok; }
};

/// Replays the finite chain construction at one query. Requires the
/// premise h(x) <= h(z) + tol (throws PremiseFails otherwise) and
/// t in (0,1).
std::pair<PartitionTrace, PartitionVerdict> partition_chain(const FunctionSpec& f,
                                                            const SegmentQuery& q, double gamma,
                                                            int n, double tol = kDefaultTol);

/// g(1) - g(t) >= (gamma/4)|y-x|^2 (1-t^2): the inequality recovered by
/// integrating the per-point derivative bound along the segment.
struct SaksCheck {
  SegmentRestriction segment;
  double t = 0.0;
  double lhs = 0.0;    // g(1) - g(t)
  double rhs = 0.0;    // (gamma/4)|y-x|^2 (1-t^2)
  double margin = 0.0;
  bool pass = false;
};

SaksCheck saks_inequality_check(const FunctionSpec& f, const Vec& x, const Vec& y, double t,
                                double gamma, double tol = kDefaultTol);

/// Searches sampled triples a, b, d in (a,b) for h(d) >= max{h(a),h(b)} + tol,
/// the pattern contradicting strict quasiconvexity.
struct StrictnessProbe {
  bool violation_found = false;
  Vec a, b, d;
  double excess = 0.0;  // h(d) - max{h(a),h(b)}
  long triples_checked = 0;
};

StrictnessProbe strict_quasiconvexity_probe(const FunctionSpec& f, const SampleSpec& spec,
                                            double tol = kDefaultTol);

}  // namespace sqc
