#pragma once

#include <optional>
#include <vector>

#include "sqc/function_model.hpp"

namespace sqc {

struct ProbeStep {
  double m1 = 0.0;
  double m2 = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  bool discarded_right = false;
};

struct GrowthSample {
  double s = 0.0;
  double value = 0.0;
  double ambient_distance = 0.0;  // |s - c| * |y - x|
  double implied_radius = 0.0;    // 2 sqrt(max(0, g(s) - v) / gamma), ambient units
  bool consistent = true;
};

/// Bracket certificate from ternary search on [0, 1]. Under strict
/// quasiconvexity every retained bracket contains the minimizer of the
/// restriction (the history allows replaying each comparison). The
/// growth diagnostics are a consistency check against a claimed modulus,
/// not a suboptimality certificate: v >= g(s*) makes the implied radii
/// conservative from the candidate's side.
struct BracketResult {
  SegmentRestriction segment;
  double lower = 0.0;
  double upper = 1.0;
  double candidate = 0.5;
  double value = 0.0;
  long evaluations = 0;
  double certificate_radius = 0.5;  // (upper - lower) / 2, in s units
  bool budget_exhausted = false;
  std::vector<ProbeStep> history;

  // Filled by growth_diagnostics.
  std::vector<GrowthSample> growth;
  bool growth_all_consistent = true;
  bool gamma_too_large = false;
};

/// Ternary bracket shrinking: probes at l + (u-l)/3 and l + 2(u-l)/3,
/// discards the side of the larger value, ties discard the right side.
/// Stops at target_width or when the budget runs out (flagged). Uses at
/// most 2*ceil(log(1/target_width)/log(3/2)) + 2 evaluations.
BracketResult minimize_segment(const SegmentRestriction& seg, double target_width = 1e-6,
                               long max_eval = 100000);

/// Equispaced strictness screen; a witness is an interior probe rising
/// above the minima on both of its sides by more than tol.
struct UnimodalVerdict {
  bool unimodal = true;
  double s_left = 0.0, s_peak = 0.0, s_right = 0.0;
  double excess = 0.0;
};
UnimodalVerdict validate_unimodal(const SegmentRestriction& seg, int probes = 33,
                                  double tol = 1e-9);

/// Appends growth samples at `samples` equispaced s values: the claimed
/// modulus gamma implies the minimizer lies within
/// 2 sqrt((g(s) - g(s*))/gamma) of any sample in ambient distance, so
/// ambient |s - c| must stay below implied_radius + certificate radius
/// (plus diag_tol = 1e-6 + ambient certificate radius). A violation
/// flags gamma_too_large.
BracketResult growth_diagnostics(BracketResult res, double gamma, int samples = 65);

}  // namespace sqc
