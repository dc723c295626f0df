#include "sqc/minimize.hpp"

#include <algorithm>
#include <cmath>

#include "sqc/errors.hpp"

namespace sqc {

BracketResult minimize_segment(const SegmentRestriction& seg, double target_width,
                               long max_eval) {
  if (!(target_width > 0.0)) throw UsageError("target_width must be positive");
  if (max_eval < 1) throw UsageError("max_eval must be positive");

  BracketResult res;
  res.segment = seg;
  double l = 0.0, u = 1.0;
  while (u - l > target_width) {
    if (res.evaluations + 2 > max_eval) {
      res.budget_exhausted = true;
      break;
    }
    double w = u - l;
    double m1 = l + w / 3.0;
    double m2 = l + 2.0 * w / 3.0;
    double g1 = seg(m1);
    double g2 = seg(m2);
    res.evaluations += 2;
    bool discard_right = g2 >= g1;  // ties discard the right side
    if (discard_right)
      u = m2;
    else
      l = m1;
    res.history.push_back(ProbeStep{m1, m2, g1, g2, discard_right});
  }
  res.lower = l;
  res.upper = u;
  res.candidate = 0.5 * (l + u);
  res.value = seg(res.candidate);
  res.evaluations += 1;
  res.certificate_radius = 0.5 * (u - l);
  return res;
}

UnimodalVerdict validate_unimodal(const SegmentRestriction& seg, int probes, double tol) {
  if (probes < 3) throw UsageError("validate_unimodal needs at least 3 probes");
  std::vector<double> ss(static_cast<std::size_t>(probes));
  std::vector<double> vals(static_cast<std::size_t>(probes));
  for (int i = 0; i < probes; ++i) {
    double s = static_cast<double>(i) / static_cast<double>(probes - 1);
    if (i == probes - 1) s = 1.0;
    ss[static_cast<std::size_t>(i)] = s;
    vals[static_cast<std::size_t>(i)] = seg(s);
  }

  const std::size_t n = ss.size();
  std::vector<std::size_t> prefix_min(n), suffix_min(n);
  prefix_min[0] = 0;
  for (std::size_t i = 1; i < n; ++i)
    prefix_min[i] = vals[i] < vals[prefix_min[i - 1]] ? i : prefix_min[i - 1];
  suffix_min[n - 1] = n - 1;
  for (std::size_t i = n - 1; i-- > 0;)
    suffix_min[i] = vals[i] < vals[suffix_min[i + 1]] ? i : suffix_min[i + 1];

  UnimodalVerdict v;
  double worst = tol;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t lft = prefix_min[m - 1];
    std::size_t rgt = suffix_min[m + 1];
    double excess = vals[m] - std::max(vals[lft], vals[rgt]);
    if (excess > worst) {
      worst = excess;
      v.unimodal = false;
      v.s_left = ss[lft];
      v.s_peak = ss[m];
      v.s_right = ss[rgt];
      v.excess = excess;
    }
  }
  return v;
}

BracketResult growth_diagnostics(BracketResult res, double gamma, int samples) {
  if (!(gamma > 0.0)) throw UsageError("growth diagnostics need gamma > 0");
  if (samples < 2) throw UsageError("growth diagnostics need at least 2 samples");
  const double len = res.segment.length();
  const double ambient_cert = res.certificate_radius * len;
  const double diag_tol = 1e-6 + ambient_cert;
  res.growth.clear();
  res.growth_all_consistent = true;
  res.gamma_too_large = false;
  for (int i = 0; i < samples; ++i) {
    double s = static_cast<double>(i) / static_cast<double>(samples - 1);
    if (i == samples - 1) s = 1.0;
    GrowthSample gs;
    gs.s = s;
    gs.value = res.segment(s);
    gs.ambient_distance = std::fabs(s - res.candidate) * len;
    gs.implied_radius = 2.0 * std::sqrt(std::max(0.0, gs.value - res.value) / gamma);
    gs.consistent = gs.ambient_distance <= gs.implied_radius + ambient_cert + diag_tol;
    if (!gs.consistent) {
      res.growth_all_consistent = false;
      res.gamma_too_large = true;
    }
    res.growth.push_back(gs);
  }
  return res;
}

}  // namespace sqc
