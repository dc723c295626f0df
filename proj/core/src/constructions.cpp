#include "sqc/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "sqc/errors.hpp"

namespace sqc {

std::pair<PartitionTrace, PartitionVerdict> partition_chain(const FunctionSpec& f,
                                                            const SegmentQuery& q, double gamma,
                                                            int n, double tol) {
  if (n < 1) throw UsageError("partition size n must be at least 1");
  if (!(q.t > 0.0 && q.t < 1.0)) throw UsageError("partition chain needs t in (0,1)");
  double hx = evaluate(f, q.x);
  double hz = evaluate(f, q.z);
  if (hx > hz + tol)
    throw PremiseFails("h(x) > h(z) + tol: the chain construction assumes h(x) <= h(z)");

  PartitionTrace tr;
  tr.n = n;
  tr.gamma = gamma;
  tr.query = q;

  const double dyz = dist(q.y, q.z);
  const double dzx = dist(q.z, q.x);
  const double nsq = norm_sq(sub(q.y, q.x));
  const std::size_t dim = q.x.size();

  tr.points.reserve(static_cast<std::size_t>(n) + 1);
  tr.values.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    Vec w;
    if (i == 0) {
      w = q.z;
    } else if (i == n) {
      w = q.y;
    } else {
      double frac = static_cast<double>(i) / static_cast<double>(n);
      w.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) w[d] = q.z[d] + frac * (q.y[d] - q.z[d]);
      w = f.domain.clamp(w);
    }
    tr.values.push_back(evaluate(f, w));
    tr.points.push_back(std::move(w));
  }

  tr.step_bounds.reserve(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double frac = static_cast<double>(i) / static_cast<double>(n);
    double b = 0.5 * gamma / static_cast<double>(n) * dyz * (dzx + frac * dyz);
    tr.step_bounds.push_back(b);
    sum += b;
  }
  tr.partial_sum = sum;
  tr.limit = 0.25 * gamma * (1.0 - q.t * q.t) * nsq;
  tr.closed_form_sum =
      0.5 * gamma * dyz * (dzx + dyz * (0.5 - 0.5 / static_cast<double>(n)));
  tr.error_law = 0.25 * gamma * dyz * dyz / static_cast<double>(n);

  for (int i = 0; i <= n; ++i) {
    double frac = static_cast<double>(i) / static_cast<double>(n);
    double expected = dzx + frac * dyz;
    tr.collinearity_deviation = std::max(
        tr.collinearity_deviation,
        std::fabs(dist(tr.points[static_cast<std::size_t>(i)], q.x) - expected));
  }
  tr.closed_form_deviation = std::fabs(tr.partial_sum - tr.closed_form_sum);
  tr.error_law_deviation = std::fabs((tr.limit - tr.partial_sum) - tr.error_law);

  PartitionVerdict v;
  v.chain_monotone = hx <= tr.values.front() + tol;
  for (int i = 0; i < n; ++i)
    v.chain_monotone = v.chain_monotone &&
                       tr.values[static_cast<std::size_t>(i) + 1] >=
                           tr.values[static_cast<std::size_t>(i)] - tol;

  v.worst_step_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double margin = tr.values[static_cast<std::size_t>(i) + 1] -
                    tr.values[static_cast<std::size_t>(i)] -
                    tr.step_bounds[static_cast<std::size_t>(i)];
    v.worst_step_margin = std::min(v.worst_step_margin, margin);
  }
  v.steps_pass = v.worst_step_margin >= -tol;

  v.aggregate_margin = (tr.values.back() - tr.values.front()) - tr.partial_sum;
  v.aggregate_pass = v.aggregate_margin >= -tol;

  v.identities_ok = tr.collinearity_deviation <= 1e-10 && tr.closed_form_deviation <= 1e-12 &&
                    tr.error_law_deviation <= 1e-12;
  return {std::move(tr), v};
}

SaksCheck saks_inequality_check(const FunctionSpec& f, const Vec& x, const Vec& y, double t,
                                double gamma, double tol) {
  if (!(t > 0.0 && t <= 1.0)) throw UsageError("t must lie in (0, 1]");
  SaksCheck c{restrict_to_segment(f, x, y), t};
  c.lhs = c.segment(1.0) - c.segment(t);
  c.rhs = 0.25 * gamma * norm_sq(sub(y, x)) * (1.0 - t * t);
  c.margin = c.lhs - c.rhs;
  c.pass = c.margin >= -tol;
  return c;
}

StrictnessProbe strict_quasiconvexity_probe(const FunctionSpec& f, const SampleSpec& spec,
                                            double tol) {
  spec.validate();
  StrictnessProbe probe;
  auto ts = t_values(spec);
  for (const auto& pr : query_pairs(f.domain, spec)) {
    if (dist(pr.x, pr.y) < spec.sep_min) continue;
    SegmentRestriction seg{f, pr.x, pr.y};
    double ha = evaluate(f, pr.x);
    double hb = evaluate(f, pr.y);
    double cap = std::max(ha, hb);
    for (double u : ts) {
      if (!(u > 0.0 && u < 1.0)) continue;  // d must be strictly interior
      ++probe.triples_checked;
      Vec d = seg.point_at(u);
      double hd = evaluate(f, d);
      if (hd >= cap + tol) {
        probe.violation_found = true;
        probe.a = pr.x;
        probe.b = pr.y;
        probe.d = std::move(d);
        probe.excess = hd - cap;
        return probe;
      }
    }
  }
  return probe;
}

}  // namespace sqc
