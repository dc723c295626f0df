#include "sqc/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqc/errors.hpp"

namespace sqc {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) /
                                               static_cast<double>(n - 1);
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

Violation best_violation(const std::vector<double>& xs, const std::vector<double>& vals) {
  // For each interior mid, the strongest violation pairs it with the
  // prefix and suffix minima.
  const std::size_t n = xs.size();
  std::vector<std::size_t> prefix_min(n), suffix_min(n);
  prefix_min[0] = 0;
  for (std::size_t i = 1; i < n; ++i)
    prefix_min[i] = vals[i] < vals[prefix_min[i - 1]] ? i : prefix_min[i - 1];
  suffix_min[n - 1] = n - 1;
  for (std::size_t i = n - 1; i-- > 0;)
    suffix_min[i] = vals[i] < vals[suffix_min[i + 1]] ? i : suffix_min[i + 1];

  Violation best;
  best.violation = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t l = prefix_min[m - 1];
    std::size_t r = suffix_min[m + 1];
    double v = vals[m] - std::max(vals[l], vals[r]);
    if (v > best.violation) {
      best.violation = v;
      best.u1 = xs[l];
      best.mid = xs[m];
      best.u2 = xs[r];
    }
  }
  return best;
}

}  // namespace

LemmaInstance make_example1() {
  LemmaInstance inst;
  inst.a = 4.0;
  inst.kappa = [](double t) { return t == 4.0 ? 1.0 : 0.0; };
  inst.g = [](double t) {
    return -9.0 + (t - 1.0) * (t - 1.0) * (t - 3.0) * (t - 3.0);
  };
  inst.g_prime = [](double t) { return 2.0 * (t - 1.0) * (t - 3.0) * (2.0 * t - 4.0); };
  return inst;
}

std::vector<SubVerdict> verify_hypotheses(const LemmaInstance& inst, int v_grid) {
  if (v_grid < 3) throw UsageError("v_grid must have at least 3 points");
  const double a = inst.a;
  auto grid = linspace(0.0, a, v_grid);
  std::vector<SubVerdict> out;

  {
    SubVerdict v{"kappa_nonnegative_and_zero_at_origin", true, 0.0, ""};
    double min_kappa = std::numeric_limits<double>::infinity();
    for (double t : grid) min_kappa = std::min(min_kappa, inst.kappa(t));
    v.pass = min_kappa >= 0.0 && inst.kappa(0.0) == 0.0;
    v.margin = min_kappa;
    v.detail = "min kappa on grid = " + std::to_string(min_kappa) +
               ", kappa(0) = " + std::to_string(inst.kappa(0.0));
    out.push_back(std::move(v));
  }
  {
    SubVerdict v{"kappa_integral_zero", true, 0.0, ""};
    // Left-endpoint Riemann sum; kappa is nonzero only at t = a, which no
    // left endpoint reaches, so the sum is exactly 0. The Lebesgue
    // integral is 0 regardless: kappa differs from 0 on a null set.
    double sum = 0.0;
    double h = a / static_cast<double>(v_grid - 1);
    for (int i = 0; i + 1 < v_grid; ++i) sum += inst.kappa(grid[static_cast<std::size_t>(i)]) * h;
    v.pass = sum == 0.0;
    v.margin = -std::fabs(sum);
    v.detail = "left Riemann sum = " + std::to_string(sum);
    out.push_back(std::move(v));
  }
  {
    SubVerdict v{"boundary_values", true, 0.0, ""};
    double g0 = inst.g(0.0);
    double ga = inst.g(a);
    v.pass = g0 == 0.0 && g0 >= ga;
    v.margin = g0 - ga;
    v.detail = "g(0) = " + std::to_string(g0) + ", g(a) = " + std::to_string(ga);
    out.push_back(std::move(v));
  }
  {
    SubVerdict v{"level_set_is_endpoints", true, 0.0, ""};
    const double ga = inst.g(a);
    bool ok = true;
    double worst_interior = -std::numeric_limits<double>::infinity();
    for (double u : grid) {
      if (u == 0.0 || u == a) continue;
      worst_interior = std::max(worst_interior, inst.g(u));
      if (inst.g(u) >= ga - 1e-9) ok = false;
    }
    v.pass = ok;
    v.margin = ga - worst_interior;
    v.detail = "max interior g = " + std::to_string(worst_interior);
    out.push_back(std::move(v));
  }
  {
    SubVerdict v{"derivative_bound_on_level_set", true, 0.0, ""};
    double worst = std::numeric_limits<double>::infinity();
    for (double u : {0.0, a}) {
      double gp = inst.g_prime(u);
      for (double vv : grid) {
        double d = u - vv;
        double lhs = gp * d;
        double rhs = inst.kappa(std::fabs(d)) * std::fabs(d);
        worst = std::min(worst, lhs - rhs);
      }
    }
    v.pass = worst >= -1e-12;
    v.margin = worst;
    v.detail = "min slack of g'(u)(u-v) - kappa(|u-v|)|u-v| = " + std::to_string(worst);
    out.push_back(std::move(v));
  }
  {
    SubVerdict v{"derivative_finite_difference_consistency", true, 0.0, ""};
    // g is a polynomial on all of R, so the central difference needs no
    // clamping at the interval endpoints.
    const double h = 1e-6;
    double worst = 0.0;
    for (double u : grid) {
      double fd = (inst.g(u + h) - inst.g(u - h)) / (2.0 * h);
      worst = std::max(worst, std::fabs(fd - inst.g_prime(u)));
    }
    v.pass = worst <= 1e-6;
    v.margin = 1e-6 - worst;
    v.detail = "max |fd - g'| = " + std::to_string(worst);
    out.push_back(std::move(v));
  }
  return out;
}

Violation find_violation_1d(const FunctionSpec& f, int grid, double tol) {
  if (f.dimension != 1) throw DimensionMismatch("violation search expects a 1-D function");
  auto xs = linspace(f.domain.lower[0], f.domain.upper[0], grid);
  std::vector<double> vals;
  vals.reserve(xs.size());
  for (double x : xs) vals.push_back(evaluate(f, Vec{x}));
  Violation best = best_violation(xs, vals);
  if (!(best.violation > tol))
    throw NoViolationFound("no quasiconvexity violation on a " + std::to_string(grid) +
                           "-point grid for " + f.id);
  return best;
}

ViolationReport find_quasiconvexity_violation(const LemmaInstance& inst, int grid) {
  ViolationReport rep;
  rep.known.u1 = 1.0;
  rep.known.u2 = 3.0;
  rep.known.mid = 2.0;
  rep.known.violation =
      inst.g(2.0) - std::max(inst.g(1.0), inst.g(3.0));

  FunctionSpec f;
  f.id = "lemma_g";
  f.dimension = 1;
  f.domain = DomainBox::cube(1, 0.0, inst.a);
  auto g = inst.g;
  f.body = [g](const Vec& p) { return g(p[0]); };
  rep.searched = find_violation_1d(f, grid);
  return rep;
}

ConclusionReport lemma_conclusion_status(const LemmaInstance& inst, int lambda_grid) {
  if (lambda_grid < 3) throw UsageError("lambda_grid must have at least 3 points");
  ConclusionReport rep;
  rep.integral_kappa = 0.0;  // exact: kappa vanishes off a single point
  rep.max_g = -std::numeric_limits<double>::infinity();
  for (double lambda : linspace(0.0, 1.0, lambda_grid)) {
    double value = inst.g(lambda * inst.a);
    double bound = -lambda * (1.0 - lambda) * rep.integral_kappa;
    if (value > bound + 1e-12) rep.holds = false;
    if (value > rep.max_g) {
      rep.max_g = value;
      rep.argmax_lambda = lambda;
    }
  }
  rep.note = rep.holds
                 ? "conclusion holds on this instance (integral of kappa is 0, g <= 0 on "
                   "[0,a]); the instance refutes the intermediate quasiconvexity claim, "
                   "not the conclusion"
                 : "conclusion violated";
  return rep;
}

AuditReport run_audit(int v_grid, int lambda_grid) {
  AuditReport rep;
  LemmaInstance inst = make_example1();
  rep.hypotheses = verify_hypotheses(inst, v_grid);
  rep.violation = find_quasiconvexity_violation(inst, v_grid);
  rep.conclusion = lemma_conclusion_status(inst, lambda_grid);
  bool hyp_ok = true;
  for (const auto& h : rep.hypotheses) hyp_ok = hyp_ok && h.pass;
  rep.reproduced = hyp_ok && rep.violation.known.violation > 0.0 &&
                   rep.violation.searched.violation > 0.0;
  return rep;
}

}  // namespace sqc
