#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqc/function_model.hpp"
#include "sqc/geometry.hpp"

namespace sqc {

/// The audited instance: a = 4, kappa zero everywhere except kappa(4) = 1
/// (kept as an exact piecewise definition so the single nonzero point is
/// not lost to discretization), g(t) = -9 + (t-1)^2 (t-3)^2 with its
/// analytic derivative.
struct LemmaInstance {
  double a = 4.0;
  std::function<double(double)> kappa;
  std::function<double(double)> g;
  std::function<double(double)> g_prime;
};

LemmaInstance make_example1();

struct SubVerdict {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

/// Checks the premises the flawed lemma asks for, on a v_grid-point grid
/// with both endpoints exact:
///  1. kappa nonnegative, kappa(0) = 0
///  2. integral of kappa over [0,a] is 0 (any Riemann scheme; the
///     Lebesgue integral is 0 as well since kappa != 0 only at one point)
///  3. g(0) = 0 >= g(a)
///  4. level condition: grid points u with g(u) >= g(a) are exactly {0, a}
///  5. g'(u)(u-v) >= kappa(|u-v|)|u-v| for u in {0, a} and all grid v
///  6. g' consistent with central finite differences (1e-6)
std::vector<SubVerdict> verify_hypotheses(const LemmaInstance& inst, int v_grid = 401);

struct Violation {
  double u1 = 0.0;
  double u2 = 0.0;
  double mid = 0.0;
  double violation = 0.0;  // h(mid) - max{h(u1), h(u2)} > 0
};

/// The known triple (1, 3, 2) replayed exactly, plus an independent grid
/// search that does not use the known points. Throws NoViolationFound
/// when the search comes up empty.
struct ViolationReport {
  Violation known;
  Violation searched;
};
ViolationReport find_quasiconvexity_violation(const LemmaInstance& inst, int grid = 401);

/// Grid search for a quasiconvexity violation of any 1-D function;
/// throws NoViolationFound when none exists on the grid.
Violation find_violation_1d(const FunctionSpec& f, int grid = 401, double tol = 1e-9);

/// The lemma's conclusion g(lambda a) <= -lambda(1-lambda) * integral(kappa)
/// on a lambda grid. With integral(kappa) = 0 it reads g(4 lambda) <= 0,
/// which HOLDS here: the instance refutes the proof's intermediate claim
/// ("the derivative bound implies g is quasiconvex"), not the conclusion.
struct ConclusionReport {
  double integral_kappa = 0.0;
  bool holds = true;
  double max_g = 0.0;
  double argmax_lambda = 0.0;
  std::string note;
};
ConclusionReport lemma_conclusion_status(const LemmaInstance& inst, int lambda_grid = 401);

/// Everything above in one run. reproduced = all hypotheses pass and the
/// quasiconvexity violation is found.
struct AuditReport {
  std::vector<SubVerdict> hypotheses;
  ViolationReport violation;
  ConclusionReport conclusion;
  bool reproduced = false;
};
AuditReport run_audit(int v_grid = 401, int lambda_grid = 401);

}  // namespace sqc
