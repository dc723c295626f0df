#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqc/expr.hpp"
#include "sqc/geometry.hpp"

namespace sqc {

/// Axis-aligned box domain with finite bounds, lower[i] < upper[i].
struct DomainBox {
  int dimension = 0;
  Vec lower;
  Vec upper;

  static DomainBox cube(int dimension, double lo, double hi);

  bool contains(const Vec& p) const;
  void validate() const;
  /// Pulls a point that drifted out by floating-point roundoff back to
  /// the nearest face. Intended for points that are on the box up to one
  /// ulp, e.g. convex combinations of in-box points.
  Vec clamp(const Vec& p) const;
};

enum class TruthFlag { StronglyQuasiconvex, Quasiconvex, NotQuasiconvex };

/// Catalog metadata. Checkers never read it; acceptance tests do.
struct GroundTruth {
  std::optional<double> known_modulus;
  std::optional<Vec> known_minimizer;
  std::set<TruthFlag> flags;
};

using Evaluator = std::function<double(const Vec&)>;
using GradientEvaluator = std::function<Vec(const Vec&)>;
using SmoothPredicate = std::function<bool(const Vec&)>;

/// An evaluable real-valued function on a box. Evaluators are pure and
/// stateless; a FunctionSpec may be shared freely across threads.
struct FunctionSpec {
  std::string id;
  int dimension = 0;
  Evaluator body;
  GradientEvaluator gradient;  // empty when no analytic gradient exists
  DomainBox domain;
  std::optional<GroundTruth> ground_truth;
  /// Where the analytic gradient is valid; defaults to everywhere.
  /// Entries with kinks (abs_1d) exclude a neighborhood of the kink.
  SmoothPredicate smooth_at;

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool is_smooth_at(const Vec& p) const { return !smooth_at || smooth_at(p); }
};

/// h(p) with domain and dimension checks. Deterministic: identical input
/// bits give identical output bits.
double evaluate(const FunctionSpec& f, const Vec& p);

/// Gradient at p; throws NoGradient when the function carries none.
Vec evaluate_gradient(const FunctionSpec& f, const Vec& p);

/// One-dimensional restriction g(s) = h(x + s(y-x)), s in [0, 1].
/// g(0) and g(1) evaluate h at x and y through the identical path, so
/// they reproduce h(x) and h(y) exactly.
struct SegmentRestriction {
  FunctionSpec base;
  Vec x;
  Vec y;

  Vec point_at(double s) const;
  double operator()(double s) const;
  double length() const { return dist(y, x); }

  /// The restriction viewed as a 1-D FunctionSpec on [0, 1].
  FunctionSpec as_function(const std::string& id = "segment") const;
};

SegmentRestriction restrict_to_segment(const FunctionSpec& f, const Vec& x, const Vec& y);

/// Built-in instances with ground truth:
///   example1_g  -9 + (t-1)^2 (t-3)^2 on [0,4], not quasiconvex
///   sq_norm     |x|^2 on [-1,1]^n, modulus 2, minimizer 0
///   linear_1d   x on [0,1], modulus 2
///   abs_1d      |x| on [-1,1], modulus 1
///   cubic_1d    x^3 on [-1,1], quasiconvex only
std::vector<FunctionSpec> catalog();

/// Catalog lookup; entries that generalize to any dimension (sq_norm)
/// honor `dimension`, the rest require dimension 1 or 0 (= native).
FunctionSpec catalog_entry(const std::string& id, int dimension = 0);

/// Builds a FunctionSpec from a parsed expression and box bounds.
FunctionSpec from_expression(const std::string& id, const std::string& expr_src, int dimension,
                             const DomainBox& domain);

}  // namespace sqc
