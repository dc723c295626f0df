#include "sqc/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sqc/errors.hpp"

namespace sqc {

DomainBox DomainBox::cube(int dimension, double lo, double hi) {
  DomainBox box;
  box.dimension = dimension;
  box.lower.assign(static_cast<std::size_t>(dimension), lo);
  box.upper.assign(static_cast<std::size_t>(dimension), hi);
  box.validate();
  return box;
}

void DomainBox::validate() const {
  if (dimension < 1) throw UsageError("box dimension must be positive");
  if (lower.size() != static_cast<std::size_t>(dimension) ||
      upper.size() != static_cast<std::size_t>(dimension))
    throw DimensionMismatch("box bounds do not match dimension");
  for (int i = 0; i < dimension; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]))
      throw UsageError("box bounds must be finite");
    if (!(lower[k] < upper[k])) throw UsageError("box requires lower < upper per axis");
  }
}

bool DomainBox::contains(const Vec& p) const {
  if (p.size() != static_cast<std::size_t>(dimension)) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] >= lower[i] && p[i] <= upper[i])) return false;
  return true;
}

Vec DomainBox::clamp(const Vec& p) const {
  Vec q = p;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::clamp(q[i], lower[i], upper[i]);
  return q;
}

double evaluate(const FunctionSpec& f, const Vec& p) {
  if (p.size() != static_cast<std::size_t>(f.dimension))
    throw DimensionMismatch("point dimension " + std::to_string(p.size()) +
                            " != function dimension " + std::to_string(f.dimension));
  if (!f.domain.contains(p)) throw OutOfDomain("point outside domain of " + f.id);
  double v = f.body(p);
  if (!std::isfinite(v)) throw NonFiniteValue(f.id + " returned a non-finite value");
  return v;
}

Vec evaluate_gradient(const FunctionSpec& f, const Vec& p) {
  if (!f.has_gradient()) throw NoGradient(f.id + " carries no gradient");
  if (p.size() != static_cast<std::size_t>(f.dimension))
    throw DimensionMismatch("gradient point dimension mismatch");
  if (!f.domain.contains(p)) throw OutOfDomain("point outside domain of " + f.id);
  return f.gradient(p);
}

Vec SegmentRestriction::point_at(double s) const {
  if (s == 0.0) return x;
  if (s == 1.0) return y;
  Vec p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + s * (y[i] - x[i]);
  return base.domain.clamp(p);
}

double SegmentRestriction::operator()(double s) const { return evaluate(base, point_at(s)); }

FunctionSpec SegmentRestriction::as_function(const std::string& id) const {
  FunctionSpec g;
  g.id = id;
  g.dimension = 1;
  g.domain = DomainBox::cube(1, 0.0, 1.0);
  auto self = *this;
  g.body = [self](const Vec& p) { return self(p[0]); };
  return g;
}

SegmentRestriction restrict_to_segment(const FunctionSpec& f, const Vec& x, const Vec& y) {
  if (!f.domain.contains(x) || !f.domain.contains(y))
    throw OutOfDomain("segment endpoint outside domain of " + f.id);
  return SegmentRestriction{f, x, y};
}

namespace {

FunctionSpec make_example1_g() {
  FunctionSpec f;
  f.id = "example1_g";
  f.dimension = 1;
  f.domain = DomainBox::cube(1, 0.0, 4.0);
  f.body = [](const Vec& p) {
    double t = p[0];
    double a = (t - 1.0) * (t - 1.0);
    double b = (t - 3.0) * (t - 3.0);
    return -9.0 + a * b;
  };
  f.gradient = [](const Vec& p) {
    double t = p[0];
    return Vec{2.0 * (t - 1.0) * (t - 3.0) * (2.0 * t - 4.0)};
  };
  GroundTruth gt;
  gt.flags = {TruthFlag::NotQuasiconvex};
  f.ground_truth = gt;
  return f;
}

FunctionSpec make_sq_norm(int dimension) {
  FunctionSpec f;
  f.id = "sq_norm";
  f.dimension = dimension;
  f.domain = DomainBox::cube(dimension, -1.0, 1.0);
  f.body = [](const Vec& p) { return norm_sq(p); };
  f.gradient = [](const Vec& p) {
    Vec g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = 2.0 * p[i];
    return g;
  };
  GroundTruth gt;
  gt.known_modulus = 2.0;
  gt.known_minimizer = Vec(static_cast<std::size_t>(dimension), 0.0);
  gt.flags = {TruthFlag::StronglyQuasiconvex, TruthFlag::Quasiconvex};
  f.ground_truth = gt;
  return f;
}

FunctionSpec make_linear_1d() {
  FunctionSpec f;
  f.id = "linear_1d";
  f.dimension = 1;
  f.domain = DomainBox::cube(1, 0.0, 1.0);
  f.body = [](const Vec& p) { return p[0]; };
  f.gradient = [](const Vec&) { return Vec{1.0}; };
  GroundTruth gt;
  gt.known_modulus = 2.0;
  gt.known_minimizer = Vec{0.0};
  gt.flags = {TruthFlag::StronglyQuasiconvex, TruthFlag::Quasiconvex};
  f.ground_truth = gt;
  return f;
}

FunctionSpec make_abs_1d() {
  FunctionSpec f;
  f.id = "abs_1d";
  f.dimension = 1;
  f.domain = DomainBox::cube(1, -1.0, 1.0);
  f.body = [](const Vec& p) { return std::fabs(p[0]); };
  // Valid away from the kink; smooth_at guards finite-difference checks.
  f.gradient = [](const Vec& p) { return Vec{p[0] >= 0.0 ? 1.0 : -1.0}; };
  f.smooth_at = [](const Vec& p) { return std::fabs(p[0]) > 1e-3; };
  GroundTruth gt;
  gt.known_modulus = 1.0;
  gt.known_minimizer = Vec{0.0};
  gt.flags = {TruthFlag::StronglyQuasiconvex, TruthFlag::Quasiconvex};
  f.ground_truth = gt;
  return f;
}

FunctionSpec make_cubic_1d() {
  FunctionSpec f;
  f.id = "cubic_1d";
  f.dimension = 1;
  f.domain = DomainBox::cube(1, -1.0, 1.0);
  f.body = [](const Vec& p) { return p[0] * p[0] * p[0]; };
  f.gradient = [](const Vec& p) { return Vec{3.0 * p[0] * p[0]}; };
  GroundTruth gt;
  gt.flags = {TruthFlag::Quasiconvex};
  f.ground_truth = gt;
  return f;
}

}  // namespace

std::vector<FunctionSpec> catalog() {
  return {make_example1_g(), make_sq_norm(1), make_linear_1d(), make_abs_1d(), make_cubic_1d()};
}

FunctionSpec catalog_entry(const std::string& id, int dimension) {
  if (id == "sq_norm") return make_sq_norm(dimension == 0 ? 1 : dimension);
  for (auto& f : catalog()) {
    if (f.id == id) {
      if (dimension != 0 && dimension != f.dimension)
        throw UsageError(id + " is only available in dimension " + std::to_string(f.dimension));
      return f;
    }
  }
  throw UsageError("no catalog entry named '" + id + "'");
}

FunctionSpec from_expression(const std::string& id, const std::string& expr_src, int dimension,
                             const DomainBox& domain) {
  domain.validate();
  if (domain.dimension != dimension) throw DimensionMismatch("box dimension != expression dimension");
  auto ast = std::make_shared<expr::ExprAst>(expr::parse(expr_src, dimension));
  FunctionSpec f;
  f.id = id;
  f.dimension = dimension;
  f.domain = domain;
  f.body = [ast](const Vec& p) { return expr::eval_ast(*ast, p); };
  return f;
}

}  // namespace sqc
