#include "sqc/sampling.hpp"

#include <cstddef>

#include "sqc/errors.hpp"
#include "sqc/rng.hpp"

namespace sqc {

void SampleSpec::validate() const {
  if (n_random < 0) throw UsageError("n_random must be nonnegative");
  if (grid_per_axis < 0) throw UsageError("grid_per_axis must be nonnegative");
  if (t_grid < 1) throw UsageError("t_grid must be positive");
  if (!(sep_min > 0.0)) throw UsageError("sep_min must be positive");
}

std::vector<double> t_values(const SampleSpec& spec) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(spec.t_grid) + 1);
  for (int i = 1; i <= spec.t_grid; ++i)
    ts.push_back(static_cast<double>(i) / static_cast<double>(spec.t_grid + 1));
  ts.push_back(1.0);
  return ts;
}

std::vector<Vec> grid_points(const DomainBox& box, const SampleSpec& spec) {
  spec.validate();
  const int per_axis = spec.resolved_grid(box.dimension);
  const std::size_t dim = static_cast<std::size_t>(box.dimension);

  std::size_t total = 1;
  for (int d = 0; d < box.dimension; ++d) total *= static_cast<std::size_t>(per_axis);

  constexpr std::size_t kMaxPoints = 4096;
  std::size_t stride = (total + kMaxPoints - 1) / kMaxPoints;
  if (stride < 1) stride = 1;

  std::vector<Vec> pts;
  pts.reserve(total / stride + 1);
  std::vector<int> idx(dim, 0);
  for (std::size_t flat = 0; flat < total; flat += stride) {
    std::size_t rem = flat;
    for (std::size_t d = 0; d < dim; ++d) {
      idx[d] = static_cast<int>(rem % static_cast<std::size_t>(per_axis));
      rem /= static_cast<std::size_t>(per_axis);
    }
    Vec p(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      double frac = per_axis == 1 ? 0.0
                                  : static_cast<double>(idx[d]) / static_cast<double>(per_axis - 1);
      p[d] = box.lower[d] + frac * (box.upper[d] - box.lower[d]);
      if (idx[d] == per_axis - 1) p[d] = box.upper[d];  // endpoint exact
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<QueryPair> query_pairs(const DomainBox& box, const SampleSpec& spec) {
  auto grid = grid_points(box, spec);
  std::vector<QueryPair> pairs;
  pairs.reserve(grid.size() * grid.size() + static_cast<std::size_t>(spec.n_random));
  for (const auto& x : grid)
    for (const auto& y : grid) pairs.push_back(QueryPair{x, y});

  Rng rng(spec.seed);
  const std::size_t dim = static_cast<std::size_t>(box.dimension);
  for (int i = 0; i < spec.n_random; ++i) {
    QueryPair q;
    q.x.resize(dim);
    q.y.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) q.x[d] = rng.uniform(box.lower[d], box.upper[d]);
    for (std::size_t d = 0; d < dim; ++d) q.y[d] = rng.uniform(box.lower[d], box.upper[d]);
    pairs.push_back(std::move(q));
  }
  return pairs;
}

std::vector<Vec> query_points(const DomainBox& box, const SampleSpec& spec) {
  auto pts = grid_points(box, spec);
  Rng rng(spec.seed);
  const std::size_t dim = static_cast<std::size_t>(box.dimension);
  for (int i = 0; i < spec.n_random; ++i) {
    Vec p(dim);
    for (std::size_t d = 0; d < dim; ++d) p[d] = rng.uniform(box.lower[d], box.upper[d]);
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace sqc
