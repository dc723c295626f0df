#pragma once

#include <cstdint>
#include <vector>

#include "sqc/function_model.hpp"
#include "sqc/geometry.hpp"

namespace sqc {

/// Deterministic sampling plan. Identical specs generate identical query
/// sets, and the random pairs are drawn sequentially, so a plan with a
/// larger n_random extends a smaller one.
struct SampleSpec {
  std::uint64_t seed = 42;
  int n_random = 2000;
  /// 0 selects the dimension-dependent default: 33 in 1-D, 17 otherwise.
  int grid_per_axis = 0;
  /// t values i/(m+1) for i = 1..m, plus t = 1.
  int t_grid = 31;
  double sep_min = 1e-8;

  int resolved_grid(int dimension) const {
    if (grid_per_axis > 0) return grid_per_axis;
    return dimension == 1 ? 33 : 17;
  }

  void validate() const;
};

struct QueryPair {
  Vec x;
  Vec y;
};

/// Interpolation parameters: i/(m+1) ascending, then exactly 1.0.
std::vector<double> t_values(const SampleSpec& spec);

/// Axis-aligned lattice over the box, capped at 4096 points by
/// deterministic striding so high-dimensional boxes stay at desk scale.
std::vector<Vec> grid_points(const DomainBox& box, const SampleSpec& spec);

/// All ordered grid pairs (lexicographic, diagonal included; degenerate
/// pairs are the callers' concern), followed by n_random seeded pairs.
std::vector<QueryPair> query_pairs(const DomainBox& box, const SampleSpec& spec);

/// Grid points followed by n_random seeded points.
std::vector<Vec> query_points(const DomainBox& box, const SampleSpec& spec);

}  // namespace sqc
