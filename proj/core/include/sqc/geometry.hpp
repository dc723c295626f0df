#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sqc {

/// Dense real vector. The toolkit works in finite-dimensional Euclidean
/// space throughout; all norms below are the 2-norm.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

/// Lexicographic order on vectors; used for deterministic tie-breaking.
inline int lex_compare(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace sqc
