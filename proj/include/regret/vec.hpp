// Dense vector helpers shared across the library.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace regret {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

inline Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

inline Vec uniform_point(int n) {
  return Vec(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
}

// y += alpha * x
inline void add_scaled(Vec& y, double alpha, const Vec& x) {
  assert(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline Vec sum(const Vec& a, const Vec& b) {
  Vec r = a;
  add_scaled(r, 1.0, b);
  return r;
}

inline Vec diff(const Vec& a, const Vec& b) {
  Vec r = a;
  add_scaled(r, -1.0, b);
  return r;
}

inline Vec scaled(const Vec& a, double alpha) {
  Vec r = a;
  for (double& v : r) v *= alpha;
  return r;
}

inline Vec slice(const Vec& a, int offset, int len) {
  return Vec(a.begin() + offset, a.begin() + offset + len);
}

// Index of the smallest entry; ties broken by the lowest index.
inline int argmin(const Vec& a) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(a.size()); ++i)
    if (a[i] < a[best]) best = i;
  return best;
}

}  // namespace regret
