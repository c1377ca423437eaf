#pragma once
// Reference computations used only by the tests. Each one avoids the library
// code path it is checked against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "eqdecomp/gershgorin.hpp"
#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace oracle {

using eqd::Complex;
using eqd::ComplexMatrix;
using eqd::Vertex;

// Exact determinant of an integer matrix by fraction-free elimination.
inline __int128 bareiss_det(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Smallest e >= 1 with phi^e = id, by repeated composition.
inline std::uint64_t brute_order(const eqd::Permutation& phi) {
  const std::size_t n = phi.size();
  std::vector<Vertex> cur(n);
  std::iota(cur.begin(), cur.end(), 1);
  for (std::uint64_t e = 1;; ++e) {
    for (auto& v : cur) v = phi(v);
    bool id = true;
    for (std::size_t i = 0; i < n && id; ++i) id = cur[i] == static_cast<Vertex>(i + 1);
    if (id) return e;
  }
}

inline bool squarefree_trial(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

inline std::uint64_t radical_trial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d) continue;
    r *= d;
    while (n % d == 0) n /= d;
  }
  return r;
}

// B_j straight from the definition: sum over m of exp(2 pi i jm/k) M[T_0, T_m].
inline ComplexMatrix naive_block(const ComplexMatrix& m, const std::vector<std::vector<Vertex>>& T, std::size_t j) {
  const std::size_t k = T.size(), r = T[0].size();
  ComplexMatrix b(r, r);
  for (std::size_t t = 0; t < k; ++t) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * t) / static_cast<double>(k));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < r; ++c) b(a, c) += w * m(T[0][a] - 1, T[t][c] - 1);
  }
  return b;
}

// Quotient matrix of a partition from row sums of the first member of each cell.
inline ComplexMatrix naive_quotient(const ComplexMatrix& m, const std::vector<std::vector<Vertex>>& cells) {
  ComplexMatrix d(cells.size(), cells.size());
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = 0; b < cells.size(); ++b)
      for (Vertex t : cells[b]) d(a, b) += m(cells[a][0] - 1, t - 1);
  return d;
}

// Area of a union of disks from the exposed boundary arcs (Green's theorem).
inline double union_area_exact(const std::vector<eqd::Disk>& input) {
  std::vector<eqd::Disk> d;
  for (const auto& x : input)
    if (x.radius > 0) d.push_back(x);
  // Drop disks inside another (keeping one copy of duplicates).
  std::vector<eqd::Disk> keep;
  for (std::size_t i = 0; i < d.size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < d.size() && !inside; ++j) {
      if (i == j) continue;
      const double dist = std::abs(d[i].center - d[j].center);
      if (dist + d[i].radius <= d[j].radius) {
        const bool same = dist == 0 && d[i].radius == d[j].radius;
        inside = !same || j < i;
      }
    }
    if (!inside) keep.push_back(d[i]);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double area = 0.0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto& c = keep[i];
    std::vector<double> cuts{0.0, two_pi};
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (i == j) continue;
      const Complex delta = keep[j].center - c.center;
      const double dist = std::abs(delta);
      if (dist >= c.radius + keep[j].radius || dist <= std::abs(c.radius - keep[j].radius)) continue;
      const double base = std::arg(delta);
      const double half = std::acos((c.radius * c.radius + dist * dist - keep[j].radius * keep[j].radius) /
                                    (2.0 * c.radius * dist));
      for (double a : {base - half, base + half}) {
        a = std::fmod(a, two_pi);
        if (a < 0) a += two_pi;
        cuts.push_back(a);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double t0 = cuts[s], t1 = cuts[s + 1];
      if (t1 - t0 <= 0) continue;
      const double mid = 0.5 * (t0 + t1);
      const Complex p = c.center + std::polar(c.radius, mid);
      bool covered = false;
      for (std::size_t j = 0; j < keep.size() && !covered; ++j)
        if (j != i && std::abs(p - keep[j].center) < keep[j].radius) covered = true;
      if (covered) continue;
      const double r = c.radius, cx = c.center.real(), cy = c.center.imag();
      area += 0.5 * (r * r * (t1 - t0) + cx * r * (std::sin(t1) - std::sin(t0)) - cy * r * (std::cos(t1) - std::cos(t0)));
    }
  }
  return area;
}

}  // namespace oracle
