#pragma once
// The 10-vertex example graph with a separable automorphism of order 6, and
// the matrices its decompositions are known to produce.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "eqdecomp/graph.hpp"
#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace fx {

using eqd::Complex;
using eqd::ComplexMatrix;

inline constexpr const char* kPhi = "(2,5,8)(3,6,9,4,7,10)";
inline constexpr const char* kPsi0 = "(2,8,5)(3,9,7)(4,10,6)";
inline constexpr const char* kPhi1 = "(3,4)(6,7)(9,10)";

inline ComplexMatrix real_matrix(const std::vector<std::vector<double>>& rows) {
  ComplexMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline eqd::WeightedGraph example_graph() {
  eqd::WeightedGraph g;
  g.n = 10;
  const int e[][2] = {{1, 2}, {1, 5}, {1, 8}, {2, 3}, {2, 4}, {2, 5},
                      {2, 8}, {5, 6}, {5, 7}, {5, 8}, {8, 9}, {8, 10}};
  for (const auto& p : e) g.edges.push_back({p[0], p[1], 1.0});
  return g;
}

// Transcribed from the printed figure, independently of example_graph().
inline ComplexMatrix example_adjacency() {
  return real_matrix({{0, 1, 0, 0, 1, 0, 0, 1, 0, 0},
                      {1, 0, 1, 1, 1, 0, 0, 1, 0, 0},
                      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
                      {1, 1, 0, 0, 0, 1, 1, 1, 0, 0},
                      {0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
                      {1, 1, 0, 0, 1, 0, 0, 0, 1, 1},
                      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0}});
}

inline ComplexMatrix round1_divisor() {
  return real_matrix({{0, 3, 0, 0}, {1, 2, 1, 1}, {0, 1, 0, 0}, {0, 1, 0, 0}});
}

inline ComplexMatrix round1_block() { return real_matrix({{-1, 1, 1}, {1, 0, 0}, {1, 0, 0}}); }

inline ComplexMatrix round2_divisor() {
  return real_matrix({{0, 3, 0, 0, 0, 0, 0},
                      {1, 2, 0, 0, 2, 0, 0},
                      {0, 0, -1, 0, 0, 2, 0},
                      {0, 0, 0, -1, 0, 0, 2},
                      {0, 1, 0, 0, 0, 0, 0},
                      {0, 0, 1, 0, 0, 0, 0},
                      {0, 0, 0, 1, 0, 0, 0}});
}

inline ComplexMatrix final_divisor() { return real_matrix({{0, 3, 0}, {1, 2, 2}, {0, 1, 0}}); }

inline std::vector<Complex> example_spectrum() {
  const double s6 = std::sqrt(6.0);
  return {1 + s6, 1 - s6, -2, -2, 1, 1, 0, 0, 0, 0};
}

inline std::vector<Complex> round1_divisor_spectrum() {
  const double s6 = std::sqrt(6.0);
  return {1 + s6, 1 - s6, 0, 0};
}

inline std::vector<Complex> final_divisor_spectrum() {
  const double s6 = std::sqrt(6.0);
  return {1 + s6, 1 - s6, 0};
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   bool complex_entries = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = Complex(u(rng), complex_entries ? u(rng) : 0.0);
  return m;
}

inline eqd::Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<eqd::Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return eqd::Permutation::from_images(img);
}

// m with rows and columns relabeled: out(p(i), p(j)) = m(i, j).
inline ComplexMatrix relabeled(const ComplexMatrix& m, const eqd::Permutation& p) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(p.at(i), p.at(j)) = m(i, j);
  return out;
}

}  // namespace fx
