#pragma once
// Folded graphs: weighted digraphs whose adjacency matrices are the divisor
// and the component blocks of a basic decomposition.

#include <string>
#include <vector>

#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/graph.hpp"

namespace eqd {

struct FoldedGraph {
  std::size_t m = 0;
  // U then psi^m(T_0) for m = 0; psi^m(T_0) = T_m otherwise.
  std::vector<Vertex> vertices;
  // Fixed vertices of psi. Listed for every m so drawings can show them, but
  // only the m = 0 graph has them as vertices.
  std::vector<Vertex> fixed;
  std::vector<Edge> edges;

  // Dense weighted adjacency in `vertices` order.
  ComplexMatrix weighted_adjacency() const;
};

// nu_m(psi^m(i), psi^m(j)) = sum_l w^(lm) w(i, psi^l(j)) for j in T_0 and
// w(i, j) for j in U. Weights below 1e-12 in modulus give no edge.
FoldedGraph fold(const WeightedGraph& g, const Permutation& psi, const SemiTransversalPlan& plan, std::size_t m);
std::vector<FoldedGraph> fold_family(const WeightedGraph& g, const Permutation& psi,
                                     const SemiTransversalPlan& plan);

// Edge label text: "a+bi", or just "a" when the imaginary part is below
// 1e-12; parts within 1e-9 of an integer print as that integer.
std::string weight_label(Complex w);

// DOT digraph named G_<m>. Fixed vertices get shape=circle, the others
// shape=ellipse, style=filled.
std::string export_dot(const FoldedGraph& f);

}  // namespace eqd
