#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd {

struct Edge {
  Vertex i = 0;
  Vertex j = 0;
  Complex w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graphs store each edge once; matrices symmetrise it.
struct WeightedGraph {
  std::size_t n = 0;
  bool directed = false;
  std::vector<Edge> edges;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

// Checks labels are in range, weights finite and there are no duplicate
// (i, j) pairs (for undirected graphs (i, j) and (j, i) are the same pair).
void validate(const WeightedGraph& g);

// Undirected, no loops, unit weights.
bool is_simple(const WeightedGraph& g);

enum class MatrixKind {
  adjacency,
  laplacian,
  signless_laplacian,
  normalized_laplacian,
  distance,
  weighted_adjacency,
};

std::string_view kind_name(MatrixKind k);
std::optional<MatrixKind> parse_matrix_kind(std::string_view s);

// Laplacian kinds and distance need a simple graph; distance also needs it
// connected. Adjacency is the 0-1 pattern of the edges.
ComplexMatrix build_matrix(const WeightedGraph& g, MatrixKind kind);

struct AutomorphismViolation {
  Vertex i = 0;  // entry (i, j) differs from entry (phi(i), phi(j))
  Vertex j = 0;
  Complex value;
  Complex image_value;
};

// First (row-major) entry with M(phi(i), phi(j)) != M(i, j), if any. Entries
// compare exactly up to 1e-12 relative slack.
std::optional<AutomorphismViolation> find_automorphism_violation(const ComplexMatrix& m,
                                                                 const Permutation& phi);
bool is_automorphism(const ComplexMatrix& m, const Permutation& phi);

struct BlockCirculant {
  ComplexMatrix matrix;
  // Fixes 1..N and maps the j-th vertex of copy l to the j-th vertex of copy
  // l+1 (mod k).
  Permutation automorphism;
};

// [[F, H, ..., H], [L, circ(M_0..M_{k-1})], ...]: block row l of the circulant
// part holds M_{(m - l) mod k} in block column m.
BlockCirculant build_block_circulant(const ComplexMatrix& F, const ComplexMatrix& H,
                                     const ComplexMatrix& L, std::span<const ComplexMatrix> blocks);

}  // namespace eqd
