#pragma once

#include <cstdint>
#include <vector>

#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd {

// Vertex sets for one basic decomposition: the fixed vertices U and the
// aligned copies T_0..T_{k-1}, where T_l[j] = psi^l(T_0[j]).
struct SemiTransversalPlan {
  std::vector<Vertex> U;
  std::vector<std::vector<Vertex>> T;
  // U, T_0, ..., T_{k-1} concatenated.
  std::vector<Vertex> ordering;

  std::size_t k() const { return T.size(); }
  std::size_t N() const { return U.size(); }
  std::size_t r() const { return T.empty() ? 0 : T.front().size(); }
  std::size_t n() const { return ordering.size(); }

  // The basic permutation the plan encodes: fixes U, sends T_l[j] to
  // T_{l+1 mod k}[j].
  Permutation psi() const;
  // relabel(v) = 1-based position of v in the ordering.
  Permutation relabel() const;
};

// Plain mode: the smallest label of every nontrivial psi-orbit.
SemiTransversalPlan choose_semi_transversal(const Permutation& psi);
// Mode for sequential decompositions, where psi = phi^(|phi|/k): from each
// phi-orbit not fixed by psi with smallest label a, take a, phi^k(a), ...,
// phi^((q-1)k)(a), q = |orbit| / k. This makes T_0 closed under phi^k on the
// non-fixed orbits, so phi^k survives into the next stage.
SemiTransversalPlan choose_semi_transversal(const Permutation& psi, const Permutation& phi);

// Throws ValidationError unless the plan partitions 1..n into U and k >= 2
// equal, nonempty sets aligned by psi.
void validate_plan(const SemiTransversalPlan& plan, std::size_t n);

// exp(2 pi i e / k), exact for k in {1, 2, 4} and whenever e is a multiple
// of k.
Complex root_of_unity(std::size_t k, std::uint64_t e);

// B_j = sum_m w^(jm) M[T_0, T_m] for j = 0..k-1. Checks that M is compatible
// with the plan's permutation.
std::vector<ComplexMatrix> component_blocks(const ComplexMatrix& m, const SemiTransversalPlan& plan);

// [[F, kH], [L, B_0]] with F = M[U, U], H = M[U, T_0], L = M[T_0, U]; just
// B_0 when U is empty.
ComplexMatrix divisor_matrix(const ComplexMatrix& m, const SemiTransversalPlan& plan);

// S = I_N (+) R with block (i, j) of R equal to w^(ij) I_r.
ComplexMatrix build_similarity(std::size_t N, std::size_t r, std::size_t k);
// S^-1 = I_N (+) conj(R) / k.
ComplexMatrix build_similarity_inverse(std::size_t N, std::size_t r, std::size_t k);

struct BasicDecomposition {
  std::size_t k = 0;
  std::size_t N = 0;
  std::size_t r = 0;
  ComplexMatrix divisor;
  std::vector<ComplexMatrix> blocks;  // B_1..B_{k-1}
  ComplexMatrix S;
  SemiTransversalPlan plan;
  Permutation relabel;
  // max |S^-1 M~ S - (divisor (+) B_1 (+) ...)| found by the self-check.
  double residual = 0.0;

  // divisor (+) B_1 (+) ... (+) B_{k-1}, in ordering coordinates.
  ComplexMatrix block_diagonal() const;
};

// Throws ValidationError if psi is not basic, is not an automorphism of M or
// does not match the plan, and InvariantError if the similarity self-check
// exceeds 1e-10 |M|_max.
BasicDecomposition decompose_basic(const ComplexMatrix& m, const Permutation& psi,
                                   const SemiTransversalPlan& plan);
BasicDecomposition decompose_basic(const ComplexMatrix& m, const Permutation& psi);

// phi^p as a permutation of labels. Throws ValidationError unless it maps each
// of U, T_0, ..., T_{k-1} onto itself.
Permutation induced_automorphism(const Permutation& phi, std::uint64_t p, const SemiTransversalPlan& plan);

// Same permutation in ordering coordinates: position a goes to the position of
// sigma(ordering[a]).
Permutation to_positions(const Permutation& sigma, std::span<const Vertex> ordering);

struct Stage {
  std::uint64_t prime = 0;
  Permutation phi;  // automorphism entering the stage
  Permutation psi;  // phi^(l_{i+1}), basic of orbit size prime
  BasicDecomposition decomposition;
  // Block diagonal result, label-indexed: vertex v at position v - 1.
  ComplexMatrix matrix;
};

struct FinalBlock {
  std::vector<Vertex> labels;
  ComplexMatrix matrix;
};

struct SequentialDecomposition {
  std::vector<Stage> stages;
  // Diagonal blocks of the last stage matrix. The first is the divisor.
  std::vector<FinalBlock> final_blocks;

  const ComplexMatrix& divisor() const { return final_blocks.front().matrix; }
  const std::vector<Vertex>& divisor_labels() const { return final_blocks.front().labels; }
};

// One basic stage per prime of |phi|. A basic phi gives a single stage with
// prime = its orbit size. Throws ValidationError for non-separable or identity
// phi and InvariantError if an intermediate check fails.
SequentialDecomposition decompose_separable(const ComplexMatrix& m, const Permutation& phi,
                                            PrimeOrder order = PrimeOrder::largest_first);

// Divisor of an equitable partition: D(i, j) = sum over t in V_j of M(s, t),
// the same for every s in V_i. Throws ValidationError naming (i, j, s) when
// the partition is not equitable (tolerance 1e-10 max(1, |M|_max)).
ComplexMatrix equitable_divisor(const ComplexMatrix& m, const std::vector<std::vector<Vertex>>& partition);

}  // namespace eqd
