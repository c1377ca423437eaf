#pragma once
// Lifting eigenvectors of the divisor and component blocks back to the full
// matrix, and spectral radius through the divisor.

#include <vector>

#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd {

enum class VectorSource { divisor, block };

struct LiftedVector {
  CVector vector;
  Complex eigenvalue = 0.0;
  int generalized_rank = 1;
  VectorSource source = VectorSource::divisor;
  // Block number m (0 for the divisor) and index of the input vector in its
  // basis.
  std::size_t block = 0;
  std::size_t index = 0;
};

// 0_N (+) u (+) w^m u (+) ... (+) w^(m(k-1)) u, with w = exp(2 pi i / k).
LiftedVector lift_block_vector(std::span<const Complex> u, std::size_t m, std::size_t N, std::size_t k);
// w (+) v (+) v (+) ... (+) v with k copies of v.
LiftedVector lift_divisor_vector(std::span<const Complex> w, std::span<const Complex> v, std::size_t k);

// S y for S = I_N (+) R, without forming S.
CVector apply_similarity(std::size_t N, std::size_t r, std::size_t k, std::span<const Complex> y);

// A (generalised) eigenvector of a block. For a Jordan chain, rank t means
// (B - lambda I)^t u = 0 but (B - lambda I)^(t-1) u != 0.
struct BasisVector {
  Complex eigenvalue = 0.0;
  CVector vector;
  int generalized_rank = 1;
};

struct ReconstructOptions {
  // Report vectors in the input labelling rather than the U, T_0, ... order.
  bool original_labels = true;
  // Scale every output vector to unit 2-norm.
  bool normalize = false;
};

// divisor_basis: N + r vectors of the divisor. block_bases[m - 1]: r vectors
// of B_m. Returns n vectors and throws ValidationError on wrong counts or if
// the result is numerically rank deficient (smallest singular value <= 1e-8
// times the largest).
std::vector<LiftedVector> reconstruct_eigenbasis(const BasicDecomposition& d,
                                                 const std::vector<BasisVector>& divisor_basis,
                                                 const std::vector<std::vector<BasisVector>>& block_bases,
                                                 const ReconstructOptions& opt = {});

// Sequential version: bases[b] holds the vectors of final_blocks[b]. Lifts
// through the stages from last to first. Output is always in input labels.
std::vector<LiftedVector> reconstruct_eigenbasis(const SequentialDecomposition& d,
                                                 const std::vector<std::vector<BasisVector>>& bases,
                                                 const ReconstructOptions& opt = {});

// Plain eigenbases of every final block from the eigen-oracle, then lifted.
// Throws ValidationError if some block is defective.
std::vector<LiftedVector> computed_eigenbasis(const SequentialDecomposition& d);

// Numerical rank test used by reconstruct_eigenbasis.
bool full_rank(const std::vector<LiftedVector>& vectors);

struct DivisorRadius {
  double rho = 0.0;
  // rho matches an eigenvalue of the divisor within 1e-8; only set when M is
  // irreducible, which is what makes the claim hold.
  bool is_eigenvalue_of_divisor = false;
  bool irreducible = false;
  ComplexMatrix divisor;
  std::vector<Vertex> divisor_labels;
};

// Spectral radius of a nonnegative M computed from its divisor over phi (basic
// or separable). Throws ValidationError on negative or complex entries or if
// phi is not an automorphism.
DivisorRadius divisor_spectral_radius(const ComplexMatrix& m, const Permutation& phi,
                                      PrimeOrder order = PrimeOrder::largest_first);

struct RadiusChain {
  double divisor = 0.0;
  double b0 = 0.0;
  std::vector<double> blocks;  // rho(B_1)..rho(B_{k-1})
};

RadiusChain radius_chain(const BasicDecomposition& d);

}  // namespace eqd
