#pragma once
// Eigenvalue oracle and spectrum utilities. These are used to check
// decompositions and to supply eigenbases of the small blocks; the
// decomposition itself never needs them.

#include <span>
#include <vector>

#include "eqdecomp/matrix.hpp"

namespace eqd {

// Eigenvalues with multiplicity, sorted lexicographically by (real, imag).
using SpectrumMultiset = std::vector<Complex>;

void sort_canonical(SpectrumMultiset& s);

// All eigenvalues of a square matrix (dense Schur solve).
SpectrumMultiset eigenvalues(const ComplexMatrix& m);

struct Eigenpair {
  Complex value;
  CVector vector;  // unit 2-norm
};

struct EigenpairResult {
  std::vector<Eigenpair> pairs;
  // Set when fewer than n independent eigenvectors exist. Jordan chains are
  // not synthesised.
  bool defective = false;
};

// Plain eigenvectors. Repeated eigenvalues get an orthonormal basis of the
// numerical null space of (M - lambda I).
EigenpairResult eigenpairs(const ComplexMatrix& m);

// Default absolute tolerance for spectrum comparisons: 1e-8 for matrices with
// entries of modulus <= 10, scaled up with the infinity norm otherwise.
double default_spectrum_tolerance(const ComplexMatrix& m);

// True iff a perfect matching pairs every element of `a` with an element of
// `b` at distance <= tol. Length mismatch gives false.
bool multiset_equal(std::span<const Complex> a, std::span<const Complex> b, double tol);

// Concatenates spectra and sorts canonically.
SpectrumMultiset spectrum_union(std::span<const SpectrumMultiset> parts);

double spectral_radius(const ComplexMatrix& m);

struct Irreducibility {
  bool nonnegative = false;
  bool irreducible = false;
};

// nonnegative: all entries real and >= 0. irreducible: the digraph on the
// nonzero entries is strongly connected.
Irreducibility is_irreducible_nonnegative(const ComplexMatrix& m);

// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

// Matrix whose columns are the given vectors.
ComplexMatrix column_matrix(std::span<const CVector> columns);

}  // namespace eqd
