#pragma once
// Random matrices with a planted automorphism, for property tests and the
// `gen` command.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "eqdecomp/matrix.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd {

enum class ValueKind {
  nonnegative,  // uniform [0, 1)
  real,         // uniform [-1, 1)
  complex,      // both parts uniform [-1, 1)
  integer,      // uniform {0, ..., 4}
};

std::string_view kind_name(ValueKind k);
std::optional<ValueKind> parse_value_kind(std::string_view s);

struct PlantedInstance {
  ComplexMatrix matrix;
  Permutation automorphism;
};

struct GenOptions {
  ValueKind kind = ValueKind::nonnegative;
  // Probability that an independent entry is nonzero.
  double density = 1.0;
  // Apply a random relabelling so the symmetry is not in canonical position.
  bool shuffle = true;
};

// Block-circulant instance: N fixed vertices, k copies of r vertices, and a
// basic automorphism of orbit size k.
PlantedInstance planted_basic(std::mt19937_64& rng, std::size_t N, std::size_t r, std::size_t k,
                              const GenOptions& opt = {});

// Matrix constant on the orbits of phi acting on vertex pairs, so phi is an
// automorphism by construction.
ComplexMatrix planted_from_permutation(std::mt19937_64& rng, const Permutation& phi,
                                       const GenOptions& opt = {});

// Non-basic permutation of order p*q: cycles of lengths drawn from
// {1, p, q, pq} with at least one pq-cycle and one p- or q-cycle. Throws
// ValidationError if no such permutation fits in max_n points.
Permutation random_two_prime_permutation(std::mt19937_64& rng, std::uint64_t p, std::uint64_t q,
                                         std::size_t max_n);

PlantedInstance planted_two_prime(std::mt19937_64& rng, std::uint64_t p, std::uint64_t q,
                                  std::size_t max_n, const GenOptions& opt = {});

}  // namespace eqd
