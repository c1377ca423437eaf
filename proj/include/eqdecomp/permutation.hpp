#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqdecomp/matrix.hpp"

namespace eqd {

// Bijection on the labels 1..n. Stored 0-based; every public entry point
// speaks 1-based labels.
class Permutation {
 public:
  Permutation() = default;
  // Identity on n points.
  explicit Permutation(std::size_t n);

  // images[v-1] = phi(v). Throws ValidationError unless a bijection of 1..n.
  static Permutation from_images(std::span<const Vertex> images);
  // Unlisted labels are fixed. Cycles must be disjoint.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Vertex>>& cycles);

  std::size_t size() const { return map_.size(); }
  Vertex operator()(Vertex v) const;
  // 0-based view, for index arithmetic.
  std::size_t at(std::size_t i) const { return map_[i]; }

  std::vector<Vertex> images() const;
  Permutation inverse() const;
  bool is_identity() const;

  // Nontrivial cycles, each starting at its smallest label, sorted by that
  // label.
  std::vector<std::vector<Vertex>> cycles() const;
  // Cycle notation, "()" for the identity.
  std::string to_string() const;

  // lcm of the cycle lengths. Throws ValidationError if it exceeds 2^64 - 1.
  std::uint64_t order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

// (a * b)(v) = a(b(v)).
Permutation compose(const Permutation& a, const Permutation& b);

// Parses cycle notation such as "(2,5,8)(3,6,9,4,7,10)" or "(1 2)(3 4)".
Permutation parse_cycles(std::string_view text, std::size_t n);

Permutation power(const Permutation& phi, std::uint64_t e);

// Orbits sorted by smallest member; each orbit lists v, phi(v), phi^2(v), ...
// from its smallest member v.
using OrbitPartition = std::vector<std::vector<Vertex>>;
OrbitPartition orbits(const Permutation& phi);

enum class PrimeOrder { largest_first, ascending };

enum class AutoKind { identity, uniform, basic, general };

struct AutoClass {
  AutoKind kind = AutoKind::identity;
  std::size_t k = 1;  // nontrivial orbit size when uniform or basic
  std::size_t N = 0;  // fixed points
  std::uint64_t order = 1;
  bool separable = false;  // order squarefree
  std::vector<std::uint64_t> primes;  // distinct primes of the order, when separable

  bool is_basic() const { return kind == AutoKind::basic || kind == AutoKind::uniform; }
};

AutoClass classify(const Permutation& phi, PrimeOrder order = PrimeOrder::largest_first);
std::string_view kind_name(AutoKind k);

// Prime factorisation by trial division, ascending primes with exponents.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

struct SeparablePower {
  Permutation psi;
  std::uint64_t exponent = 1;
};

// psi = phi^l with l = prod p^(e-1) over the factorisation of |phi|, so |psi|
// is the radical of |phi|. Throws ValidationError on the identity.
SeparablePower separable_power(const Permutation& phi);

}  // namespace eqd
