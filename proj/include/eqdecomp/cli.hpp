#pragma once
// Command layer of the eqdecomp tool. Exit codes: 0 success, 1 invalid input,
// 2 internal invariant violation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eqdecomp/gershgorin.hpp"
#include "eqdecomp/permutation.hpp"

namespace eqd::cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> auto_cycles;
  std::optional<std::string> auto_file;
  PrimeOrder prime_order = PrimeOrder::largest_first;
  std::optional<double> tol;
  RegionMode mode = RegionMode::rows;
  bool power = false;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  std::string format = "json";
  // Matrix built from graph inputs.
  std::string matrix_kind = "weighted_adjacency";
  // Write near-integers as integers.
  bool snap = true;

  // Edge-list inputs.
  std::optional<std::size_t> n;
  bool directed = false;

  // fold: single member instead of the whole family.
  std::optional<std::size_t> fold_index;

  // gen.
  std::size_t gen_N = 1;
  std::size_t gen_r = 2;
  std::size_t gen_k = 3;
  std::string gen_kind = "nonnegative";
  std::vector<std::uint64_t> gen_primes;  // two primes: non-basic order p*q instance
  std::size_t gen_max_n = 60;
  double gen_density = 1.0;
};

extern const std::vector<std::string> kCommands;

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs. EQDECOMP_TOL supplies the tolerance when --tol
// is absent.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqd::cli
