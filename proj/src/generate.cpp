#include "eqdecomp/generate.hpp"

#include <algorithm>
#include <numeric>

#include "eqdecomp/error.hpp"
#include "eqdecomp/graph.hpp"

namespace eqd {
namespace {

Complex draw(std::mt19937_64& rng, const GenOptions& opt) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (opt.density < 1.0 && unit(rng) >= opt.density) return 0.0;
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  switch (opt.kind) {
    case ValueKind::nonnegative: return unit(rng);
    case ValueKind::real: return sym(rng);
    case ValueKind::complex: {
      const double re = sym(rng);
      return {re, sym(rng)};
    }
    case ValueKind::integer: return static_cast<double>(std::uniform_int_distribution<int>(0, 4)(rng));
  }
  return 0.0;
}

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, const GenOptions& opt) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = draw(rng, opt);
  return m;
}

Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vertex> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_images(img);
}

// M'(pi a, pi b) = M(a, b), phi' = pi phi pi^-1.
PlantedInstance relabel(const PlantedInstance& in, const Permutation& pi) {
  const std::size_t n = in.matrix.rows();
  PlantedInstance out{ComplexMatrix(n, n), compose(pi, compose(in.automorphism, pi.inverse()))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.matrix(pi.at(a), pi.at(b)) = in.matrix(a, b);
  return out;
}

}  // namespace

std::string_view kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::nonnegative: return "nonnegative";
    case ValueKind::real: return "real";
    case ValueKind::complex: return "complex";
    case ValueKind::integer: return "integer";
  }
  return "nonnegative";
}

std::optional<ValueKind> parse_value_kind(std::string_view s) {
  for (auto k : {ValueKind::nonnegative, ValueKind::real, ValueKind::complex, ValueKind::integer})
    if (kind_name(k) == s) return k;
  return std::nullopt;
}

PlantedInstance planted_basic(std::mt19937_64& rng, std::size_t N, std::size_t r, std::size_t k,
                              const GenOptions& opt) {
  if (k < 2 || r < 1) throw ValidationError("planted instance needs k >= 2 and r >= 1");
  const ComplexMatrix F = random_matrix(rng, N, N, opt);
  const ComplexMatrix H = random_matrix(rng, N, r, opt);
  const ComplexMatrix L = random_matrix(rng, r, N, opt);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t m = 0; m < k; ++m) blocks.push_back(random_matrix(rng, r, r, opt));
  auto bc = build_block_circulant(F, H, L, blocks);
  PlantedInstance inst{std::move(bc.matrix), std::move(bc.automorphism)};
  if (!opt.shuffle) return inst;
  return relabel(inst, random_permutation(rng, N + k * r));
}

ComplexMatrix planted_from_permutation(std::mt19937_64& rng, const Permutation& phi, const GenOptions& opt) {
  const std::size_t n = phi.size();
  ComplexMatrix m(n, n);
  std::vector<char> set(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (set[i * n + j]) continue;
      const Complex v = draw(rng, opt);
      for (std::size_t a = i, b = j; !set[a * n + b]; a = phi.at(a), b = phi.at(b)) {
        set[a * n + b] = 1;
        m(a, b) = v;
      }
    }
  }
  return m;
}

Permutation random_two_prime_permutation(std::mt19937_64& rng, std::uint64_t p, std::uint64_t q,
                                         std::size_t max_n) {
  const std::size_t pq = p * q;
  if (pq + std::min(p, q) > max_n) {
    throw ValidationError("no permutation of order " + std::to_string(pq) + " with mixed cycle lengths fits in " +
                          std::to_string(max_n) + " points");
  }
  std::uniform_int_distribution<int> small(0, 2);
  for (;;) {
    const std::size_t n_pq = 1 + static_cast<std::size_t>(small(rng) == 2);
    const std::size_t n_p = static_cast<std::size_t>(small(rng));
    const std::size_t n_q = static_cast<std::size_t>(small(rng));
    const std::size_t n_fix = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 4)(rng));
    if (n_p + n_q == 0) continue;
    const std::size_t n = n_pq * pq + n_p * p + n_q * q + n_fix;
    if (n > max_n) continue;

    std::vector<Vertex> labels(n);
    std::iota(labels.begin(), labels.end(), 1);
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<std::vector<Vertex>> cycles;
    std::size_t pos = 0;
    auto take = [&](std::size_t count, std::size_t len) {
      for (std::size_t c = 0; c < count; ++c) {
        cycles.emplace_back(labels.begin() + static_cast<std::ptrdiff_t>(pos),
                            labels.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
      }
    };
    take(n_pq, pq);
    take(n_p, p);
    take(n_q, q);
    return Permutation::from_cycles(n, cycles);
  }
}

PlantedInstance planted_two_prime(std::mt19937_64& rng, std::uint64_t p, std::uint64_t q, std::size_t max_n,
                                  const GenOptions& opt) {
  Permutation phi = random_two_prime_permutation(rng, p, q, max_n);
  ComplexMatrix m = planted_from_permutation(rng, phi, opt);
  return {std::move(m), std::move(phi)};
}

}  // namespace eqd
