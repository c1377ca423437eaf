#include <random>

#include "doctest.h"
#include "eqdecomp/decomposition.hpp"
#include "eqdecomp/error.hpp"
#include "eqdecomp/generate.hpp"
#include "eqdecomp/graph.hpp"
#include "eqdecomp/spectrum.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eqd;

namespace {

SpectrumMultiset block_spectra(const SequentialDecomposition& d) {
  std::vector<SpectrumMultiset> parts;
  for (const auto& b : d.final_blocks) parts.push_back(eigenvalues(b.matrix));
  return spectrum_union(parts);
}

SpectrumMultiset block_spectra(const BasicDecomposition& d) {
  std::vector<SpectrumMultiset> parts{eigenvalues(d.divisor)};
  for (const auto& b : d.blocks) parts.push_back(eigenvalues(b));
  return spectrum_union(parts);
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("semi-transversal from a separable automorphism") {
    const auto phi = parse_cycles(fx::kPhi, 10);
    const auto plan = choose_semi_transversal(parse_cycles(fx::kPsi0, 10), phi);
    CHECK(plan.U == std::vector<Vertex>{1});
    REQUIRE(plan.k() == 3);
    CHECK(plan.T[0] == std::vector<Vertex>{2, 3, 4});
    CHECK(plan.T[1] == std::vector<Vertex>{8, 9, 10});
    CHECK(plan.T[2] == std::vector<Vertex>{5, 7, 6});
    CHECK(plan.ordering == std::vector<Vertex>{1, 2, 3, 4, 8, 9, 10, 5, 7, 6});
  }

  TEST_CASE("plain semi-transversals take orbit minima") {
    const auto u = choose_semi_transversal(parse_cycles("(1,2)(3,4)", 4));
    CHECK(u.U.empty());
    CHECK(u.T[0] == std::vector<Vertex>{1, 3});
    CHECK(u.T[1] == std::vector<Vertex>{2, 4});
    const auto p1 = choose_semi_transversal(parse_cycles(fx::kPhi1, 10));
    CHECK(p1.T[0] == std::vector<Vertex>{3, 6, 9});
    CHECK(p1.T[1] == std::vector<Vertex>{4, 7, 10});
    CHECK(p1.U == std::vector<Vertex>{1, 2, 5, 8});
  }

  TEST_CASE("semi-transversal errors") {
    CHECK_THROWS_AS(choose_semi_transversal(parse_cycles(fx::kPhi, 10)), ValidationError);
    CHECK_THROWS_AS(choose_semi_transversal(Permutation(4)), ValidationError);
    // psi is basic but not the matching power of phi; kPhi1 is phi^3 and passes.
    CHECK_THROWS_AS(choose_semi_transversal(parse_cycles("(3,4)(6,7)", 10), parse_cycles(fx::kPhi, 10)), ValidationError);
    CHECK_NOTHROW(choose_semi_transversal(parse_cycles(fx::kPhi1, 10), parse_cycles(fx::kPhi, 10)));
  }

  TEST_CASE("roots of unity") {
    CHECK(root_of_unity(2, 1) == Complex(-1, 0));
    CHECK(root_of_unity(4, 1) == Complex(0, 1));
    CHECK(root_of_unity(4, 3) == Complex(0, -1));
    CHECK(root_of_unity(3, 3) == Complex(1, 0));
    CHECK(std::abs(root_of_unity(3, 1) - std::polar(1.0, 2 * std::numbers::pi / 3)) < 1e-15);
  }

  TEST_CASE("round 1 of the example") {
    const auto a = fx::example_adjacency();
    const auto phi = parse_cycles(fx::kPhi, 10);
    const auto psi = parse_cycles(fx::kPsi0, 10);
    const auto plan = choose_semi_transversal(psi, phi);
    const auto b = component_blocks(a, plan);
    REQUIRE(b.size() == 3);
    CHECK(max_abs_diff(b[1], fx::round1_block()) <= 1e-10);
    CHECK(max_abs_diff(b[2], fx::round1_block()) <= 1e-10);
    CHECK(max_abs_diff(divisor_matrix(a, plan), fx::round1_divisor()) <= 1e-10);
    const auto d = decompose_basic(a, psi, plan);
    CHECK(max_abs_diff(d.divisor, fx::round1_divisor()) <= 1e-10);
    CHECK(d.residual <= 1e-10 * a.max_abs());
    CHECK(d.k == 3);
    CHECK(d.N == 1);
    CHECK(d.r == 3);
    CHECK(multiset_equal(eigenvalues(d.divisor), fx::round1_divisor_spectrum(), 1e-9));
  }

  TEST_CASE("blocks agree with the definition") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
      const std::size_t k = 2 + rng() % 6;
      const auto inst = planted_basic(rng, rng() % 3, 1 + rng() % 4, k, {ValueKind::complex});
      const auto plan = choose_semi_transversal(inst.automorphism);
      const auto b = component_blocks(inst.matrix, plan);
      REQUIRE(b.size() == k);
      Complex tr_sum = 0;
      for (std::size_t j = 0; j < k; ++j) {
        CHECK(max_abs_diff(b[j], oracle::naive_block(inst.matrix, plan.T, j)) <= 1e-12);
        tr_sum += b[j].trace();
      }
      // sum_j tr(B_j) = k tr(M_0)
      CHECK(std::abs(tr_sum - static_cast<double>(k) * oracle::naive_block(inst.matrix, {plan.T[0]}, 0).trace()) <= 1e-11);
    }
  }

  TEST_CASE("k = 2 blocks are sum and difference") {
    std::mt19937_64 rng(9);
    const auto inst = planted_basic(rng, 1, 3, 2, {ValueKind::real});
    const auto plan = choose_semi_transversal(inst.automorphism);
    const auto b = component_blocks(inst.matrix, plan);
    const auto m0 = oracle::naive_block(inst.matrix, {plan.T[0]}, 0);
    // A single set gives M[T_0, T_0]; M[T_0, T_1] is read directly.
    ComplexMatrix cross(plan.r(), plan.r());
    for (std::size_t i = 0; i < plan.r(); ++i)
      for (std::size_t j = 0; j < plan.r(); ++j) cross(i, j) = inst.matrix(plan.T[0][i] - 1, plan.T[1][j] - 1);
    CHECK(max_abs_diff(b[0], m0 + cross) <= 1e-14);
    CHECK(max_abs_diff(b[1], m0 - cross) <= 1e-14);
  }

  TEST_CASE("divisor of K2") {
    ComplexMatrix k2{{0, 1}, {1, 0}};
    const auto plan = choose_semi_transversal(parse_cycles("(1,2)", 2));
    CHECK(divisor_matrix(k2, plan) == ComplexMatrix{{1}});
    CHECK(component_blocks(k2, plan)[1] == ComplexMatrix{{-1}});
  }

  TEST_CASE("blocks require compatibility") {
    auto a = fx::example_adjacency();
    a(0, 1) = 2.0;
    const auto plan = choose_semi_transversal(parse_cycles(fx::kPsi0, 10));
    CHECK_THROWS_AS(component_blocks(a, plan), ValidationError);
    CHECK_THROWS_AS(decompose_basic(a, parse_cycles(fx::kPsi0, 10)), ValidationError);
  }

  TEST_CASE("similarity transform") {
    CHECK(max_abs_diff(build_similarity(0, 1, 2), ComplexMatrix{{1, 1}, {1, -1}}) <= 1e-15);
    const auto s = build_similarity(1, 3, 3);
    REQUIRE(s.rows() == 10);
    CHECK(s(0, 0) == Complex(1));
    for (std::size_t j = 1; j < 10; ++j) CHECK(s(0, j) == Complex(0));
    for (std::size_t N : {0, 1, 2})
      for (std::size_t r : {1, 2, 3})
        for (std::size_t k : {2, 3, 4, 5, 7}) {
          const auto S = build_similarity(N, r, k);
          const auto Si = build_similarity_inverse(N, r, k);
          CHECK(max_abs_diff(S * Si, ComplexMatrix::identity(N + k * r)) <= 1e-12);
          const auto g = S.adjoint() * S;
          for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
              if (i != j) CHECK(std::abs(g(i, j)) <= 1e-12);
        }
    // R conj(R) = k I on the circulant part.
    ComplexMatrix R(9, 9);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) R(i, j) = s(i + 1, j + 1);
    CHECK(max_abs_diff(R * R.conjugate(), 3.0 * ComplexMatrix::identity(9)) <= 1e-12);
  }

  TEST_CASE("diagonal matrices give diagonal slices") {
    ComplexMatrix m = ComplexMatrix::zero(5);
    const double diag[] = {7, 2, 2, 3, 3};
    for (std::size_t i = 0; i < 5; ++i) m(i, i) = diag[i];
    const auto d = decompose_basic(m, parse_cycles("(2,3)(4,5)", 5));
    CHECK(d.divisor == ComplexMatrix{{7, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0] == ComplexMatrix{{2, 0}, {0, 3}});
  }

  TEST_CASE("random block circulant preserves the spectrum") {
    std::mt19937_64 rng(12);
    std::vector<ComplexMatrix> ms;
    for (int b = 0; b < 5; ++b) ms.push_back(fx::random_matrix(rng, 3, 3));
    const auto bc = build_block_circulant(fx::random_matrix(rng, 2, 2), fx::random_matrix(rng, 2, 3),
                                          fx::random_matrix(rng, 3, 2), ms);
    const auto d = decompose_basic(bc.matrix, bc.automorphism);
    CHECK(d.residual <= 1e-10 * bc.matrix.max_abs());
    CHECK(multiset_equal(eigenvalues(bc.matrix), block_spectra(d), 1e-8));
    const auto m_tilde = reorder(bc.matrix, d.plan.ordering);
    const auto si = build_similarity_inverse(d.N, d.r, d.k);
    CHECK(max_abs_diff(si * m_tilde * d.S, d.block_diagonal()) <= 1e-10 * bc.matrix.max_abs());
  }

  TEST_CASE("real matrices give real divisors and conjugate block pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
      const std::size_t k = 2 + rng() % 6;
      const auto inst = planted_basic(rng, rng() % 3, 1 + rng() % 4, k, {ValueKind::real});
      const auto d = decompose_basic(inst.matrix, inst.automorphism);
      CHECK(d.divisor.is_real(1e-13));
      for (std::size_t j = 1; j < k; ++j) CHECK(max_abs_diff(d.blocks[j - 1], d.blocks[k - j - 1].conjugate()) <= 1e-12);
    }
  }

  TEST_CASE("induced automorphism") {
    const auto phi = parse_cycles(fx::kPhi, 10);
    const auto plan = choose_semi_transversal(parse_cycles(fx::kPsi0, 10), phi);
    const auto next = induced_automorphism(phi, 3, plan);
    CHECK(next == parse_cycles(fx::kPhi1, 10));
    const auto tri = parse_cycles("(1,2,3)", 3);
    CHECK(induced_automorphism(tri, 3, choose_semi_transversal(tri, tri)).is_identity());
  }

  TEST_CASE("separable decomposition of the example") {
    const auto a = fx::example_adjacency();
    const auto d = decompose_separable(a, parse_cycles(fx::kPhi, 10));
    REQUIRE(d.stages.size() == 2);
    CHECK(d.stages[0].prime == 3);
    CHECK(d.stages[1].prime == 2);
    CHECK(d.stages[0].psi == parse_cycles(fx::kPsi0, 10));
    CHECK(d.stages[1].phi == parse_cycles(fx::kPhi1, 10));
    CHECK(d.stages[1].decomposition.plan.T[0] == std::vector<Vertex>{3, 6, 9});
    CHECK(max_abs_diff(d.stages[1].decomposition.divisor, fx::round2_divisor()) <= 1e-10);
    CHECK(max_abs_diff(d.divisor(), fx::final_divisor()) <= 1e-10);
    CHECK(multiset_equal(eigenvalues(d.divisor()), fx::final_divisor_spectrum(), 1e-9));
    CHECK(multiset_equal(eigenvalues(a), block_spectra(d), 1e-8));
    std::size_t total = 0;
    for (const auto& b : d.final_blocks) total += b.labels.size();
    CHECK(total == 10);
  }

  TEST_CASE("ascending prime order") {
    const auto a = fx::example_adjacency();
    const auto d = decompose_separable(a, parse_cycles(fx::kPhi, 10), PrimeOrder::ascending);
    REQUIRE(d.stages.size() == 2);
    CHECK(d.stages[0].prime == 2);
    CHECK(multiset_equal(eigenvalues(a), block_spectra(d), 1e-8));
    CHECK(multiset_equal(eigenvalues(d.divisor()), fx::final_divisor_spectrum(), 1e-9));
  }

  TEST_CASE("a basic automorphism gives one stage") {
    const auto a = fx::example_adjacency();
    const auto psi = parse_cycles(fx::kPsi0, 10);
    const auto d = decompose_separable(a, psi);
    REQUIRE(d.stages.size() == 1);
    const auto b = decompose_basic(a, psi);
    CHECK(d.stages[0].decomposition.divisor == b.divisor);
    CHECK(d.divisor() == b.divisor);
    CHECK(d.final_blocks.size() == 3);
  }

  TEST_CASE("non-basic non-separable and identity automorphisms are rejected") {
    ComplexMatrix m = ComplexMatrix::zero(4);
    // A 4-cycle is basic: one stage, no primes needed.
    CHECK(decompose_separable(m, parse_cycles("(1,2,3,4)", 4)).stages.size() == 1);
    CHECK_THROWS_AS(decompose_separable(m, Permutation(4)), ValidationError);
    ComplexMatrix m6 = ComplexMatrix::zero(6);
    CHECK_THROWS_AS(decompose_separable(m6, parse_cycles("(1,2,3,4)(5,6)", 6)), ValidationError);
  }

  TEST_CASE("two-prime instances") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 40; ++t) {
      const std::uint64_t p = t % 2 ? 3 : 5;
      const auto inst = planted_two_prime(rng, p, 2, 60, {t % 3 == 0 ? ValueKind::complex : ValueKind::real});
      for (auto order : {PrimeOrder::largest_first, PrimeOrder::ascending}) {
        const auto d = decompose_separable(inst.matrix, inst.automorphism, order);
        CHECK(d.stages.size() == classify(inst.automorphism).primes.size());
        for (std::size_t s = 1; s < d.stages.size(); ++s) CHECK(is_automorphism(d.stages[s - 1].matrix, d.stages[s].phi));
        CHECK(multiset_equal(eigenvalues(inst.matrix), block_spectra(d), 1e-8));
        const auto eq = equitable_divisor(inst.matrix, orbits(inst.automorphism));
        // Compare on the divisor's labels mapped to orbit cells.
        const auto orb = orbits(inst.automorphism);
        std::vector<std::size_t> cell(inst.matrix.rows());
        for (std::size_t c = 0; c < orb.size(); ++c)
          for (Vertex v : orb[c]) cell[v - 1] = c;
        const auto& labels = d.divisor_labels();
        REQUIRE(labels.size() == orb.size());
        double err = 0;
        for (std::size_t i = 0; i < labels.size(); ++i)
          for (std::size_t j = 0; j < labels.size(); ++j)
            err = std::max(err, std::abs(d.divisor()(i, j) - eq(cell[labels[i] - 1], cell[labels[j] - 1])));
        CHECK(err <= 1e-10);
      }
    }
  }

  TEST_CASE("equitable divisor") {
    const auto a = fx::example_adjacency();
    const auto d = equitable_divisor(a, orbits(parse_cycles(fx::kPsi0, 10)));
    CHECK(max_abs_diff(d, fx::round1_divisor()) <= 1e-10);
    CHECK(max_abs_diff(d, oracle::naive_quotient(a, orbits(parse_cycles(fx::kPsi0, 10)))) == 0.0);
    std::vector<std::vector<Vertex>> singles;
    for (Vertex v = 1; v <= 10; ++v) singles.push_back({v});
    CHECK(equitable_divisor(a, singles) == a);
    CHECK_THROWS_AS(equitable_divisor(ComplexMatrix{{0, 1}, {0, 0}}, {{1, 2}}), ValidationError);
    CHECK_THROWS_AS(equitable_divisor(a, {{1, 2}}), ValidationError);
  }
}
